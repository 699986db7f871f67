#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "polymer/distributions.hpp"
#include "polymer/maps.hpp"
#include "polymer/report.hpp"
#include "polymer/rng.hpp"

namespace polymer::lattice {

/// Interior fill order; all three produce bit-identical fields because the
/// disorder and boundary draws happen up front in a fixed traversal.
enum class Order { rows, columns, antidiagonals };

/// A stationary lattice model: weight law μ̃ for the disorder, boundary laws
/// μ (U-edges) and ν (V-edges), the increment recursion map R, and the
/// path-weight functions (u, v) entering the partition function.
struct LatticeModel {
    std::string key;
    bool zero = false;  ///< min-plus partition function
    dist::DistributionSpec mut, mu, nu;
    std::function<maps::P2(const maps::T3&)> R;
    std::function<double(double)> u, v;
};

LatticeModel lattice_model(const std::string& key, int setting = 0);
std::vector<std::string> lattice_keys();

/// Upper-right-corner grid. All arrays are (N+1)×(M+1); X lives on the
/// interior (n,m ≥ 1), U(n,0) and V(0,m) are boundary draws, U(0,·), V(·,0)
/// and X on the axes are unused and left at zero. Z stores log Z at positive
/// temperature and Z itself at zero temperature, with Z(0,0) = 0.
struct Grid {
    std::size_t N = 0, M = 0;
    bool zero = false;
    std::vector<double> X, U, V, Z;

    std::size_t idx(std::size_t n, std::size_t m) const {
        return n * (M + 1) + m;
    }
    double x(std::size_t n, std::size_t m) const { return X[idx(n, m)]; }
    double u(std::size_t n, std::size_t m) const { return U[idx(n, m)]; }
    double v(std::size_t n, std::size_t m) const { return V[idx(n, m)]; }
    double z(std::size_t n, std::size_t m) const { return Z[idx(n, m)]; }
};

Grid simulate(const LatticeModel& model, std::size_t N, std::size_t M,
              std::uint64_t seed, Order order = Order::rows);

/// Degenerate-disorder grid: every X and every boundary increment equal to k.
Grid constant_grid(const LatticeModel& model, std::size_t N, std::size_t M,
                   double k);

struct GridResiduals {
    double recursion = 0.0;      ///< (U,V) vs R(X, U_left, V_below)
    double z_consistency = 0.0;  ///< Z increments vs the U and V fields
};
GridResiduals residuals(const Grid& g, const LatticeModel& model);

/// Zero-temperature partition function by brute force over every up-right
/// path from (0,0) to (n,m); feasible up to 8×8.
double zero_path_oracle(const Grid& g, const LatticeModel& model,
                        std::size_t n, std::size_t m);

/// CSV dump, one row per cell: n, m, X, U, V, logZ (17 significant digits).
std::string grid_csv(const Grid& g);

// -- Burke / stationarity field checks ---------------------------------------

/// Simulates one stationary grid and checks the Burke property: marginal GOF
/// and adjacent / lag-2 independence of the increments along a row, a column
/// and a staircase down-right path, all at distance ≥ 50 from the origin.
/// Key "burke-neg" is the negative control (mis-scaled boundary must fail).
TestReport run_burke(const std::string& key, std::size_t N, std::size_t M,
                     std::uint64_t seed);
std::vector<std::string> burke_keys();

/// Pools i.i.d. increment values (a fixed row of U, a fixed column of V, both
/// at distance ≥ 50) across independent grids until n values are collected,
/// then runs the marginal checks at 1%.
TestReport run_field_gof(const std::string& key, std::size_t n,
                         std::uint64_t seed);

// -- beta random walk in random environment ----------------------------------

/// Environment of up-step probabilities indexed by (time t, position p),
/// t ∈ [0,T), |p| ≤ T.
struct BetaEnv {
    std::size_t T = 0;
    std::vector<double> x;

    double at(std::size_t t, long long p) const {
        return x[t * (2 * T + 1) + static_cast<std::size_t>(p +
                                                            (long long)T)];
    }
};

BetaEnv sample_beta_env(std::size_t T, double a, double b, Rng& rng);

/// Quenched probability P(S_m ≥ m − 2n + 2) for the walk started at 0, via
/// the corner recursion.
double rwre_partition(const BetaEnv& env, std::size_t n, std::size_t m);

/// Same probability by exhaustive enumeration of all 2^m trajectories.
double rwre_oracle(const BetaEnv& env, std::size_t n, std::size_t m);

/// Recursion-vs-oracle agreement (m ≤ 12, tol 1e-12) plus the change of
/// variables onto the linear polymer recursion with u(x)=1−x, v(x)=x.
TestReport run_rwre(std::size_t n_env, std::uint64_t seed);

// -- partition-function limit experiments ------------------------------------

/// Simulates the source model along its δ/τ schedule (default schedule when
/// empty), rescales the corner statistic at (n,m)=(5,5) as prescribed, and
/// tracks the two-sample KS distance to the target stationary model over
/// `nseeds` repetitions.
TestReport run_zlimit(const std::string& key, std::size_t nseeds,
                      std::uint64_t seed,
                      const std::vector<double>& schedule = {});
std::vector<std::string> zlimit_keys();

} // namespace polymer::lattice
