#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "polymer/distributions.hpp"
#include "polymer/maps.hpp"
#include "polymer/report.hpp"
#include "polymer/special.hpp"

namespace polymer::stat {

/// One-sample Kolmogorov–Smirnov statistic against a CDF.
double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov–Smirnov statistic.
double ks_statistic_two(std::vector<double> a, std::vector<double> b);

struct Chi2Result {
    double statistic = 0.0;
    int df = 0;
    double critical = 0.0;
    bool pass = true;
};

/// Chi-square goodness of fit of a lattice-valued sample against a discrete
/// spec; bins are merged from the tails inward until every expected count is
/// at least 5.
Chi2Result chi2_gof_discrete(const std::vector<double>& values,
                             const dist::DistributionSpec& spec,
                             double level = 0.99);

/// Chi-square independence test on (x,y) pairs using empirical quantile bins
/// (default 8 per margin; ties — atoms, lattice values — collapse bins).
Chi2Result chi2_independence(const std::vector<double>& xs,
                             const std::vector<double>& ys, int nbins = 8,
                             double level = 0.99);

/// Mixed-aware marginal check: discrete specs get a chi-square GOF; specs
/// with an atom at zero get an atom-frequency z-test (3σ) plus a KS test on
/// the continuous part; plain continuous specs get a KS test. Components are
/// appended to the report under the given prefix.
void check_marginal(TestReport& rep, const std::string& prefix,
                    const std::vector<dist::MixedSample>& sample,
                    const dist::DistributionSpec& spec);

// -- registries --------------------------------------------------------------

/// Detailed-balance suite: (X,Y) ~ μ×ν, (U,V) = F(X,Y); checks U ~ μ̃, V ~ ν̃
/// and U ⊥ V at three parameter settings.
TestReport run_db(const std::string& key, std::size_t n, std::uint64_t seed);
std::vector<std::string> db_keys();

/// Stationarity suite: (X,U,V) ~ μ̃×μ×ν, (U',V') = R(X,U,V); checks
/// U' ~ μ, V' ~ ν and U' ⊥ V' at three parameter settings.
TestReport run_stationary(const std::string& key, std::size_t n,
                          std::uint64_t seed);
std::vector<std::string> stationary_keys();

/// Distributional limit suite: pushes step-law samples through the step
/// transform and tracks the two-sample KS distance to target samples along a
/// schedule; passes when the distance decreases (up to the two-sample noise
/// floor) and ends below 3× the 1% critical value.
TestReport run_dist_limit(const std::string& key, std::size_t n,
                          std::uint64_t seed);
std::vector<std::string> dist_limit_keys();

/// Stationary triple (μ̃, μ, ν) together with the recursion map of a
/// registered stationary model, for reuse by the lattice simulator.
struct StationaryModel {
    dist::DistributionSpec mut, mu, nu;
    std::function<maps::P2(const maps::T3&)> R;
};
StationaryModel stationary_model(const std::string& key, int setting = 0);

// -- multi-seed stability ----------------------------------------------------

struct StabilityResult {
    std::string key;
    bool pass = true;
    std::size_t seeds_run = 0;
    std::vector<std::string> flagged;  ///< components failing the seed quota
    std::vector<std::string> escalated;
};

/// Runs a report generator over `seeds` seeds and applies the per-component
/// stability rule: ≤ 1 failure is stable; 2–3 failures trigger a second
/// 20-seed batch and the component is flagged only at ≥ 4 failures in 40.
StabilityResult run_stability(
    const std::string& key,
    const std::function<TestReport(std::uint64_t)>& make_report,
    std::size_t seeds = 20, std::uint64_t seed0 = 1);

} // namespace polymer::stat
