#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "polymer/lattice.hpp"
#include "polymer/rng.hpp"

using namespace polymer;
using lattice::Grid;
using lattice::LatticeModel;
using lattice::Order;

TEST_CASE("degenerate disorder: constant weights give additive Z") {
    const LatticeModel model = lattice::lattice_model("t45-a-cont");
    const Grid g = lattice::constant_grid(model, 5, 5, 2.0);
    CHECK(g.z(3, 3) == 12.0);  // 6 steps of weight 2 along every path
    for (std::size_t n = 1; n <= 5; ++n)
        for (std::size_t m = 1; m <= 5; ++m) {
            CHECK(g.u(n, m) == 2.0);
            CHECK(g.v(n, m) == 2.0);
            CHECK(g.z(n, m) == 2.0 * (n + m));
        }
    const lattice::GridResiduals res = lattice::residuals(g, model);
    CHECK(res.recursion == 0.0);
    CHECK(res.z_consistency == 0.0);
}

TEST_CASE("zero-temperature Z equals exhaustive path enumeration up to 8x8") {
    for (const char* key : {"t45-b-cont", "t45-d-cont", "trem-a"}) {
        const LatticeModel model = lattice::lattice_model(key);
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const Grid g = lattice::simulate(model, 8, 8, seed);
            for (std::size_t n = 1; n <= 8; n += 2)
                for (std::size_t m = 1; m <= 8; m += 3) {
                    INFO(key << " seed " << seed << " at " << n << "," << m);
                    CHECK(std::fabs(lattice::zero_path_oracle(g, model, n, m) -
                                    g.z(n, m)) <= 1e-12);
                }
        }
    }
    // dyadic discrete weights: exact equality
    const LatticeModel disc = lattice::lattice_model("t45-d-disc");
    const Grid g = lattice::simulate(disc, 8, 8, 4);
    for (std::size_t n = 1; n <= 8; ++n)
        for (std::size_t m = 1; m <= 8; ++m)
            CHECK(lattice::zero_path_oracle(g, disc, n, m) == g.z(n, m));
}

TEST_CASE("fill order does not change a single bit") {
    for (const char* key : {"t42-a", "t45-d-cont"}) {
        const LatticeModel model = lattice::lattice_model(key);
        const Grid rows = lattice::simulate(model, 40, 40, 9, Order::rows);
        const Grid cols = lattice::simulate(model, 40, 40, 9, Order::columns);
        const Grid diag =
            lattice::simulate(model, 40, 40, 9, Order::antidiagonals);
        CHECK(rows.U == cols.U);
        CHECK(rows.V == cols.V);
        CHECK(rows.Z == cols.Z);
        CHECK(rows.U == diag.U);
        CHECK(rows.V == diag.V);
        CHECK(rows.Z == diag.Z);
    }
}

TEST_CASE("positive-temperature logZ reconstruction stays within 1e-8 at 200x200") {
    for (const char* key : {"t42-a", "t42-b", "t42-cii"}) {
        const LatticeModel model = lattice::lattice_model(key);
        const Grid g = lattice::simulate(model, 200, 200, 13);
        const lattice::GridResiduals res = lattice::residuals(g, model);
        INFO(key);
        CHECK(res.recursion <= 1e-10);
        CHECK(res.z_consistency <= 1e-8);
    }
}

TEST_CASE("beta-RWRE recursion matches the exhaustive oracle") {
    CHECK(lattice::run_rwre(5, 17).pass());
    // trivial horizon: threshold position decides the value
    Rng rng(18);
    const lattice::BetaEnv env = lattice::sample_beta_env(4, 2.0, 1.5, rng);
    CHECK(lattice::rwre_partition(env, 1, 1) == env.at(0, 0));
    CHECK(lattice::rwre_partition(env, 2, 1) == 1.0);
    CHECK(lattice::rwre_oracle(env, 1, 1) == doctest::Approx(env.at(0, 0)));
}

TEST_CASE("Burke checks pass on stationary grids and the control fails") {
    CHECK(lattice::run_burke("t42-a", 200, 200, 31).pass());
    CHECK(lattice::run_burke("t45-d-cont", 200, 200, 32).pass());
    CHECK(lattice::run_burke("t45-b-disc", 200, 200, 33).pass());
    CHECK(lattice::run_burke("burke-neg", 200, 5, 34).pass());
    CHECK_THROWS_AS(lattice::run_burke("t42-a", 60, 60, 1),
                    std::invalid_argument);
}

TEST_CASE("field marginals at distance >= 50 with 1e4 pooled values") {
    CHECK(lattice::run_field_gof("t42-a", 10000, 41).pass());
    CHECK(lattice::run_field_gof("t45-d-cont", 10000, 42).pass());
}

TEST_CASE("partition-function limits at reduced seed counts") {
    CHECK(lattice::run_zlimit("ptptrem-c", 3000, 51).pass());
    CHECK(lattice::run_zlimit("ztrem-a", 3000, 52).pass());
    CHECK_THROWS_AS(lattice::run_zlimit("ptptrem-a", 100, 1, {0.1, 0.01}),
                    std::invalid_argument);
}

TEST_CASE("grid CSV dump round-trips at 17 significant digits") {
    const LatticeModel model = lattice::lattice_model("t42-a");
    const Grid g = lattice::simulate(model, 3, 3, 7);
    const std::string csv = lattice::grid_csv(g);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "n,m,X,U,V,logZ");
    std::size_t rows = 0;
    std::string line;
    bool corner_ok = false;
    while (std::getline(in, line)) {
        ++rows;
        std::size_t n, m;
        double x, u, v, z;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        ls >> n >> m >> x >> u >> v >> z;
        if (n == 3 && m == 3) corner_ok = z == g.z(3, 3);
    }
    CHECK(rows == 16);
    CHECK(corner_ok);
}

TEST_CASE("simulation reports are deterministic given the seed") {
    const LatticeModel model = lattice::lattice_model("t45-c-disc");
    const Grid a = lattice::simulate(model, 30, 30, 99);
    const Grid b = lattice::simulate(model, 30, 30, 99);
    CHECK(a.Z == b.Z);
    CHECK(lattice::grid_csv(a) == lattice::grid_csv(b));
}
