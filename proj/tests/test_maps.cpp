#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "polymer/maps.hpp"
#include "polymer/rng.hpp"

using namespace polymer;
using maps::Model;
using maps::P2;
using maps::T3;

namespace {

double rel(double got, double want) {
    return std::fabs(got - want) / std::max(1.0, std::fabs(want));
}

double rel2(const P2& got, const P2& want) {
    return std::max(rel(got.x, want.x), rel(got.y, want.y));
}

} // namespace

TEST_CASE("hand-computed map values") {
    CHECK(rel2(maps::r_ab(0, 1, {1, 1, 1}), {2, 2}) < 1e-15);
    CHECK(rel2(maps::rzero_01({1, 2, 3}), {0, 1}) < 1e-15);
    CHECK(rel2(maps::rtzero_1m1({1, 2, -1}), {0, -3}) < 1e-15);
    CHECK(rel2(maps::f_bep_bep({1, 1}), {2, 3}) < 1e-15);
    CHECK(rel2(maps::f_e_al({3, 1}), {1, 2}) < 1e-15);
    CHECK(rel2(maps::f_al_al({1, 2}), {-2, -3}) < 1e-15);
    CHECK(rel2(maps::f_gam_bep({2, 1}), {3, 2}) < 1e-15);
}

TEST_CASE("fbar projection reconstructs the recursion") {
    const maps::Map2 f = [](const P2& p) { return maps::f_ab(0, 1, p); };
    const maps::Map2 fi = [](const P2& p) { return maps::f_ab_inv(0, 1, p); };
    CHECK(rel2(maps::fbar_23(f, fi, {1, 1, 1}), {2, 2}) < 1e-15);
    Rng rng(2);
    for (int i = 0; i < 2000; ++i) {
        const T3 t = maps::sample_r_domain(Model::R01, rng);
        CHECK(rel2(maps::fbar_23(f, fi, t), maps::r_ab(0, 1, t)) < 1e-12);
        // fbar is an involution
        const T3 once = maps::fbar(f, fi, t);
        const T3 twice = maps::fbar(f, fi, once);
        CHECK(rel(twice.a, t.a) < 1e-12);
        CHECK(rel(twice.b, t.b) < 1e-12);
        CHECK(rel(twice.c, t.c) < 1e-12);
    }
}

TEST_CASE("involutions and inverse pairs at 1e-12") {
    Rng rng(3);
    for (int i = 0; i < 2000; ++i) {
        for (const Model m : {Model::R01, Model::R10, Model::Rm11, Model::R11,
                              Model::R1m1}) {
            const double a = maps::model_alpha(m), b = maps::model_beta(m);
            const P2 p = maps::sample_f_domain(m, rng);
            CHECK(rel2(maps::f_ab_inv(a, b, maps::f_ab(a, b, p)), p) < 1e-12);
        }
        const double x = std::exp(rng.uniform(std::log(0.05), std::log(20.0)));
        const double y = std::exp(rng.uniform(std::log(0.05), std::log(20.0)));
        CHECK(rel2(maps::f_bep_bep(maps::f_bep_bep({x, y})), {x, y}) < 1e-12);
        CHECK(rel2(maps::f_gam_bep_inv(maps::f_gam_bep({x, y})), {x, y}) <
              1e-12);
        const double s = rng.uniform(-5.0, 5.0), t = rng.uniform(-5.0, 5.0);
        CHECK(rel2(maps::f_al_al(maps::f_al_al({s, t})), {s, t}) < 1e-12);
        CHECK(rel2(maps::f_e_al_inv(maps::f_e_al({s, t})), {s, t}) < 1e-12);
        CHECK(rel2(maps::f_zero_01_inv(maps::f_zero_01({s, t})), {s, t}) <
              1e-12);
    }
}

TEST_CASE("the tilde variant matches its defining composition") {
    // R~_(1,-1) = R_(1,-1) ∘ (Q^-1 × Id × Id)
    Rng rng(4);
    for (int i = 0; i < 2000; ++i) {
        const T3 t = maps::sample_rt_1m1_domain(rng);
        const P2 got = maps::rt_1m1(t);
        const P2 want = maps::r_ab(1, -1, {1.0 / (1.0 + t.a), t.b, t.c});
        CHECK(rel2(got, want) < 1e-12);
    }
}

TEST_CASE("identity registry spot checks (full suite in acceptance)") {
    for (const char* key : {"fr-R01", "rrr", "tildereq", "p31a", "c32d",
                            "p34b", "rrr2", "ztmap1", "ptmap1", "ppp1c"}) {
        const TestReport rep = maps::run_identity(key, 2000, 7);
        INFO(key);
        CHECK(rep.pass());
    }
    // p31a sends (2,1) to (3,2) exactly like F_Gam,Be'
    CHECK(rel2(maps::f_gam_bep({2, 1}), {3, 2}) < 1e-15);
}

TEST_CASE("limit registry spot checks") {
    for (const char* key :
         {"ztl-R01", "ztl-R1m1", "ztlmapmeas-a2", "p53a", "c54b", "eqr",
          "ptmap1-lim"}) {
        const TestReport rep = maps::run_limit(key, 300, 11);
        INFO(key);
        CHECK(rep.pass());
    }
}

TEST_CASE("unknown keys are rejected") {
    CHECK_THROWS_AS(maps::run_identity("p31x", 10, 1), std::out_of_range);
    CHECK_THROWS_AS(maps::run_limit("nope", 10, 1), std::out_of_range);
}

TEST_CASE("soft recursion maps stay within the eps envelope of the hard ones") {
    Rng rng(9);
    for (int i = 0; i < 500; ++i) {
        T3 t{rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0),
             rng.uniform(-4.0, 4.0)};
        const double eps = 1e-3;
        const P2 hard = maps::rzero_01(t);
        const P2 soft = maps::soft_rzero_01(eps, t);
        CHECK(std::fabs(soft.x - hard.x) <= 2.0 * eps);
        CHECK(std::fabs(soft.y - hard.y) <= 2.0 * eps);
    }
}
