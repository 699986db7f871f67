#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "polymer/rng.hpp"
#include "polymer/transforms.hpp"

using namespace polymer;
using transforms::Chain;
using transforms::Prim;
using transforms::PrimOp;

TEST_CASE("scalar primitives invert each other") {
    Rng rng(3);
    for (int i = 0; i < 2000; ++i) {
        const double x = std::exp(rng.uniform(std::log(0.05), std::log(20.0)));
        CHECK(transforms::apply({Prim::inv}, transforms::apply({Prim::inv}, x)) ==
              doctest::Approx(x).epsilon(1e-14));
        const double u = rng.uniform(0.02, 0.98);
        CHECK(transforms::apply({Prim::qinv},
                                transforms::apply({Prim::q}, u)) ==
              doctest::Approx(u).epsilon(1e-14));
        CHECK(transforms::apply({Prim::j}, transforms::apply({Prim::j}, u)) ==
              doctest::Approx(u).epsilon(1e-14));
        CHECK(transforms::s_eps_inv(transforms::s_eps(x, 0.3), 0.3) ==
              doctest::Approx(x).epsilon(1e-12));
    }
}

TEST_CASE("zero-temperature images of the primitives") {
    Rng rng(4);
    for (int i = 0; i < 500; ++i) {
        const double x = rng.uniform(-5.0, 5.0);
        const double xp = std::fabs(x) + 0.01;
        CHECK(transforms::apply_zero({Prim::inv}, xp) == -xp);
        CHECK(transforms::apply_zero({Prim::q}, xp) == -xp);
        CHECK(transforms::apply_zero({Prim::qinv}, x) == -std::min(x, 0.0));
        CHECK(transforms::apply_zero({Prim::j}, xp) == std::min(xp, 0.0));
        CHECK(transforms::apply_zero({Prim::scale, 2.5}, x) == x);
        // chained images: (Q^-1)z ∘ Iz = max(·,0), Iz ∘ (Q^-1)z = min(·,0)
        CHECK(Chain{{Prim::inv}, {Prim::qinv}}.apply_zero(x) ==
              std::max(x, 0.0));
        CHECK(Chain{{Prim::qinv}, {Prim::inv}}.apply_zero(x) ==
              std::min(x, 0.0));
    }
}

TEST_CASE("finite-eps conjugation matches the naive evaluation when safe") {
    Rng rng(5);
    const double eps = 0.25;
    for (int i = 0; i < 2000; ++i) {
        const double x = rng.uniform(-1.5, 1.5);
        for (const PrimOp op : {PrimOp{Prim::inv}, PrimOp{Prim::qinv},
                                PrimOp{Prim::scale, 1.7}}) {
            const double direct = transforms::s_eps_inv(
                transforms::apply(op, transforms::s_eps(x, eps)), eps);
            CHECK(transforms::apply_conjugated(op, x, eps) ==
                  doctest::Approx(direct).epsilon(1e-11));
        }
    }
}

TEST_CASE("conjugated primitives converge to their zero-temperature images") {
    Rng rng(6);
    for (int i = 0; i < 500; ++i) {
        // keep clear of the kink at 0 so the eps*ln2 envelope applies
        double x = rng.uniform(-3.0, 3.0);
        if (std::fabs(x) < 0.1) x = x < 0 ? x - 0.1 : x + 0.1;
        double prev = 1e9;
        for (const double eps : {1e-1, 1e-2, 1e-3}) {
            const double err = std::fabs(
                transforms::apply_conjugated({Prim::qinv}, x, eps) -
                transforms::apply_zero({Prim::qinv}, x));
            CHECK(err <= 2.0 * eps);
            CHECK(err <= prev + 1e-12);
            prev = err;
        }
    }
}

TEST_CASE("softmin lies below min within the eps*ln2 envelope") {
    Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
        const double s = rng.uniform(-4.0, 4.0), t = rng.uniform(-4.0, 4.0);
        const double u = rng.uniform(-4.0, 4.0);
        for (const double eps : {0.5, 0.05}) {
            const double m2 = transforms::softmin_eps(eps, s, t);
            CHECK(m2 <= std::min(s, t) + 1e-14);
            CHECK(m2 >= std::min(s, t) - eps * std::log(2.0) - 1e-14);
            const double m3 = transforms::softmin_eps(eps, s, t, u);
            CHECK(m3 <= std::min({s, t, u}) + 1e-14);
            CHECK(m3 >= std::min({s, t, u}) - eps * std::log(3.0) - 1e-14);
            CHECK(transforms::softplus_eps(eps, s) >= 0.0);
        }
    }
}

TEST_CASE("huge arguments do not overflow the conjugated forms") {
    // naive S_eps would overflow at x/eps ~ 1e5
    const double eps = 1e-3;
    const double big = 120.0;
    CHECK(std::isfinite(transforms::apply_conjugated({Prim::qinv}, big, eps)));
    CHECK(std::isfinite(transforms::apply_conjugated({Prim::qinv}, -big, eps)));
    CHECK(transforms::apply_conjugated({Prim::qinv}, -big, eps) ==
          doctest::Approx(big).epsilon(1e-9));
    CHECK(std::isfinite(transforms::softmin_eps(eps, -big, big)));
}

TEST_CASE("negate has no conjugated form") {
    CHECK_THROWS(transforms::apply_conjugated({Prim::negate}, 1.0, 0.1));
}

TEST_CASE("chain composition applies left to right") {
    // I then Q^-1 at x=4: Q^-1(1/4) = 1/(1+1/4) = 0.8
    const Chain c{{Prim::inv}, {Prim::qinv}};
    CHECK(c.apply(4.0) == doctest::Approx(0.8).epsilon(1e-14));
}
