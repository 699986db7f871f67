#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "polymer/rng.hpp"
#include "polymer/special.hpp"

using namespace polymer;

namespace {

// Adaptive-free Simpson quadrature on [a,b] with a fixed fine grid; plenty
// for the smooth integrands cross-checked here.
template <typename F>
double simpson(const F& f, double a, double b, int n = 20000) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

} // namespace

TEST_CASE("log_gamma reproduces classical values and the recurrence") {
    CHECK(std::exp(stat::log_gamma(0.5)) ==
          doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
    CHECK(std::exp(stat::log_gamma(6.0)) == doctest::Approx(120.0).epsilon(1e-12));
    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        const double x = std::exp(rng.uniform(std::log(0.1), std::log(30.0)));
        CHECK(stat::log_gamma(x + 1.0) - stat::log_gamma(x) ==
              doctest::Approx(std::log(x)).epsilon(1e-12));
    }
}

TEST_CASE("regularized incomplete gamma against closed forms and quadrature") {
    // P(1, x) = 1 - e^{-x}
    for (const double x : {0.1, 0.7, 2.0, 9.0})
        CHECK(stat::reg_inc_gamma(1.0, x) ==
              doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-12));
    // quadrature cross-check at non-integer shape
    const double s = 2.3;
    for (const double x : {0.5, 1.5, 3.0, 7.0}) {
        const double q = simpson(
            [s](double t) {
                return t > 0 ? std::exp((s - 1.0) * std::log(t) - t -
                                        stat::log_gamma(s))
                             : 0.0;
            },
            1e-12, x);
        CHECK(stat::reg_inc_gamma(s, x) == doctest::Approx(q).epsilon(1e-9));
    }
    CHECK(stat::reg_inc_gamma(0.4, 50.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("regularized incomplete beta against closed forms and quadrature") {
    for (const double x : {0.1, 0.35, 0.8}) {
        CHECK(stat::reg_inc_beta(1.0, 2.5, x) ==
              doctest::Approx(1.0 - std::pow(1.0 - x, 2.5)).epsilon(1e-12));
        CHECK(stat::reg_inc_beta(3.0, 1.0, x) ==
              doctest::Approx(std::pow(x, 3.0)).epsilon(1e-12));
    }
    const double a = 2.5, b = 1.7;
    for (const double x : {0.2, 0.5, 0.85}) {
        const double q = simpson(
            [a, b](double t) {
                return std::exp((a - 1.0) * std::log(t) +
                                (b - 1.0) * std::log1p(-t) -
                                stat::log_beta(a, b));
            },
            1e-9, x);
        CHECK(stat::reg_inc_beta(a, b, x) == doctest::Approx(q).epsilon(1e-9));
    }
    // symmetry I_x(a,b) = 1 − I_{1−x}(b,a)
    CHECK(stat::reg_inc_beta(a, b, 0.3) ==
          doctest::Approx(1.0 - stat::reg_inc_beta(b, a, 0.7)).epsilon(1e-12));
}

TEST_CASE("chi-square quantile round-trips through the CDF") {
    // CDF of chi2(df) at q is P(df/2, q/2)
    for (const int df : {1, 3, 5, 12, 40}) {
        const double q = stat::chi2_quantile(0.99, df);
        CHECK(stat::reg_inc_gamma(df / 2.0, q / 2.0) ==
              doctest::Approx(0.99).epsilon(1e-8));
    }
    // classical table value at 1%, df = 1
    CHECK(stat::chi2_quantile(0.99, 1) == doctest::Approx(6.6349).epsilon(1e-4));
}

TEST_CASE("KS critical values scale as 1.63/sqrt(n)") {
    CHECK(stat::ks_one_sample_critical(10000) ==
          doctest::Approx(0.0163).epsilon(1e-6));
    CHECK(stat::ks_two_sample_critical(10000, 10000) ==
          doctest::Approx(1.63 * std::sqrt(2.0 / 10000.0)).epsilon(1e-12));
}
