#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "polymer/distributions.hpp"
#include "polymer/rng.hpp"
#include "polymer/special.hpp"

using namespace polymer;
using DS = dist::DistributionSpec;

namespace {

// Integrates exp(log_density) over [a,b] by Simpson's rule.
double density_mass(const DS& spec, double a, double b, int n = 40000) {
    const double h = (b - a) / n;
    const auto f = [&spec](double x) {
        const double ld = dist::log_density(spec, x);
        return std::isfinite(ld) ? std::exp(ld) : 0.0;
    };
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

double pmf_mass(const DS& spec, long long klo, long long khi) {
    double s = 0.0;
    for (long long k = klo; k <= khi; ++k) {
        const double lp = dist::log_pmf_index(spec, k);
        if (std::isfinite(lp)) s += std::exp(lp);
    }
    return s;
}

double ks_vs_cdf(const DS& spec, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> v = dist::sample_values(spec, rng, n);
    std::sort(v.begin(), v.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double F = dist::cdf(spec, v[i]);
        d = std::max({d, F - double(i) / n, double(i + 1) / n - F});
    }
    return d;
}

} // namespace

TEST_CASE("continuous densities integrate to one") {
    CHECK(density_mass(DS::gam(2.3, 1.7), 1e-9, 40.0) ==
          doctest::Approx(1.0).epsilon(1e-6));
    // shapes > 1 keep the endpoint densities finite for Simpson's rule;
    // the shape < 1 branches are exercised by the KS checks below
    CHECK(density_mass(DS::be(1.8, 2.2), 1e-9, 1.0 - 1e-9) ==
          doctest::Approx(1.0).epsilon(1e-6));
    CHECK(density_mass(DS::beprime(1.4, 2.6), 1e-9, 50.0) +
              density_mass(DS::beprime(1.4, 2.6), 50.0, 2000.0) ==
          doctest::Approx(1.0).epsilon(1e-4));
    CHECK(density_mass(DS::al(1.2, 0.7), -40.0, 40.0) ==
          doctest::Approx(1.0).epsilon(1e-6));
    CHECK(density_mass(DS::sexp(1.5, -0.4), -0.4 + 1e-12, 30.0) ==
          doctest::Approx(1.0).epsilon(1e-6));
    CHECK(density_mass(DS::ig(2.0, 1.3), 1e-4, 500.0) ==
          doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("discrete pmfs sum to one on the lattice") {
    CHECK(pmf_mass(DS::ssgeo(0.45, -2, 0.5), -2, 200) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(pmf_mass(DS::sdal(0.5, 0.6, 0.25), -300, 300) ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("cdf is monotone and matches the density mass") {
    const DS spec = DS::al(0.9, 1.4);
    double prev = 0.0;
    for (double x = -6.0; x <= 6.0; x += 0.25) {
        const double F = dist::cdf(spec, x);
        CHECK(F >= prev);
        prev = F;
    }
    CHECK(dist::cdf(spec, 1.3) ==
          doctest::Approx(density_mass(spec, -40.0, 1.3)).epsilon(1e-6));
}

TEST_CASE("samplers agree with their cdfs (KS at 1%)") {
    const std::size_t n = 20000;
    const double crit = stat::ks_one_sample_critical(n);
    CHECK(ks_vs_cdf(DS::gam(2.3, 1.7), n, 1) < crit);
    CHECK(ks_vs_cdf(DS::gam(0.4, 2.0), n, 2) < crit);  // shape < 1 boost path
    CHECK(ks_vs_cdf(DS::be(0.7, 1.9), n, 3) < crit);
    CHECK(ks_vs_cdf(DS::beprime(1.4, 2.6), n, 4) < crit);
    CHECK(ks_vs_cdf(DS::ig(1.1, 0.8), n, 5) < crit);
    CHECK(ks_vs_cdf(DS::al(1.2, 0.7), n, 6) < crit);
    CHECK(ks_vs_cdf(DS::sexp(1.5, -0.4), n, 7) < crit);
    CHECK(ks_vs_cdf(DS::ib(2.0, 1.5), n, 8) < crit);
}

TEST_CASE("discrete samplers hit their pmfs") {
    Rng rng(9);
    const DS spec = DS::ssgeo(0.45, -2, 0.5);
    const std::size_t n = 20000;
    std::vector<long long> counts(40, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const long long k =
            dist::value_to_index(spec, dist::sample_one(spec, rng).value);
        if (k + 2 >= 0 && k + 2 < 40) ++counts[k + 2];
    }
    // compare observed frequencies against the pmf (3 sigma)
    for (long long k = -2; k < 10; ++k) {
        const double p = std::exp(dist::log_pmf_index(spec, k));
        const double se = std::sqrt(p * (1.0 - p) / n);
        CHECK(std::fabs(double(counts[k + 2]) / n - p) < 4.0 * se + 1e-4);
    }
}

TEST_CASE("negation closure: -AL(a,b) is AL(b,a), -sdAL(p,q) is sdAL(q,p)") {
    const DS neg = DS::al(1.3, 0.6).negated();
    const DS flipped = DS::al(0.6, 1.3);
    for (double x = -5.0; x <= 5.0; x += 0.37) {
        CHECK(dist::log_density(neg, x) ==
              doctest::Approx(dist::log_density(flipped, x)).epsilon(1e-12));
        CHECK(dist::cdf(neg, x) ==
              doctest::Approx(dist::cdf(flipped, x)).epsilon(1e-12));
    }
    const DS dneg = DS::sdal(0.5, 0.7, 0.25).negated();
    const DS dflip = DS::sdal(0.7, 0.5, 0.25);
    for (long long k = -12; k <= 12; ++k)
        CHECK(dist::log_pmf_index(dneg, k) ==
              doctest::Approx(dist::log_pmf_index(dflip, k)).epsilon(1e-12));
}

TEST_CASE("reciprocal relations: IG is 1/Gam, IB is 1/Be") {
    Rng rng(21);
    const std::size_t n = 20000;
    const double crit = stat::ks_one_sample_critical(n);
    std::vector<double> inv;
    inv.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        inv.push_back(1.0 / dist::sample_one(DS::gam(1.8, 1.1), rng).value);
    std::sort(inv.begin(), inv.end());
    const DS ig = DS::ig(1.8, 1.1);
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double F = dist::cdf(ig, inv[i]);
        d = std::max({d, F - double(i) / n, double(i + 1) / n - F});
    }
    CHECK(d < crit);
    // IB(a,b) = 1 + Be'(b,a) in law: compare cdfs directly
    const DS ib = DS::ib(2.0, 1.5), bp = DS::beprime(1.5, 2.0);
    for (double x = 1.05; x < 8.0; x += 0.45)
        CHECK(dist::cdf(ib, x) ==
              doctest::Approx(dist::cdf(bp, x - 1.0)).epsilon(1e-10));
}

TEST_CASE("truncation atoms carry the right mass") {
    const double rho = 1.1, sigma = 1.7;
    const DS up = DS::al(rho, sigma).max0();   // atom = P(AL <= 0)
    const DS down = DS::al(rho, sigma).min0(); // atom = P(AL >= 0)
    CHECK(dist::atom_mass(up) == doctest::Approx(rho / (rho + sigma)).epsilon(1e-12));
    CHECK(dist::atom_mass(down) ==
          doctest::Approx(sigma / (rho + sigma)).epsilon(1e-12));
    Rng rng(5);
    const std::size_t n = 50000;
    std::size_t atoms = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (dist::sample_one(up, rng).is_atom) ++atoms;
    const double p = rho / (rho + sigma);
    CHECK(std::fabs(double(atoms) / n - p) <
          4.0 * std::sqrt(p * (1.0 - p) / n));
}

TEST_CASE("spec validation rejects bad parameters") {
    CHECK_THROWS_AS(DS::gam(-1.0, 1.0).validate(), std::domain_error);
    CHECK_THROWS_AS(DS::ssgeo(1.2, 0, 1.0).validate(), std::domain_error);
    CHECK_THROWS_AS(DS::sdal(0.5, 0.5, -1.0).validate(), std::domain_error);
}

TEST_CASE("spec JSON round-trip") {
    const DS spec = DS::al(1.25, 0.5).min0();
    const DS back = DS::from_json(spec.to_json());
    CHECK(back.family == spec.family);
    CHECK(back.a == spec.a);
    CHECK(back.b == spec.b);
    CHECK(back.modifier == spec.modifier);
}
