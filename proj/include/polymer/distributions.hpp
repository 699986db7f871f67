#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polymer/rng.hpp"

namespace polymer::dist {

enum class Family { sExp, ssGeo, AL, sdAL, Gam, IG, Be, IB, BePrime };

enum class Modifier { none, negate, min_with_zero, max_with_zero, scale, shift };

/// A sample that may sit exactly on a distribution atom (0 for the
/// min/max-with-zero variants).
struct MixedSample {
    double value = 0.0;
    bool is_atom = false;
};

/// Tagged distribution spec over the supported parametric families.
///
/// Parameter slots per family:
///   sExp(λ,c)        a=λ, b=c          density ∝ e^{-λx} on [c,∞)
///   ssGeo(θ,M,m)     a=θ, M, m         pmf ∝ θ^k at mk, k ≥ M
///   AL(λ1,λ2)        a=λ1, b=λ2        ∝ e^{-λ1 x} (x>0), e^{λ2 x} (x<0)
///   sdAL(θ1,θ2,m)    a=θ1, b=θ2, m     ∝ θ1^k (k≥0), θ2^{-k} (k<0) at mk
///   Gam(λ,c)         a=λ, b=c          shape λ, rate c
///   IG(λ,c)          a=λ, b=c          reciprocal of Gam(λ,c)
///   Be(λ1,λ2)        a=λ1, b=λ2
///   IB(λ1,λ2)        a=λ1, b=λ2        reciprocal of Be, support (1,∞)
///   BePrime(λ1,λ2)   a=λ1, b=λ2        support (0,∞)
struct DistributionSpec {
    Family family = Family::sExp;
    double a = 1.0;
    double b = 0.0;
    int M = 0;
    double m = 1.0;
    Modifier modifier = Modifier::none;
    double mod_arg = 0.0;

    // -- factories ---------------------------------------------------------
    static DistributionSpec sexp(double lambda, double c);
    static DistributionSpec exp(double lambda) { return sexp(lambda, 0.0); }
    static DistributionSpec ssgeo(double theta, int M, double m);
    /// Success-probability parameterization: ratio θ = 1 − p.
    static DistributionSpec ssgeo_p(double p, int M, double m) {
        return ssgeo(1.0 - p, M, m);
    }
    static DistributionSpec sgeo_p(double p, double m) { return ssgeo_p(p, 0, m); }
    static DistributionSpec al(double l1, double l2);
    static DistributionSpec sdal(double theta1, double theta2, double m);
    /// Success-probability parameterization: θ1 = 1 − p, θ2 = 1 − q.
    static DistributionSpec sdal_p(double p, double q, double m) {
        return sdal(1.0 - p, 1.0 - q, m);
    }
    static DistributionSpec gam(double lambda, double c);
    static DistributionSpec ig(double lambda, double c);
    static DistributionSpec be(double l1, double l2);
    static DistributionSpec ib(double l1, double l2);
    static DistributionSpec beprime(double l1, double l2);

    // -- modifiers (push-forwards) ----------------------------------------
    DistributionSpec negated() const;
    DistributionSpec min0() const;   ///< X ∧ 0
    DistributionSpec max0() const;   ///< X ∨ 0
    DistributionSpec scaled(double k) const;
    DistributionSpec shifted(double h) const;

    bool discrete() const {
        return family == Family::ssGeo || family == Family::sdAL;
    }

    void validate() const;  ///< throws std::domain_error on bad parameters

    std::string to_string() const;
    nlohmann::json to_json() const;
    static DistributionSpec from_json(const nlohmann::json& j);
};

/// Atom mass at 0 introduced by a min/max-with-zero modifier (0 if none).
/// For discrete families this includes any base mass already sitting at 0.
double atom_mass(const DistributionSpec& spec);
bool has_atom(const DistributionSpec& spec);

/// One i.i.d. draw.
MixedSample sample_one(const DistributionSpec& spec, Rng& rng);
std::vector<MixedSample> sample(const DistributionSpec& spec, Rng& rng,
                                std::size_t n);
std::vector<double> sample_values(const DistributionSpec& spec, Rng& rng,
                                  std::size_t n);

/// Log density (continuous), log pmf (discrete), or log atom mass (at an
/// atom). Returns −inf outside the support.
double log_density(const DistributionSpec& spec, double x);

/// CDF, right-continuous; returns 0/1 outside the support.
double cdf(const DistributionSpec& spec, double x);

/// CDF of the continuous part, conditioned on not hitting the atom.
double cdf_continuous_part(const DistributionSpec& spec, double x);

/// Log pmf of a discrete spec at lattice index k (value = m·k for base
/// specs; modifiers track the index transformation).
double log_pmf_index(const DistributionSpec& spec, long long k);

/// Lattice index of a sampled value of a discrete spec.
long long value_to_index(const DistributionSpec& spec, double value);

/// Endpoints of the support (including modifier effects); ±inf if unbounded.
struct Support {
    double lo;
    double hi;
};
Support support(const DistributionSpec& spec);

/// ln of a Gam(shape, 1) draw; robust down to very small shapes.
double sample_log_gamma(double shape, Rng& rng);
double sample_gamma(double shape, double rate, Rng& rng);

} // namespace polymer::dist
