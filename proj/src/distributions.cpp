#include "polymer/distributions.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "polymer/special.hpp"

namespace polymer::dist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

double normal01(Rng& rng) {
    // Box-Muller; one variate per call keeps the stream stateless.
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
}

// Marsaglia-Tsang, shape >= 1.
double gamma_mt(double shape, Rng& rng) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal01(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

} // namespace

double sample_log_gamma(double shape, Rng& rng) {
    require(shape > 0.0, "sample_log_gamma: shape must be > 0");
    if (shape < 1.0) {
        // Boost to shape+1, then multiply by U^{1/shape} (in log space so
        // tiny shapes do not underflow).
        const double g = gamma_mt(shape + 1.0, rng);
        return std::log(g) + std::log(rng.uniform()) / shape;
    }
    return std::log(gamma_mt(shape, rng));
}

double sample_gamma(double shape, double rate, Rng& rng) {
    require(rate > 0.0, "sample_gamma: rate must be > 0");
    if (shape < 1.0) return std::exp(sample_log_gamma(shape, rng)) / rate;
    return gamma_mt(shape, rng) / rate;
}

// ---------------------------------------------------------------------------
// factories / modifiers
// ---------------------------------------------------------------------------

DistributionSpec DistributionSpec::sexp(double lambda, double c) {
    DistributionSpec s;
    s.family = Family::sExp;
    s.a = lambda;
    s.b = c;
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::ssgeo(double theta, int M, double m) {
    DistributionSpec s;
    s.family = Family::ssGeo;
    s.a = theta;
    s.M = M;
    s.m = m;
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::al(double l1, double l2) {
    DistributionSpec s;
    s.family = Family::AL;
    s.a = l1;
    s.b = l2;
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::sdal(double t1, double t2, double m) {
    DistributionSpec s;
    s.family = Family::sdAL;
    s.a = t1;
    s.b = t2;
    s.m = m;
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::gam(double lambda, double c) {
    DistributionSpec s;
    s.family = Family::Gam;
    s.a = lambda;
    s.b = c;
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::ig(double lambda, double c) {
    DistributionSpec s;
    s.family = Family::IG;
    s.a = lambda;
    s.b = c;
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::be(double l1, double l2) {
    DistributionSpec s;
    s.family = Family::Be;
    s.a = l1;
    s.b = l2;
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::ib(double l1, double l2) {
    DistributionSpec s;
    s.family = Family::IB;
    s.a = l1;
    s.b = l2;
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::beprime(double l1, double l2) {
    DistributionSpec s;
    s.family = Family::BePrime;
    s.a = l1;
    s.b = l2;
    s.validate();
    return s;
}

namespace {
DistributionSpec with_modifier(DistributionSpec s, Modifier mod, double arg) {
    require(s.modifier == Modifier::none,
            "DistributionSpec: modifiers do not stack");
    s.modifier = mod;
    s.mod_arg = arg;
    s.validate();
    return s;
}
} // namespace

DistributionSpec DistributionSpec::negated() const {
    return with_modifier(*this, Modifier::negate, 0.0);
}
DistributionSpec DistributionSpec::min0() const {
    return with_modifier(*this, Modifier::min_with_zero, 0.0);
}
DistributionSpec DistributionSpec::max0() const {
    return with_modifier(*this, Modifier::max_with_zero, 0.0);
}
DistributionSpec DistributionSpec::scaled(double k) const {
    return with_modifier(*this, Modifier::scale, k);
}
DistributionSpec DistributionSpec::shifted(double h) const {
    return with_modifier(*this, Modifier::shift, h);
}

void DistributionSpec::validate() const {
    switch (family) {
        case Family::sExp:
            require(a > 0.0, "sExp: lambda must be > 0");
            break;
        case Family::ssGeo:
            require(a > 0.0 && a < 1.0, "ssGeo: theta must be in (0,1)");
            require(m > 0.0, "ssGeo: m must be > 0");
            break;
        case Family::AL:
            require(a > 0.0 && b > 0.0, "AL: rates must be > 0");
            break;
        case Family::sdAL:
            require(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0,
                    "sdAL: thetas must be in (0,1)");
            require(m > 0.0, "sdAL: m must be > 0");
            break;
        case Family::Gam:
        case Family::IG:
            require(a > 0.0 && b > 0.0, "Gam/IG: parameters must be > 0");
            break;
        case Family::Be:
        case Family::IB:
        case Family::BePrime:
            require(a > 0.0 && b > 0.0, "Be-type: parameters must be > 0");
            break;
    }
    if (modifier == Modifier::scale) {
        require(mod_arg > 0.0, "scale: factor must be > 0");
        require(!discrete(), "scale: unsupported for lattice families");
    }
    if (modifier == Modifier::shift)
        require(!discrete(), "shift: unsupported for lattice families");
}

// ---------------------------------------------------------------------------
// base family evaluations (no modifier)
// ---------------------------------------------------------------------------

namespace {

double base_log_density(const DistributionSpec& s, double x) {
    using stat::log_beta;
    using stat::log_gamma;
    switch (s.family) {
        case Family::sExp: {
            if (x < s.b) return -kInf;
            // Z = e^{-lambda c}/lambda
            return -s.a * x + s.a * s.b + std::log(s.a);
        }
        case Family::AL: {
            // Z = 1/l1 + 1/l2
            const double lz = std::log(1.0 / s.a + 1.0 / s.b);
            return (x >= 0.0 ? -s.a * x : s.b * x) - lz;
        }
        case Family::Gam:
            if (x <= 0.0) return -kInf;
            return (s.a - 1.0) * std::log(x) - s.b * x - log_gamma(s.a) +
                   s.a * std::log(s.b);
        case Family::IG:
            if (x <= 0.0) return -kInf;
            return -(s.a + 1.0) * std::log(x) - s.b / x - log_gamma(s.a) +
                   s.a * std::log(s.b);
        case Family::Be:
            if (x <= 0.0 || x >= 1.0) return -kInf;
            return (s.a - 1.0) * std::log(x) + (s.b - 1.0) * std::log1p(-x) -
                   log_beta(s.a, s.b);
        case Family::IB:
            if (x <= 1.0) return -kInf;
            return (s.b - 1.0) * std::log(x - 1.0) -
                   (s.a + s.b) * std::log(x) - log_beta(s.a, s.b);
        case Family::BePrime:
            if (x <= 0.0) return -kInf;
            return (s.a - 1.0) * std::log(x) - (s.a + s.b) * std::log1p(x) -
                   log_beta(s.a, s.b);
        default:
            throw std::logic_error("base_log_density: discrete family");
    }
}

double base_cdf(const DistributionSpec& s, double x) {
    switch (s.family) {
        case Family::sExp:
            if (x < s.b) return 0.0;
            return -std::expm1(-s.a * (x - s.b));
        case Family::AL: {
            const double w = (1.0 / s.a) / (1.0 / s.a + 1.0 / s.b);  // P(X>0)
            if (x < 0.0) return (1.0 - w) * std::exp(s.b * x);
            return 1.0 - w * std::exp(-s.a * x);
        }
        case Family::Gam:
            if (x <= 0.0) return 0.0;
            return stat::reg_inc_gamma(s.a, s.b * x);
        case Family::IG:
            if (x <= 0.0) return 0.0;
            return 1.0 - stat::reg_inc_gamma(s.a, s.b / x);
        case Family::Be:
            return stat::reg_inc_beta(s.a, s.b, x);
        case Family::IB:
            if (x <= 1.0) return 0.0;
            return 1.0 - stat::reg_inc_beta(s.a, s.b, 1.0 / x);
        case Family::BePrime:
            if (x <= 0.0) return 0.0;
            return stat::reg_inc_beta(s.a, s.b, x / (1.0 + x));
        default:
            throw std::logic_error("base_cdf: discrete family");
    }
}

double base_sample(const DistributionSpec& s, Rng& rng) {
    switch (s.family) {
        case Family::sExp:
            return s.b - std::log(rng.uniform()) / s.a;
        case Family::AL: {
            const double w = (1.0 / s.a) / (1.0 / s.a + 1.0 / s.b);  // P(X>0)
            if (rng.uniform() < w) return -std::log(rng.uniform()) / s.a;
            return std::log(rng.uniform()) / s.b;
        }
        case Family::Gam:
            return sample_gamma(s.a, s.b, rng);
        case Family::IG:
            return 1.0 / sample_gamma(s.a, s.b, rng);
        case Family::Be: {
            const double g1 = sample_gamma(s.a, 1.0, rng);
            const double g2 = sample_gamma(s.b, 1.0, rng);
            return g1 / (g1 + g2);
        }
        case Family::IB: {
            const double g1 = sample_gamma(s.a, 1.0, rng);
            const double g2 = sample_gamma(s.b, 1.0, rng);
            return (g1 + g2) / g1;
        }
        case Family::BePrime:
            return sample_gamma(s.a, 1.0, rng) / sample_gamma(s.b, 1.0, rng);
        default:
            throw std::logic_error("base_sample: discrete family");
    }
}

// Discrete lattice-index pmf/cdf for the base families.
double base_log_pmf_idx(const DistributionSpec& s, long long k) {
    if (s.family == Family::ssGeo) {
        if (k < s.M) return -kInf;
        // Z = theta^M / (1 - theta)
        return (static_cast<double>(k) - s.M) * std::log(s.a) +
               std::log1p(-s.a);
    }
    // sdAL: Z = 1/(1-t1) + t2/(1-t2)
    const double lz = std::log(1.0 / (1.0 - s.a) + s.b / (1.0 - s.b));
    if (k >= 0) return static_cast<double>(k) * std::log(s.a) - lz;
    return static_cast<double>(-k) * std::log(s.b) - lz;
}

double base_cdf_idx(const DistributionSpec& s, long long k) {
    if (s.family == Family::ssGeo) {
        if (k < s.M) return 0.0;
        return 1.0 - std::pow(s.a, static_cast<double>(k - s.M + 1));
    }
    const double z = 1.0 / (1.0 - s.a) + s.b / (1.0 - s.b);
    if (k >= 0)
        return 1.0 -
               std::pow(s.a, static_cast<double>(k + 1)) / (1.0 - s.a) / z;
    return std::pow(s.b, static_cast<double>(-k)) / (1.0 - s.b) / z;
}

long long geometric_idx(double theta, Rng& rng) {
    // P(G = j) = (1-theta) theta^j, j >= 0, by inversion.
    const double u = rng.uniform();
    const double j = std::floor(std::log(u) / std::log(theta));
    return static_cast<long long>(j);
}

long long base_sample_idx(const DistributionSpec& s, Rng& rng) {
    if (s.family == Family::ssGeo) return s.M + geometric_idx(s.a, rng);
    // sdAL
    const double zp = 1.0 / (1.0 - s.a);
    const double zn = s.b / (1.0 - s.b);
    if (rng.uniform() < zp / (zp + zn)) return geometric_idx(s.a, rng);
    return -(1 + geometric_idx(s.b, rng));
}

// Lattice-index transformation induced by the modifier.
double mod_log_pmf_idx(const DistributionSpec& s, long long k) {
    switch (s.modifier) {
        case Modifier::none:
            return base_log_pmf_idx(s, k);
        case Modifier::negate:
            return base_log_pmf_idx(s, -k);
        case Modifier::min_with_zero:
            if (k > 0) return -kInf;
            if (k == 0) return std::log1p(-base_cdf_idx(s, -1));
            return base_log_pmf_idx(s, k);
        case Modifier::max_with_zero:
            if (k < 0) return -kInf;
            if (k == 0) return std::log(base_cdf_idx(s, 0));
            return base_log_pmf_idx(s, k);
        default:
            throw std::logic_error("discrete: unsupported modifier");
    }
}

double mod_cdf_idx(const DistributionSpec& s, long long k) {
    switch (s.modifier) {
        case Modifier::none:
            return base_cdf_idx(s, k);
        case Modifier::negate:
            return 1.0 - base_cdf_idx(s, -k - 1);
        case Modifier::min_with_zero:
            return k >= 0 ? 1.0 : base_cdf_idx(s, k);
        case Modifier::max_with_zero:
            return k < 0 ? 0.0 : base_cdf_idx(s, k);
        default:
            throw std::logic_error("discrete: unsupported modifier");
    }
}

} // namespace

// ---------------------------------------------------------------------------
// public API
// ---------------------------------------------------------------------------

bool has_atom(const DistributionSpec& spec) {
    return !spec.discrete() && (spec.modifier == Modifier::min_with_zero ||
                                spec.modifier == Modifier::max_with_zero);
}

double atom_mass(const DistributionSpec& spec) {
    if (spec.discrete()) {
        if (spec.modifier == Modifier::min_with_zero ||
            spec.modifier == Modifier::max_with_zero)
            return std::exp(mod_log_pmf_idx(spec, 0));
        return 0.0;
    }
    if (spec.modifier == Modifier::min_with_zero)
        return 1.0 - base_cdf(spec, 0.0);
    if (spec.modifier == Modifier::max_with_zero) return base_cdf(spec, 0.0);
    return 0.0;
}

MixedSample sample_one(const DistributionSpec& spec, Rng& rng) {
    if (spec.discrete()) {
        long long k = base_sample_idx(spec, rng);
        switch (spec.modifier) {
            case Modifier::none:
                break;
            case Modifier::negate:
                k = -k;
                break;
            case Modifier::min_with_zero:
                k = std::min(k, 0ll);
                break;
            case Modifier::max_with_zero:
                k = std::max(k, 0ll);
                break;
            default:
                throw std::logic_error("discrete: unsupported modifier");
        }
        return {spec.m * static_cast<double>(k), false};
    }
    double x = base_sample(spec, rng);
    bool atom = false;
    switch (spec.modifier) {
        case Modifier::none:
            break;
        case Modifier::negate:
            x = -x;
            break;
        case Modifier::min_with_zero:
            if (x >= 0.0) {
                x = 0.0;
                atom = true;
            }
            break;
        case Modifier::max_with_zero:
            if (x <= 0.0) {
                x = 0.0;
                atom = true;
            }
            break;
        case Modifier::scale:
            x *= spec.mod_arg;
            break;
        case Modifier::shift:
            x += spec.mod_arg;
            break;
    }
    return {x, atom};
}

std::vector<MixedSample> sample(const DistributionSpec& spec, Rng& rng,
                                std::size_t n) {
    require(n >= 1, "sample: n must be >= 1");
    std::vector<MixedSample> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample_one(spec, rng));
    return out;
}

std::vector<double> sample_values(const DistributionSpec& spec, Rng& rng,
                                  std::size_t n) {
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(sample_one(spec, rng).value);
    return out;
}

double log_pmf_index(const DistributionSpec& spec, long long k) {
    require(spec.discrete(), "log_pmf_index: continuous spec");
    return mod_log_pmf_idx(spec, k);
}

long long value_to_index(const DistributionSpec& spec, double value) {
    require(spec.discrete(), "value_to_index: continuous spec");
    return std::llround(value / spec.m);
}

double log_density(const DistributionSpec& spec, double x) {
    if (spec.discrete()) return mod_log_pmf_idx(spec, value_to_index(spec, x));
    switch (spec.modifier) {
        case Modifier::none:
            return base_log_density(spec, x);
        case Modifier::negate:
            return base_log_density(spec, -x);
        case Modifier::min_with_zero:
            if (x > 0.0) return -kInf;
            if (x == 0.0) return std::log(atom_mass(spec));
            return base_log_density(spec, x);
        case Modifier::max_with_zero:
            if (x < 0.0) return -kInf;
            if (x == 0.0) return std::log(atom_mass(spec));
            return base_log_density(spec, x);
        case Modifier::scale:
            return base_log_density(spec, x / spec.mod_arg) -
                   std::log(spec.mod_arg);
        case Modifier::shift:
            return base_log_density(spec, x - spec.mod_arg);
    }
    return -kInf;
}

double cdf(const DistributionSpec& spec, double x) {
    if (spec.discrete())
        return mod_cdf_idx(spec,
                           static_cast<long long>(
                               std::floor(x / spec.m + 1e-9)));
    switch (spec.modifier) {
        case Modifier::none:
            return base_cdf(spec, x);
        case Modifier::negate:
            return 1.0 - base_cdf(spec, -x);
        case Modifier::min_with_zero:
            return x >= 0.0 ? 1.0 : base_cdf(spec, x);
        case Modifier::max_with_zero:
            return x < 0.0 ? 0.0 : base_cdf(spec, x);
        case Modifier::scale:
            return base_cdf(spec, x / spec.mod_arg);
        case Modifier::shift:
            return base_cdf(spec, x - spec.mod_arg);
    }
    return 0.0;
}

double cdf_continuous_part(const DistributionSpec& spec, double x) {
    const double p = atom_mass(spec);
    if (p == 0.0) return cdf(spec, x);
    const double f = cdf(spec, x) - (x >= 0.0 ? p : 0.0);
    return std::min(1.0, std::max(0.0, f / (1.0 - p)));
}

Support support(const DistributionSpec& spec) {
    Support s{-kInf, kInf};
    switch (spec.family) {
        case Family::sExp:
            s = {spec.b, kInf};
            break;
        case Family::ssGeo:
            s = {spec.m * spec.M, kInf};
            break;
        case Family::AL:
        case Family::sdAL:
            s = {-kInf, kInf};
            break;
        case Family::Gam:
        case Family::IG:
        case Family::BePrime:
            s = {0.0, kInf};
            break;
        case Family::Be:
            s = {0.0, 1.0};
            break;
        case Family::IB:
            s = {1.0, kInf};
            break;
    }
    switch (spec.modifier) {
        case Modifier::none:
            break;
        case Modifier::negate:
            s = {-s.hi, -s.lo};
            break;
        case Modifier::min_with_zero:
            s = {std::min(s.lo, 0.0), 0.0};
            break;
        case Modifier::max_with_zero:
            s = {0.0, std::max(s.hi, 0.0)};
            break;
        case Modifier::scale:
            s = {s.lo * spec.mod_arg, s.hi * spec.mod_arg};
            break;
        case Modifier::shift:
            s = {s.lo + spec.mod_arg, s.hi + spec.mod_arg};
            break;
    }
    return s;
}

// ---------------------------------------------------------------------------
// naming / JSON
// ---------------------------------------------------------------------------

namespace {

const char* family_name(Family f) {
    switch (f) {
        case Family::sExp: return "sExp";
        case Family::ssGeo: return "ssGeo";
        case Family::AL: return "AL";
        case Family::sdAL: return "sdAL";
        case Family::Gam: return "Gam";
        case Family::IG: return "IG";
        case Family::Be: return "Be";
        case Family::IB: return "IB";
        case Family::BePrime: return "BePrime";
    }
    return "?";
}

const char* modifier_name(Modifier m) {
    switch (m) {
        case Modifier::none: return "none";
        case Modifier::negate: return "negate";
        case Modifier::min_with_zero: return "min_with_zero";
        case Modifier::max_with_zero: return "max_with_zero";
        case Modifier::scale: return "scale";
        case Modifier::shift: return "shift";
    }
    return "?";
}

} // namespace

std::string DistributionSpec::to_string() const {
    std::ostringstream os;
    os << family_name(family) << "(";
    switch (family) {
        case Family::sExp:
        case Family::AL:
        case Family::Gam:
        case Family::IG:
        case Family::Be:
        case Family::IB:
        case Family::BePrime:
            os << a << "," << b;
            break;
        case Family::ssGeo:
            os << a << "," << M << "," << m;
            break;
        case Family::sdAL:
            os << a << "," << b << "," << m;
            break;
    }
    os << ")";
    if (modifier != Modifier::none) {
        os << "." << modifier_name(modifier);
        if (modifier == Modifier::scale || modifier == Modifier::shift)
            os << "(" << mod_arg << ")";
    }
    return os.str();
}

nlohmann::json DistributionSpec::to_json() const {
    nlohmann::json params;
    switch (family) {
        case Family::sExp:
            params = {{"lambda", a}, {"c", b}};
            break;
        case Family::ssGeo:
            params = {{"theta", a}, {"M", M}, {"m", m}};
            break;
        case Family::AL:
            params = {{"lambda1", a}, {"lambda2", b}};
            break;
        case Family::sdAL:
            params = {{"theta1", a}, {"theta2", b}, {"m", m}};
            break;
        case Family::Gam:
        case Family::IG:
            params = {{"lambda", a}, {"c", b}};
            break;
        case Family::Be:
        case Family::IB:
        case Family::BePrime:
            params = {{"lambda1", a}, {"lambda2", b}};
            break;
    }
    nlohmann::json j = {{"family", family_name(family)}, {"params", params}};
    if (modifier != Modifier::none) {
        j["modifier"] = modifier_name(modifier);
        if (modifier == Modifier::scale || modifier == Modifier::shift)
            j["modifier_arg"] = mod_arg;
    }
    return j;
}

DistributionSpec DistributionSpec::from_json(const nlohmann::json& j) {
    const std::string fam = j.at("family").get<std::string>();
    const auto& p = j.at("params");
    DistributionSpec s;
    if (fam == "sExp")
        s = sexp(p.at("lambda"), p.value("c", 0.0));
    else if (fam == "Exp")
        s = exp(p.at("lambda"));
    else if (fam == "ssGeo")
        s = ssgeo(p.at("theta"), p.value("M", 0), p.value("m", 1.0));
    else if (fam == "sGeo")
        s = ssgeo(p.at("theta"), 0, p.value("m", 1.0));
    else if (fam == "AL")
        s = al(p.at("lambda1"), p.at("lambda2"));
    else if (fam == "sdAL")
        s = sdal(p.at("theta1"), p.at("theta2"), p.value("m", 1.0));
    else if (fam == "Gam")
        s = gam(p.at("lambda"), p.at("c"));
    else if (fam == "IG")
        s = ig(p.at("lambda"), p.at("c"));
    else if (fam == "Be")
        s = be(p.at("lambda1"), p.at("lambda2"));
    else if (fam == "IB")
        s = ib(p.at("lambda1"), p.at("lambda2"));
    else if (fam == "BePrime")
        s = beprime(p.at("lambda1"), p.at("lambda2"));
    else
        throw std::domain_error("DistributionSpec: unknown family " + fam);

    const std::string mod = j.value("modifier", "none");
    if (mod == "none") return s;
    if (mod == "negate") return s.negated();
    if (mod == "min_with_zero") return s.min0();
    if (mod == "max_with_zero") return s.max0();
    if (mod == "scale") return s.scaled(j.at("modifier_arg").get<double>());
    if (mod == "shift") return s.shifted(j.at("modifier_arg").get<double>());
    throw std::domain_error("DistributionSpec: unknown modifier " + mod);
}

} // namespace polymer::dist
