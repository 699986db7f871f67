#include "polymer/maps.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "polymer/transforms.hpp"

namespace polymer::maps {

using transforms::softmin_eps;
using transforms::softplus_eps;

double model_alpha(Model m) {
    switch (m) {
        case Model::R01: return 0.0;
        case Model::R10: return 1.0;
        case Model::Rm11: return -1.0;
        case Model::R11: return 1.0;
        case Model::R1m1: return 1.0;
    }
    return 0.0;
}

double model_beta(Model m) {
    switch (m) {
        case Model::R01: return 1.0;
        case Model::R10: return 0.0;
        case Model::Rm11: return 1.0;
        case Model::R11: return 1.0;
        case Model::R1m1: return -1.0;
    }
    return 0.0;
}

std::string model_name(Model m) {
    switch (m) {
        case Model::R01: return "R01";
        case Model::R10: return "R10";
        case Model::Rm11: return "Rm11";
        case Model::R11: return "R11";
        case Model::R1m1: return "R1m1";
    }
    return "?";
}

P2 r_ab(double alpha, double beta, const T3& t) {
    const double num = t.a * t.c + alpha * t.b + beta * t.a * t.b;
    return {num / t.c, num / t.b};
}

P2 f_ab(double alpha, double beta, const P2& p) {
    return {p.x * (p.y - alpha) / (p.y + beta * p.x), p.y / p.x};
}

P2 f_ab_inv(double alpha, double beta, const P2& p) {
    const double t = p.x * (p.y + beta) + alpha;
    return {t / p.y, t};
}

P2 rt_1m1(const T3& t) {
    const double s = 1.0 + t.a;
    return {1.0 / s + t.a * t.b / (s * t.c), t.c / (s * t.b) + t.a / s};
}

P2 f_gam_bep(const P2& p) { return {p.x + p.y, p.x / p.y}; }

P2 f_gam_bep_inv(const P2& p) {
    return {p.x * p.y / (1.0 + p.y), p.x / (1.0 + p.y)};
}

P2 f_bep_bep(const P2& p) {
    return {(1.0 + p.x) / p.y, (1.0 + p.x + p.y) / (p.x * p.y)};
}

P2 f_e_al(const P2& p) { return {std::min(p.x, p.y), p.x - p.y}; }

P2 f_e_al_inv(const P2& p) {
    const double m = std::min(0.0, p.y);
    return {p.x + p.y - m, p.x - m};
}

P2 f_al_al(const P2& p) {
    return {std::min(0.0, p.x) - p.y,
            std::min({0.0, p.x, p.y}) - p.x - p.y};
}

P2 f_zero_01(const P2& p) { return {std::max(p.x, p.y), p.y - p.x}; }

P2 f_zero_01_inv(const P2& p) {
    // (x∨y, y−x) = (u,v): v ≥ 0 gives (u−v, u); v < 0 gives (u, u+v).
    if (p.y >= 0.0) return {p.x - p.y, p.x};
    return {p.x, p.x + p.y};
}

P2 rzero_01(const T3& t) {
    return {std::min(t.a, t.a + t.b - t.c), std::min(t.a + t.c - t.b, t.a)};
}

P2 rzero_10(const T3& t) {
    return {std::min(t.a, t.b - t.c), std::min(t.a + t.c - t.b, 0.0)};
}

P2 rzero_11(const T3& t) {
    const double m = std::min(t.a, 0.0);
    return {std::min(t.a, m + t.b - t.c), std::min(t.a + t.c - t.b, m)};
}

P2 rtzero_1m1(const T3& t) {
    const double u = -std::min(0.0, t.a);
    const double v = std::max(t.a, 0.0);
    return {std::min(u, v + t.b - t.c), std::min(u + t.c - t.b, v)};
}

// S_ε-conjugated maps, in log coordinates throughout (see the per-map
// algebra: products become sums, sums become soft-mins).

P2 soft_rzero_01(double eps, const T3& t) {
    const double m = softmin_eps(eps, t.a + t.b, t.a + t.c);
    return {m - t.c, m - t.b};
}

P2 soft_rzero_10(double eps, const T3& t) {
    const double m = softmin_eps(eps, t.a + t.c, t.b);
    return {m - t.c, m - t.b};
}

P2 soft_rzero_11(double eps, const T3& t) {
    const double m = softmin_eps(eps, t.a + t.c, t.b, t.a + t.b);
    return {m - t.c, m - t.b};
}

P2 soft_rtzero_1m1(double eps, const T3& t) {
    const double m = softmin_eps(eps, t.c, t.a + t.b) + softplus_eps(eps, t.a);
    return {m - t.c, m - t.b};
}

P2 soft_f_gam_bep(double eps, const P2& p) {
    return {softmin_eps(eps, p.x, p.y), p.x - p.y};
}

P2 soft_f_gam_bep_inv(double eps, const P2& p) {
    const double sp = softplus_eps(eps, p.y);
    return {p.x + p.y + sp, p.x + sp};
}

P2 soft_f_bep_bep(double eps, const P2& p) {
    const double m = std::min({0.0, p.x, p.y});
    const double sm3 = m - eps * std::log(std::exp(-(0.0 - m) / eps) +
                                          std::exp(-(p.x - m) / eps) +
                                          std::exp(-(p.y - m) / eps));
    return {-softplus_eps(eps, p.x) - p.y, sm3 - p.x - p.y};
}

T3 fbar(const Map2& f, const Map2& f_inv, const T3& t) {
    const P2 dg = f({t.b, t.c});
    const P2 ef = f_inv({t.a, dg.y});
    return {dg.x, ef.x, ef.y};
}

P2 fbar_23(const Map2& f, const Map2& f_inv, const T3& t) {
    const T3 r = fbar(f, f_inv, t);
    return {r.b, r.c};
}

// ---------------------------------------------------------------------------
// domain sampling
// ---------------------------------------------------------------------------

namespace {

double pos(Rng& rng) {
    return std::exp(rng.uniform(std::log(0.05), std::log(20.0)));
}
double gt1(Rng& rng) {
    return 1.0 + std::exp(rng.uniform(std::log(0.05), std::log(10.0)));
}
double unit(Rng& rng) { return rng.uniform(0.02, 0.98); }
double real_(Rng& rng) { return rng.uniform(-5.0, 5.0); }
double neg(Rng& rng) { return -pos(rng); }

} // namespace

P2 sample_f_domain(Model m, Rng& rng) {
    switch (m) {
        case Model::R01: return {pos(rng), pos(rng)};
        case Model::R10: return {pos(rng), gt1(rng)};
        case Model::Rm11: return {gt1(rng), pos(rng)};
        case Model::R11: return {pos(rng), gt1(rng)};
        case Model::R1m1: return {unit(rng), gt1(rng)};
    }
    return {1.0, 1.0};
}

T3 sample_r_domain(Model m, Rng& rng) {
    // (a,b,c) ∈ J₁×I₁×I₂ with J₁ the first output interval of F_(α,β).
    switch (m) {
        case Model::R01: return {pos(rng), pos(rng), pos(rng)};
        case Model::R10: return {pos(rng), pos(rng), gt1(rng)};
        case Model::Rm11: return {gt1(rng), gt1(rng), pos(rng)};
        case Model::R11: return {pos(rng), pos(rng), gt1(rng)};
        case Model::R1m1: return {unit(rng), unit(rng), gt1(rng)};
    }
    return {1.0, 1.0, 1.0};
}

T3 sample_rt_1m1_domain(Rng& rng) { return {pos(rng), unit(rng), gt1(rng)}; }

// ---------------------------------------------------------------------------
// identity registry
// ---------------------------------------------------------------------------

namespace {

double res2(const P2& u, const P2& v) {
    const double s = std::max({1.0, std::fabs(u.x), std::fabs(u.y),
                               std::fabs(v.x), std::fabs(v.y)});
    return std::max(std::fabs(u.x - v.x), std::fabs(u.y - v.y)) / s;
}

double Iv(double x) { return 1.0 / x; }
double Qv(double x) { return 1.0 / x - 1.0; }
double Qiv(double x) { return 1.0 / (1.0 + x); }
double IQiI(double x) { return (1.0 + x) / x; }   // I∘Q⁻¹∘I
double IQi(double x) { return 1.0 + x; }          // I∘Q⁻¹
double QiI(double x) { return x / (1.0 + x); }    // Q⁻¹∘I
double Iz(double x) { return -x; }
double Qiz(double x) { return -std::min(x, 0.0); }

struct IdentityCase {
    std::string description;
    // returns the residual at one random point
    std::function<double(Rng&)> probe;
};

P2 apply_pi(const P2& p) { return {p.y, p.x}; }

const std::map<std::string, IdentityCase>& identity_registry() {
    static const std::map<std::string, IdentityCase> reg = [] {
        std::map<std::string, IdentityCase> r;

        auto fr_case = [](Model m) {
            return IdentityCase{
                "fbar(F)^(2,3) reconstructs R for row " + model_name(m),
                [m](Rng& rng) {
                    const double al = model_alpha(m), be = model_beta(m);
                    const T3 t = sample_r_domain(m, rng);
                    const P2 lhs = r_ab(al, be, t);
                    const P2 rhs = fbar_23(
                        [al, be](const P2& p) { return f_ab(al, be, p); },
                        [al, be](const P2& p) { return f_ab_inv(al, be, p); },
                        t);
                    return res2(lhs, rhs);
                }};
        };
        r["fr-R01"] = fr_case(Model::R01);
        r["fr-R10"] = fr_case(Model::R10);
        r["fr-Rm11"] = fr_case(Model::Rm11);
        r["fr-R11"] = fr_case(Model::R11);
        r["fr-R1m1"] = fr_case(Model::R1m1);

        r["rrr"] = {"fbar(F^zero_(0,1))^(2,3) = R^zero_(0,1) on R^3",
                    [](Rng& rng) {
                        const T3 t{real_(rng), real_(rng), real_(rng)};
                        return res2(rzero_01(t),
                                    fbar_23(f_zero_01, f_zero_01_inv, t));
                    }};

        r["tildereq"] = {"Rtilde_(1,-1) = R_(1,-1) o (Qinv x Id x Id)",
                         [](Rng& rng) {
                             const T3 t = sample_rt_1m1_domain(rng);
                             const P2 lhs = rt_1m1(t);
                             const P2 rhs =
                                 r_ab(1.0, -1.0, {Qiv(t.a), t.b, t.c});
                             return res2(lhs, rhs);
                         }};

        r["p31a"] = {"(IxId) o F01 o (IxI) = F_Gam,Be'", [](Rng& rng) {
                         const P2 p{pos(rng), pos(rng)};
                         P2 q = f_ab(0, 1, {Iv(p.x), Iv(p.y)});
                         q.x = Iv(q.x);
                         return res2(q, f_gam_bep(p));
                     }};
        r["p31b"] = {"pi o (IdxI) o F10 o (Idx(IQinvI)) = F_Gam,Be'^-1",
                     [](Rng& rng) {
                         const P2 p{pos(rng), pos(rng)};
                         P2 q = f_ab(1, 0, {p.x, IQiI(p.y)});
                         q.y = Iv(q.y);
                         return res2(apply_pi(q), f_gam_bep_inv(p));
                     }};
        r["p31ci"] = {"pi o ((IQI)xI) o Fm11 o ((IQinv)xId) = F_Be',Be'",
                      [](Rng& rng) {
                          const P2 p{pos(rng), pos(rng)};
                          P2 q = f_ab(-1, 1, {IQi(p.x), p.y});
                          q.x = Iv(Qv(Iv(q.x)));
                          q.y = Iv(q.y);
                          return res2(apply_pi(q), f_bep_bep(p));
                      }};
        r["p31cii"] = {"pi o (IxId) o F11 o (Idx(IQinv)) o pi = F_Be',Be'",
                       [](Rng& rng) {
                           const P2 p{pos(rng), pos(rng)};
                           const P2 t = apply_pi(p);
                           P2 q = f_ab(1, 1, {t.x, IQi(t.y)});
                           q.x = Iv(q.x);
                           return res2(apply_pi(q), f_bep_bep(p));
                       }};
        r["p31d"] = {"(Qx(QI)) o F1m1 o ((QinvI)x(IQinvI)) o pi = F_Be',Be'",
                     [](Rng& rng) {
                         const P2 p{pos(rng), pos(rng)};
                         const P2 t = apply_pi(p);
                         P2 q = f_ab(1, -1, {QiI(t.x), IQiI(t.y)});
                         q.x = Qv(q.x);
                         q.y = Qv(Iv(q.y));
                         return res2(q, f_bep_bep(p));
                     }};

        r["c32a"] = {"R01 o (IxIxI) = (IxI) o fbar(F_Gam,Be')^(2,3)",
                     [](Rng& rng) {
                         const T3 t{pos(rng), pos(rng), pos(rng)};
                         const P2 lhs =
                             r_ab(0, 1, {Iv(t.a), Iv(t.b), Iv(t.c)});
                         P2 rhs = fbar_23(f_gam_bep, f_gam_bep_inv, t);
                         rhs = {Iv(rhs.x), Iv(rhs.y)};
                         return res2(lhs, rhs);
                     }};
        r["c32b"] = {"R10 change of scale vs fbar(pi o F_Gam,Be'^-1)^(2,3)",
                     [](Rng& rng) {
                         const T3 t{pos(rng), pos(rng), pos(rng)};
                         const P2 lhs = r_ab(1, 0, {t.a, t.b, IQiI(t.c)});
                         P2 rhs = fbar_23(
                             [](const P2& p) {
                                 return apply_pi(f_gam_bep_inv(p));
                             },
                             [](const P2& p) { return f_gam_bep(apply_pi(p)); },
                             t);
                         rhs.y = IQiI(rhs.y);
                         return res2(lhs, rhs);
                     }};
        r["c32ci"] = {"Rm11 change of scale vs fbar(pi o F_Be',Be')^(2,3)",
                      [](Rng& rng) {
                          const T3 t{pos(rng), pos(rng), pos(rng)};
                          const P2 lhs =
                              r_ab(-1, 1, {IQiI(t.a), IQi(t.b), t.c});
                          P2 rhs = fbar_23(
                              [](const P2& p) { return apply_pi(f_bep_bep(p)); },
                              [](const P2& p) { return f_bep_bep(apply_pi(p)); },
                              t);
                          rhs.x = IQi(rhs.x);
                          return res2(lhs, rhs);
                      }};
        r["c32cii"] = {"R11 change of scale vs fbar(pi o F_Be',Be' o pi)^(2,3)",
                       [](Rng& rng) {
                           const T3 t{pos(rng), pos(rng), pos(rng)};
                           const P2 lhs = r_ab(1, 1, {Iv(t.a), t.b, IQi(t.c)});
                           auto g = [](const P2& p) {
                               return apply_pi(f_bep_bep(apply_pi(p)));
                           };
                           P2 rhs = fbar_23(g, g, t);
                           rhs.y = IQi(rhs.y);
                           return res2(lhs, rhs);
                       }};
        r["c32d"] = {"Rtilde_(1,-1) change of scale vs fbar(F_Be',Be' o pi)",
                     [](Rng& rng) {
                         const T3 t{pos(rng), pos(rng), pos(rng)};
                         const P2 lhs = rt_1m1({t.a, QiI(t.b), IQiI(t.c)});
                         P2 rhs = fbar_23(
                             [](const P2& p) { return f_bep_bep(apply_pi(p)); },
                             [](const P2& p) { return apply_pi(f_bep_bep(p)); },
                             t);
                         rhs.x = QiI(rhs.x);
                         rhs.y = IQiI(rhs.y);
                         return res2(lhs, rhs);
                     }};

        r["p34a"] = {"Rzero01 o (Iz x Iz x Iz) = (Iz x Iz) o fbar(F_E,AL)",
                     [](Rng& rng) {
                         const T3 t{real_(rng), real_(rng), real_(rng)};
                         const P2 lhs = rzero_01({-t.a, -t.b, -t.c});
                         P2 rhs = fbar_23(f_e_al, f_e_al_inv, t);
                         rhs = {-rhs.x, -rhs.y};
                         return res2(lhs, rhs);
                     }};
        r["p34b"] = {"Rzero10 change of scale vs fbar(pi o F_E,AL^-1)",
                     [](Rng& rng) {
                         const T3 t{real_(rng), real_(rng), real_(rng)};
                         const P2 lhs =
                             rzero_10({t.a, t.b, Iz(Qiz(Iz(t.c)))});
                         P2 rhs = fbar_23(
                             [](const P2& p) { return apply_pi(f_e_al_inv(p)); },
                             [](const P2& p) { return f_e_al(apply_pi(p)); },
                             t);
                         rhs.y = Iz(Qiz(Iz(rhs.y)));
                         return res2(lhs, rhs);
                     }};
        r["p34c"] = {"Rzero11 change of scale vs fbar(pi o F_AL,AL o pi)",
                     [](Rng& rng) {
                         const T3 t{real_(rng), real_(rng), real_(rng)};
                         const P2 lhs = rzero_11({-t.a, t.b, Iz(Qiz(t.c))});
                         auto g = [](const P2& p) {
                             return apply_pi(f_al_al(apply_pi(p)));
                         };
                         P2 rhs = fbar_23(g, g, t);
                         rhs.y = Iz(Qiz(rhs.y));
                         return res2(lhs, rhs);
                     }};
        r["p34d"] = {"Rtzero_(1,-1) change of scale vs fbar(F_AL,AL o pi)",
                     [](Rng& rng) {
                         const T3 t{real_(rng), real_(rng), real_(rng)};
                         const P2 lhs = rtzero_1m1(
                             {t.a, Qiz(Iz(t.b)), Iz(Qiz(Iz(t.c)))});
                         P2 rhs = fbar_23(
                             [](const P2& p) { return f_al_al(apply_pi(p)); },
                             [](const P2& p) { return apply_pi(f_al_al(p)); },
                             t);
                         rhs.x = Qiz(Iz(rhs.x));
                         rhs.y = Iz(Qiz(Iz(rhs.y)));
                         return res2(lhs, rhs);
                     }};

        r["rrr2"] = {"(Iz x Id) o Fzero01 o (Iz x Iz) = F_E,AL",
                     [](Rng& rng) {
                         const P2 p{real_(rng), real_(rng)};
                         P2 q = f_zero_01({-p.x, -p.y});
                         q.x = -q.x;
                         return res2(q, f_e_al(p));
                     }};

        r["ztmap1"] = {"pi o (Iz x Id) o F_AL,AL o (Iz x Iz) = F_E,AL",
                       [](Rng& rng) {
                           const P2 p{pos(rng), real_(rng)};
                           P2 q = f_al_al({-p.x, -p.y});
                           q.x = -q.x;
                           return res2(apply_pi(q), f_e_al(p));
                       }};
        r["ztmap2"] = {"(Iz x Iz) o F_AL,AL o (Iz x Id) o pi = F_E,AL^-1",
                       [](Rng& rng) {
                           const P2 p{pos(rng), real_(rng)};
                           const P2 t = apply_pi(p);
                           P2 q = f_al_al({-t.x, t.y});
                           q = {-q.x, -q.y};
                           return res2(q, f_e_al_inv(p));
                       }};

        // Finite-δ closed forms of the ptmap chains: exact identities at any
        // δ; the δ→0 limits live in the limit registry.
        r["ptmap1"] = {"ptmap first chain closed form (x+y+dxy, x/(y+dxy))",
                       [](Rng& rng) {
                           const double d = rng.uniform(0.01, 0.5);
                           const P2 p{pos(rng), pos(rng)};
                           P2 q = f_bep_bep({1.0 / (d * p.x), 1.0 / (d * p.y)});
                           q = {Iv(q.x), q.y / d};
                           const P2 lhs = apply_pi(q);
                           const P2 rhs{p.x + p.y + d * p.x * p.y,
                                        p.x / (p.y + d * p.x * p.y)};
                           return res2(lhs, rhs);
                       }};
        r["ptmap2"] = {"ptmap second chain closed form (xy/(1+y), x/(1+y+dxy))",
                       [](Rng& rng) {
                           const double d = rng.uniform(0.01, 0.5);
                           const P2 p{pos(rng), pos(rng)};
                           const P2 t = apply_pi(p);
                           P2 q = f_bep_bep({Iv(t.x), d * t.y});
                           const P2 lhs{1.0 / (d * q.x), 1.0 / (d * q.y)};
                           const P2 rhs{p.x * p.y / (1.0 + p.y),
                                        p.x / (1.0 + p.y + d * p.x * p.y)};
                           return res2(lhs, rhs);
                       }};

        r["ppp1a"] = {"Rzero11 = Rzero01 on (-inf,0) x R x (-inf,0)",
                      [](Rng& rng) {
                          const T3 t{neg(rng), real_(rng), neg(rng)};
                          return res2(rzero_11(t), rzero_01(t));
                      }};
        r["ppp1b"] = {"Rzero11 = Rzero10 on (0,inf) x R x (-inf,0)",
                      [](Rng& rng) {
                          const T3 t{pos(rng), real_(rng), neg(rng)};
                          return res2(rzero_11(t), rzero_10(t));
                      }};
        r["ppp1c"] = {"Rtzero_(1,-1) = Rzero10 o (Qinv_zero x Id x Id)",
                      [](Rng& rng) {
                          const T3 t{neg(rng), pos(rng), neg(rng)};
                          return res2(rtzero_1m1(t),
                                      rzero_10({Qiz(t.a), t.b, t.c}));
                      }};
        return r;
    }();
    return reg;
}

} // namespace

std::vector<std::string> identity_keys() {
    std::vector<std::string> out;
    for (const auto& [k, v] : identity_registry()) out.push_back(k);
    return out;
}

TestReport run_identity(const std::string& key, std::size_t n,
                        std::uint64_t seed, double tol) {
    const auto& reg = identity_registry();
    const auto it = reg.find(key);
    if (it == reg.end())
        throw std::out_of_range("unknown identity key: " + key);
    Rng rng(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        worst = std::max(worst, it->second.probe(rng));
    TestReport rep;
    rep.kind = "identity";
    rep.key = key;
    rep.seed = seed;
    rep.n = n;
    rep.notes.push_back(it->second.description);
    rep.add("max_rel_residual", worst, tol);
    return rep;
}

// ---------------------------------------------------------------------------
// limit registry
// ---------------------------------------------------------------------------

namespace {

struct LimitCase {
    std::string description;
    // sup error over n probe points at one schedule value
    std::function<double(double, std::size_t, Rng&)> sup_err;
    std::vector<double> schedule;
    // threshold per schedule entry; <= 0 means "ratio mode" (error must
    // roughly halve along the schedule instead of meeting a bound)
    std::function<double(double)> threshold;
};

double err2(const P2& u, const P2& v) {
    return std::max(std::fabs(u.x - v.x), std::fabs(u.y - v.y));
}

// Bounded compact-grid samplers for the δ-probes.
double cpos(Rng& rng) {
    return std::exp(rng.uniform(std::log(0.2), std::log(5.0)));
}
double cgt1(Rng& rng) { return 1.0 + std::exp(rng.uniform(std::log(0.2), std::log(5.0))); }
double creal(Rng& rng) { return rng.uniform(-3.0, 3.0); }
double cneg(Rng& rng) { return rng.uniform(-3.0, -0.1); }

bool apart(double u, double v) { return std::fabs(u - v) >= 0.1; }

const std::map<std::string, LimitCase>& limit_registry() {
    static const std::map<std::string, LimitCase> reg = [] {
        std::map<std::string, LimitCase> r;
        const std::vector<double> eps_sched{1e-1, 1e-2, 1e-3};
        const std::vector<double> del_sched{1e-2, 5e-3, 2.5e-3, 1.25e-3,
                                            6.25e-4};

        auto eps_thr = [](double mult) {
            return [mult](double eps) { return 2.0 * eps * mult; };
        };
        auto ratio_thr = std::function<double(double)>{};  // ratio mode

        r["ztl-R01"] = {
            "S_eps conjugation of R_(0,1) -> Rzero_(0,1)",
            [](double eps, std::size_t n, Rng& rng) {
                double worst = 0.0;
                for (std::size_t i = 0; i < n;) {
                    const T3 t{creal(rng), creal(rng), creal(rng)};
                    if (!apart(t.b, t.c)) continue;
                    ++i;
                    worst = std::max(worst,
                                     err2(soft_rzero_01(eps, t), rzero_01(t)));
                }
                return worst;
            },
            eps_sched, eps_thr(1.0)};
        r["ztl-R10"] = {
            "S_eps conjugation of R_(1,0) -> Rzero_(1,0)",
            [](double eps, std::size_t n, Rng& rng) {
                double worst = 0.0;
                for (std::size_t i = 0; i < n;) {
                    const T3 t{creal(rng), creal(rng), cneg(rng)};
                    if (!apart(t.a + t.c, t.b)) continue;
                    ++i;
                    worst = std::max(worst,
                                     err2(soft_rzero_10(eps, t), rzero_10(t)));
                }
                return worst;
            },
            eps_sched, eps_thr(1.0)};
        r["ztl-R11"] = {
            "S_eps conjugation of R_(1,1) -> Rzero_(1,1)",
            [](double eps, std::size_t n, Rng& rng) {
                double worst = 0.0;
                for (std::size_t i = 0; i < n;) {
                    const T3 t{creal(rng), creal(rng), cneg(rng)};
                    if (!apart(t.a + t.c, t.b) || !apart(t.a + t.b, t.b) ||
                        !apart(t.a + t.c, t.a + t.b))
                        continue;
                    ++i;
                    worst = std::max(worst,
                                     err2(soft_rzero_11(eps, t), rzero_11(t)));
                }
                return worst;
            },
            eps_sched, eps_thr(2.0)};
        r["ztl-R1m1"] = {
            "S_eps conjugation of Rtilde_(1,-1) -> Rtzero_(1,-1)",
            [](double eps, std::size_t n, Rng& rng) {
                double worst = 0.0;
                for (std::size_t i = 0; i < n;) {
                    const T3 t{creal(rng), rng.uniform(0.1, 3.0), cneg(rng)};
                    if (!apart(t.a, 0.0) || !apart(t.c, t.a + t.b)) continue;
                    ++i;
                    worst = std::max(
                        worst, err2(soft_rtzero_1m1(eps, t), rtzero_1m1(t)));
                }
                return worst;
            },
            eps_sched, eps_thr(2.0)};

        r["ztlmapmeas-a1"] = {
            "F_Be',Be'^zero = F_AL,AL",
            [](double eps, std::size_t n, Rng& rng) {
                double worst = 0.0;
                for (std::size_t i = 0; i < n;) {
                    const P2 p{creal(rng), creal(rng)};
                    if (!apart(p.x, 0.0) || !apart(p.y, 0.0) ||
                        !apart(p.x, p.y))
                        continue;
                    ++i;
                    worst = std::max(worst,
                                     err2(soft_f_bep_bep(eps, p), f_al_al(p)));
                }
                return worst;
            },
            eps_sched, eps_thr(2.0)};
        r["ztlmapmeas-a2"] = {
            "F_Gam,Be'^zero = F_E,AL",
            [](double eps, std::size_t n, Rng& rng) {
                double worst = 0.0;
                for (std::size_t i = 0; i < n;) {
                    const P2 p{creal(rng), creal(rng)};
                    if (!apart(p.x, p.y)) continue;
                    ++i;
                    worst = std::max(worst,
                                     err2(soft_f_gam_bep(eps, p), f_e_al(p)));
                }
                return worst;
            },
            eps_sched, eps_thr(1.0)};
        r["ztlmapmeas-a3"] = {
            "(F_Gam,Be'^-1)^zero = F_E,AL^-1",
            [](double eps, std::size_t n, Rng& rng) {
                double worst = 0.0;
                for (std::size_t i = 0; i < n;) {
                    const P2 p{creal(rng), creal(rng)};
                    if (!apart(p.y, 0.0)) continue;
                    ++i;
                    worst = std::max(
                        worst, err2(soft_f_gam_bep_inv(eps, p), f_e_al_inv(p)));
                }
                return worst;
            },
            eps_sched, eps_thr(1.0)};

        r["p53a"] = {
            "inverse-beta to inverse-gamma bijection limit",
            [](double d, std::size_t n, Rng& rng) {
                double worst = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const P2 p{cpos(rng), cpos(rng)};
                    P2 q = f_ab(-1, 1, {p.x / d, p.y / d});
                    q.x *= d;
                    worst = std::max(worst, err2(q, f_ab(0, 1, p)));
                }
                return worst;
            },
            del_sched, ratio_thr};
        r["p53b"] = {
            "inverse-beta to gamma bijection limit",
            [](double d, std::size_t n, Rng& rng) {
                double worst = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const P2 p{cpos(rng), cgt1(rng)};
                    P2 q = f_ab(1, 1, {d * p.x, p.y});
                    q = {q.x / d, d * q.y};
                    worst = std::max(worst, err2(q, f_ab(1, 0, p)));
                }
                return worst;
            },
            del_sched, ratio_thr};
        r["p53c"] = {
            "beta to gamma bijection limit",
            [](double d, std::size_t n, Rng& rng) {
                double worst = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const P2 p{cpos(rng), cgt1(rng)};
                    const P2 q = f_ab(1, -1, {d * p.x, p.y / (p.y - 1.0)});
                    const P2 lhs{1.0 / (d * q.y), d / q.x};
                    worst = std::max(worst, err2(lhs, f_ab(1, 0, p)));
                }
                return worst;
            },
            del_sched, ratio_thr};
        r["p53d"] = {
            "beta to inverse-gamma bijection limit (second-order chain)",
            [](double d, std::size_t n, Rng& rng) {
                double worst = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const P2 p{cpos(rng), cpos(rng)};
                    const P2 q =
                        f_ab(1, -1, {1.0 - d / p.y, 1.0 + d / p.x});
                    const P2 lhs{d / (q.y - 1.0), q.x / (1.0 - q.x)};
                    worst = std::max(worst, err2(lhs, f_ab(0, 1, p)));
                }
                return worst;
            },
            del_sched, ratio_thr};
        r["c54a"] = {
            "inverse-beta to inverse-gamma map limit",
            [](double d, std::size_t n, Rng& rng) {
                double worst = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const T3 t{cpos(rng), cpos(rng), cpos(rng)};
                    P2 q = r_ab(-1, 1, {t.a / d, t.b / d, t.c / d});
                    q = {d * q.x, d * q.y};
                    worst = std::max(worst, err2(q, r_ab(0, 1, t)));
                }
                return worst;
            },
            del_sched, ratio_thr};
        r["c54b"] = {
            "inverse-beta to gamma map limit",
            [](double d, std::size_t n, Rng& rng) {
                double worst = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const T3 t{cpos(rng), cpos(rng), cgt1(rng)};
                    P2 q = r_ab(1, 1, {d * t.a, d * t.b, t.c});
                    q.x /= d;
                    worst = std::max(worst, err2(q, r_ab(1, 0, t)));
                }
                return worst;
            },
            del_sched, ratio_thr};
        r["eqr"] = {
            "beta to gamma map limit",
            [](double d, std::size_t n, Rng& rng) {
                double worst = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const T3 t{cpos(rng), cpos(rng), cgt1(rng)};
                    P2 q = r_ab(1, -1, {d * t.a, d * t.b, t.c});
                    q.x /= d;
                    worst = std::max(worst, err2(q, r_ab(1, 0, t)));
                }
                return worst;
            },
            del_sched, ratio_thr};
        r["ptmap1-lim"] = {
            "F_Be',Be' chain -> F_Gam,Be'",
            [](double d, std::size_t n, Rng& rng) {
                double worst = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const P2 p{cpos(rng), cpos(rng)};
                    P2 q = f_bep_bep({1.0 / (d * p.x), 1.0 / (d * p.y)});
                    q = {q.y / d, 1.0 / q.x};
                    worst = std::max(worst, err2(q, f_gam_bep(p)));
                }
                return worst;
            },
            del_sched, ratio_thr};
        r["ptmap2-lim"] = {
            "F_Be',Be' chain -> F_Gam,Be'^-1",
            [](double d, std::size_t n, Rng& rng) {
                double worst = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const P2 p{cpos(rng), cpos(rng)};
                    P2 q = f_bep_bep({1.0 / p.y, d * p.x});
                    q = {1.0 / (d * q.x), 1.0 / (d * q.y)};
                    worst = std::max(worst, err2(q, f_gam_bep_inv(p)));
                }
                return worst;
            },
            del_sched, ratio_thr};
        return r;
    }();
    return reg;
}

} // namespace

std::vector<std::string> limit_keys() {
    std::vector<std::string> out;
    for (const auto& [k, v] : limit_registry()) out.push_back(k);
    return out;
}

TestReport run_limit(const std::string& key, std::size_t n,
                     std::uint64_t seed) {
    const auto& reg = limit_registry();
    const auto it = reg.find(key);
    if (it == reg.end()) throw std::out_of_range("unknown limit key: " + key);
    const LimitCase& lc = it->second;
    TestReport rep;
    rep.kind = "limit";
    rep.key = key;
    rep.seed = seed;
    rep.n = n;
    rep.notes.push_back(lc.description);
    std::vector<double> errs;
    for (std::size_t k = 0; k < lc.schedule.size(); ++k) {
        // Same probe points at every schedule value.
        Rng rng(seed);
        errs.push_back(lc.sup_err(lc.schedule[k], n, rng));
    }
    bool monotone = true;
    for (std::size_t k = 0; k + 1 < errs.size(); ++k)
        if (errs[k + 1] > errs[k]) monotone = false;
    rep.add_bool("monotone_decreasing", monotone);
    if (lc.threshold) {
        for (std::size_t k = 0; k < errs.size(); ++k) {
            char name[64];
            std::snprintf(name, sizeof(name), "sup_err[eps=%g]",
                          lc.schedule[k]);
            rep.add(name, errs[k], lc.threshold(lc.schedule[k]));
        }
    } else {
        // δ-halving mode: halving the step must shrink the error by a
        // comfortable factor (first-order rate gives ~0.5).
        for (std::size_t k = 0; k + 1 < errs.size(); ++k) {
            char name[64];
            std::snprintf(name, sizeof(name), "halving_ratio[%zu]", k);
            const double ratio = errs[k] > 0.0 ? errs[k + 1] / errs[k] : 0.0;
            rep.add(name, ratio, 0.8);
        }
        rep.add("final_sup_err", errs.back(), 0.1);
        for (std::size_t k = 0; k < errs.size(); ++k) {
            char note[96];
            std::snprintf(note, sizeof(note), "delta=%g sup_err=%.3e",
                          lc.schedule[k], errs[k]);
            rep.notes.push_back(note);
        }
    }
    return rep;
}

} // namespace polymer::maps
