#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "polymer/report.hpp"
#include "polymer/rng.hpp"

namespace polymer::maps {

struct P2 {
    double x = 0.0;
    double y = 0.0;
};

struct T3 {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

/// The five positive-temperature models R_(α,β), named by their (α,β) row.
enum class Model { R01, R10, Rm11, R11, R1m1 };

double model_alpha(Model m);
double model_beta(Model m);
std::string model_name(Model m);

/// R_(α,β)(a,b,c) = ((ac+αb+βab)/c, (ac+αb+βab)/b).
P2 r_ab(double alpha, double beta, const T3& t);
inline P2 r_model(Model m, const T3& t) {
    return r_ab(model_alpha(m), model_beta(m), t);
}

/// F_(α,β)(x,y) = (x(y−α)/(y+βx), y/x) and its inverse
/// F⁻¹(u,v) = ((u(v+β)+α)/v, u(v+β)+α).
P2 f_ab(double alpha, double beta, const P2& p);
P2 f_ab_inv(double alpha, double beta, const P2& p);

/// R̃_(1,−1)(a,b,c) = (1/(1+a) + ab/((1+a)c), c/((1+a)b) + a/(1+a)),
/// equal to R_(1,−1)∘(Q⁻¹×I_d×I_d).
P2 rt_1m1(const T3& t);

// -- basic bijections -------------------------------------------------------
P2 f_gam_bep(const P2& p);      ///< (x+y, x/y)
P2 f_gam_bep_inv(const P2& p);  ///< (xy/(1+y), x/(1+y))
P2 f_bep_bep(const P2& p);      ///< ((1+x)/y, (1+x+y)/(xy)); involution
P2 f_e_al(const P2& p);         ///< (x∧y, x−y)
P2 f_e_al_inv(const P2& p);     ///< (x+y−(0∧y), x−(0∧y))
P2 f_al_al(const P2& p);        ///< ((0∧x)−y, (0∧x∧y)−x−y); involution
P2 f_zero_01(const P2& p);      ///< (x∨y, y−x)
P2 f_zero_01_inv(const P2& p);

// -- zero-temperature recursion maps ----------------------------------------
P2 rzero_01(const T3& t);   ///< (min{a, a+b−c}, min{a+c−b, a}) on ℝ³
P2 rzero_10(const T3& t);   ///< (min{a, b−c}, min{a+c−b, 0})
P2 rzero_11(const T3& t);   ///< u(a)=a, v(a)=a∧0
P2 rtzero_1m1(const T3& t); ///< u(a)=−(0∧a), v(a)=a∨0

// -- finite-ε conjugations S_ε⁻¹∘(map)∘S_ε, evaluated in log scale ----------
P2 soft_rzero_01(double eps, const T3& t);
P2 soft_rzero_10(double eps, const T3& t);
P2 soft_rzero_11(double eps, const T3& t);
P2 soft_rtzero_1m1(double eps, const T3& t);
P2 soft_f_gam_bep(double eps, const P2& p);
P2 soft_f_gam_bep_inv(double eps, const P2& p);
P2 soft_f_bep_bep(double eps, const P2& p);

// -- F̄ construction ---------------------------------------------------------
using Map2 = std::function<P2(const P2&)>;

/// (d,g) = F(b,c); (e,f) = F⁻¹(a,g); returns (d,e,f). An involution, whose
/// (2,3) projection reconstructs R.
T3 fbar(const Map2& f, const Map2& f_inv, const T3& t);
P2 fbar_23(const Map2& f, const Map2& f_inv, const T3& t);

/// In-domain sample of (a,b,c) ∈ J₁×I₁×I₂ for a model, and (x,y) ∈ I₁×I₂.
T3 sample_r_domain(Model m, Rng& rng);
P2 sample_f_domain(Model m, Rng& rng);
T3 sample_rt_1m1_domain(Rng& rng);

// -- registries --------------------------------------------------------------
/// Pointwise identity registry: each case checks sup relative residual over n
/// random in-domain points against tol (default 1e-12).
TestReport run_identity(const std::string& key, std::size_t n,
                        std::uint64_t seed, double tol = 1e-12);
std::vector<std::string> identity_keys();

/// Limit-probe registry (ε-conjugation limits and δ-scaling limits): reports
/// the sup-error per schedule entry plus the monotonicity verdict.
TestReport run_limit(const std::string& key, std::size_t n,
                     std::uint64_t seed);
std::vector<std::string> limit_keys();

} // namespace polymer::maps
