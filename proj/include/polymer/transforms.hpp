#pragma once

#include <initializer_list>
#include <string>
#include <vector>

namespace polymer::transforms {

/// Scalar primitives appearing in the bijection calculus:
///   identity   x
///   inv        I(x)  = 1/x                 (0,∞) → (0,∞)
///   q          Q(x)  = 1/x − 1             (0,1) → (0,∞)
///   qinv       Q⁻¹(x) = 1/(1+x)            (0,∞) → (0,1)
///   j          J(x)  = 1 − x               (0,1) → (0,1)
///   negate     −x
///   scale      k·x (k > 0)
enum class Prim { identity, inv, q, qinv, j, negate, scale };

struct PrimOp {
    Prim prim = Prim::identity;
    double arg = 1.0;  ///< scale factor for Prim::scale
};

/// x ↦ e^{−x/ε} and its inverse y ↦ −ε ln y.
double s_eps(double x, double eps);
double s_eps_inv(double y, double eps);

/// Apply a primitive at positive temperature.
double apply(const PrimOp& op, double x);

/// Zero-temperature image T^zero = lim_{ε→0} S_ε⁻¹ ∘ T ∘ S_ε:
///   I^zero = −x,  Q^zero = −x (on (0,∞)),  (Q⁻¹)^zero = −(x ∧ 0),
///   J^zero = x ∧ 0 (on (0,∞)),  scale^zero = identity.
double apply_zero(const PrimOp& op, double x);

/// S_ε⁻¹(T(S_ε(x))) evaluated directly in log scale, so large |x|/ε does not
/// overflow. Used by the finite-ε limit probes.
double apply_conjugated(const PrimOp& op, double x, double eps);

/// Composition, applied left-to-right: Chain{f, g} is g ∘ f.
class Chain {
public:
    Chain() = default;
    Chain(std::initializer_list<PrimOp> ops) : ops_(ops) {}
    explicit Chain(std::vector<PrimOp> ops) : ops_(std::move(ops)) {}

    double apply(double x) const;
    double apply_zero(double x) const;
    double apply_conjugated(double x, double eps) const;

    const std::vector<PrimOp>& ops() const { return ops_; }
    std::string to_string() const;

private:
    std::vector<PrimOp> ops_;
};

/// Stable helpers shared with the soft (finite-ε) polymer maps.
/// softmin_eps(ε; s, t) = −ε ln(e^{−s/ε} + e^{−t/ε}); softplus variant
/// sp(ε; t) = ε ln(1 + e^{−t/ε}).
double softmin_eps(double eps, double s, double t);
double softmin_eps(double eps, double s, double t, double u);
double softplus_eps(double eps, double t);

} // namespace polymer::transforms
