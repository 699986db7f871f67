#include "polymer/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace polymer::transforms {

double s_eps(double x, double eps) { return std::exp(-x / eps); }

double s_eps_inv(double y, double eps) {
    if (!(y > 0.0)) throw std::domain_error("s_eps_inv: y must be > 0");
    return -eps * std::log(y);
}

double apply(const PrimOp& op, double x) {
    switch (op.prim) {
        case Prim::identity: return x;
        case Prim::inv: return 1.0 / x;
        case Prim::q: return 1.0 / x - 1.0;
        case Prim::qinv: return 1.0 / (1.0 + x);
        case Prim::j: return 1.0 - x;
        case Prim::negate: return -x;
        case Prim::scale: return op.arg * x;
    }
    return x;
}

double apply_zero(const PrimOp& op, double x) {
    switch (op.prim) {
        case Prim::identity: return x;
        case Prim::inv: return -x;
        case Prim::q: return -x;
        case Prim::qinv: return -std::min(x, 0.0);
        case Prim::j: return std::min(x, 0.0);
        case Prim::negate: return -x;
        case Prim::scale: return x;  // e^{-x/ε} scaling vanishes as ε → 0
    }
    return x;
}

double softplus_eps(double eps, double t) {
    // ε ln(1 + e^{−t/ε}), stable for both signs of t.
    if (t >= 0.0) return eps * std::log1p(std::exp(-t / eps));
    return -t + eps * std::log1p(std::exp(t / eps));
}

double softmin_eps(double eps, double s, double t) {
    const double m = std::min(s, t);
    return m - eps * std::log1p(std::exp(-std::fabs(s - t) / eps));
}

double softmin_eps(double eps, double s, double t, double u) {
    const double m = std::min({s, t, u});
    const double sum = std::exp(-(s - m) / eps) + std::exp(-(t - m) / eps) +
                       std::exp(-(u - m) / eps);
    return m - eps * std::log(sum);
}

double apply_conjugated(const PrimOp& op, double x, double eps) {
    // Value e^{−x/ε} is tracked through −ε ln(·), never materialized.
    switch (op.prim) {
        case Prim::identity: return x;
        case Prim::inv: return -x;
        case Prim::q:
            // −ε ln(e^{x/ε} − 1) = −x − ε ln(1 − e^{−x/ε}), needs x > 0.
            if (!(x > 0.0)) throw std::domain_error("Q conjugated: x must be > 0");
            return -x - eps * std::log1p(-std::exp(-x / eps));
        case Prim::qinv:
            // ε ln(1 + e^{−x/ε})
            return softplus_eps(eps, x);
        case Prim::j:
            // −ε ln(1 − e^{−x/ε}), needs x > 0.
            if (!(x > 0.0)) throw std::domain_error("J conjugated: x must be > 0");
            return -eps * std::log1p(-std::exp(-x / eps));
        case Prim::negate:
            throw std::domain_error("negate has no conjugated form on (0,∞)");
        case Prim::scale:
            return x - eps * std::log(op.arg);
    }
    return x;
}

double Chain::apply(double x) const {
    for (const auto& op : ops_) x = transforms::apply(op, x);
    return x;
}

double Chain::apply_zero(double x) const {
    for (const auto& op : ops_) x = transforms::apply_zero(op, x);
    return x;
}

double Chain::apply_conjugated(double x, double eps) const {
    for (const auto& op : ops_) x = transforms::apply_conjugated(op, x, eps);
    return x;
}

std::string Chain::to_string() const {
    std::ostringstream os;
    bool first = true;
    // Composition reads right-to-left: last op applied is written first.
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
        if (!first) os << "∘";
        first = false;
        switch (it->prim) {
            case Prim::identity: os << "id"; break;
            case Prim::inv: os << "I"; break;
            case Prim::q: os << "Q"; break;
            case Prim::qinv: os << "Q⁻¹"; break;
            case Prim::j: os << "J"; break;
            case Prim::negate: os << "neg"; break;
            case Prim::scale: os << "scale(" << it->arg << ")"; break;
        }
    }
    if (first) os << "id";
    return os.str();
}

} // namespace polymer::transforms
