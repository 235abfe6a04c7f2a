#include "nonloc/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nonloc {

namespace {

// sum_j delta_j w_j with the tail folded in through delta_tail = -2 u_i;
// the kernel multiplier is applied by the caller
double kernel_sum(const GridFunction& u, const QuadratureTable& q, int i,
                  double (*sfun)(double, const KernelClass&), const KernelClass& k) {
    double acc = 0.0;
    const int J = q.offset_count();
    for (int j = 1; j <= J; ++j)
        acc += sfun(second_difference(u, i, j), k) * q.weights[j - 1];
    acc += sfun(-2.0 * u[i], k) * q.tail_mass;
    return acc;
}

} // namespace

GridFunction eval_extremal(const GridFunction& u, const QuadratureTable& q,
                           const KernelClass& k, ExtremalSign sign) {
    GridFunction out = zeros_like(u);
    auto sfun = sign == ExtremalSign::Plus ? &s_plus : &s_minus;
    for (int i = 0; i < u.size(); ++i) out[i] = kernel_sum(u, q, i, sfun, k);
    return out;
}

GridFunction upwind_drift(const GridFunction& u, double c) {
    GridFunction out = zeros_like(u);
    const double h = u.grid->h;
    for (int i = 0; i < u.size(); ++i) {
        const double dp = (u.at_ext(i + 1) - u[i]) / h;
        const double dm = (u[i] - u.at_ext(i - 1)) / h;
        out[i] = std::max(c, 0.0) * dp + std::min(c, 0.0) * dm;
    }
    return out;
}

GridFunction eval_linear(const GridFunction& u, const Control& c,
                         const QuadratureTable& q) {
    GridFunction out = zeros_like(u);
    const double h = u.grid->h;
    const int J = q.offset_count();
    for (int i = 0; i < u.size(); ++i) {
        double acc = 0.0;
        for (int j = 1; j <= J; ++j)
            acc += second_difference(u, i, j) * q.weights[j - 1];
        acc += -2.0 * u[i] * q.tail_mass;
        acc *= c.kappa;
        const double dp = (u.at_ext(i + 1) - u[i]) / h;
        const double dm = (u[i] - u.at_ext(i - 1)) / h;
        acc += std::max(c.drift, 0.0) * dp + std::min(c.drift, 0.0) * dm;
        out[i] = acc;
    }
    return out;
}

GridFunction eval_operator(const GridFunction& u, const ControlFamily& fam,
                           const QuadratureTable& q, const KernelClass& k) {
    fam.validate(k);
    const double h = u.grid->h;
    GridFunction out = zeros_like(u);

    if (fam.is_extremal()) {
        const bool plus = fam.kind == ControlFamily::Kind::ExtremalPlus;
        auto sfun = plus ? &s_plus : &s_minus;
        for (int i = 0; i < u.size(); ++i) {
            double acc = kernel_sum(u, q, i, sfun, k);
            if (k.c_plus > 0.0) {
                const double dp = (u.at_ext(i + 1) - u[i]) / h;
                const double dm = (u[i] - u.at_ext(i - 1)) / h;
                if (plus)
                    acc += k.c_plus * std::max({dp, -dm, 0.0});
                else
                    acc -= k.c_plus * std::max({-dp, dm, 0.0});
            }
            out[i] = acc;
        }
        return out;
    }

    const int J = q.offset_count();
    const bool outer_min = fam.order == ControlFamily::Order::InfSup;
    for (int i = 0; i < u.size(); ++i) {
        double base = 0.0;
        for (int j = 1; j <= J; ++j)
            base += second_difference(u, i, j) * q.weights[j - 1];
        base += -2.0 * u[i] * q.tail_mass;
        const double dp = (u.at_ext(i + 1) - u[i]) / h;
        const double dm = (u[i] - u.at_ext(i - 1)) / h;

        double outer = outer_min ? std::numeric_limits<double>::infinity()
                                 : -std::numeric_limits<double>::infinity();
        for (const auto& list : fam.controls) {
            double inner = outer_min ? -std::numeric_limits<double>::infinity()
                                     : std::numeric_limits<double>::infinity();
            for (const Control& c : list) {
                const double v = c.kappa * base + std::max(c.drift, 0.0) * dp +
                                 std::min(c.drift, 0.0) * dm;
                inner = outer_min ? std::max(inner, v) : std::min(inner, v);
            }
            outer = outer_min ? std::min(outer, inner) : std::max(outer, inner);
        }
        out[i] = outer;
    }
    return out;
}

double center_dependence_bound(const QuadratureTable& q, const KernelClass& k) {
    return 2.0 * k.lambda_hi * q.total_mass() + k.c_plus / q.h;
}

} // namespace nonloc
