#pragma once

#include "nonloc/grid.hpp"
#include "nonloc/kernel.hpp"
#include "nonloc/quadrature.hpp"

namespace nonloc {

enum class ExtremalSign { Plus, Minus };

/// S+(t) = Lambda t+ - lambda t-,  S-(t) = lambda t+ - Lambda t-.
inline double s_plus(double t, const KernelClass& k) {
    return t >= 0.0 ? k.lambda_hi * t : k.lambda_lo * t;
}
inline double s_minus(double t, const KernelClass& k) {
    return t >= 0.0 ? k.lambda_lo * t : k.lambda_hi * t;
}

/// delta(u, x_i, j h) = u(x_i + jh) + u(x_i - jh) - 2 u(x_i), with
/// exterior-zero extension.
inline double second_difference(const GridFunction& u, int i, int j) {
    return u.at_ext(i + j) + u.at_ext(i - j) - 2.0 * u[i];
}

/// Extremal kernel operator M+-_K (no drift): at every node,
/// sum_j S(delta_j) w_j + S(-2 u_i) tail.
GridFunction eval_extremal(const GridFunction& u, const QuadratureTable& q,
                           const KernelClass& k, ExtremalSign sign);

/// Godunov upwind drift c * Du with one-sided differences and exterior-zero
/// values at boundary-adjacent nodes.
GridFunction upwind_drift(const GridFunction& u, double c);

/// Full Bellman-Isaacs operator: explicit inf-sup (or sup-inf) over control
/// lists, or the closed-form extremal envelopes M+-_L = M+-_K +- c+ |Du|.
GridFunction eval_operator(const GridFunction& u, const ControlFamily& fam,
                           const QuadratureTable& q, const KernelClass& k);

/// Value of the single linear operator (kappa, c) at every node.
GridFunction eval_linear(const GridFunction& u, const Control& c,
                         const QuadratureTable& q);

/// Upper bound on the scheme's dependence on the center value u_i:
/// 2 Lambda (sum w + tail) + c+/h. Step-size and CFL limits derive from it.
double center_dependence_bound(const QuadratureTable& q, const KernelClass& k);

} // namespace nonloc
