#include "nonloc/oracle.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace {

// local copy of the integrand profile, kept separate from the primary path;
// below |t| = 1/4 the direct form cancels to rounding noise (the profile is
// O(t^2)), so switch to the even binomial series there
double psi_beta_local(double t, double beta) {
    if (std::abs(t) < 0.25) {
        double acc = 0.0, coeff = 2.0, t2 = t * t, tp = 1.0;
        for (int k = 1; k <= 40; ++k) {
            coeff *= (beta - (2 * k - 2)) * (beta - (2 * k - 1)) / ((2 * k - 1) * (2 * k));
            tp *= t2;
            const double term = coeff * tp;
            acc += term;
            if (std::abs(term) < 1e-20 * (1.0 + std::abs(acc)) && k >= 3) break;
        }
        return acc;
    }
    double v = -2.0;
    if (t > -1.0) v += std::exp(beta * std::log1p(t));
    if (t < 1.0) v += std::exp(beta * std::log1p(-t));
    return v;
}

} // namespace

namespace nonloc {
namespace oracle {

Eigen::MatrixXd assemble_dense(const Control& c, const std::shared_ptr<const Grid>& grid,
                               const QuadratureTable& q, const KernelClass& k) {
    if (grid->domain.dim != 1)
        throw config_error("assemble_dense: 1D only");
    if (std::abs(c.drift) > k.c_plus * (1.0 + 1e-12))
        throw config_error("assemble_dense: control drift exceeds c_plus");
    const int n = grid->node_count();
    const double h = grid->h;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        A(i, i) = -2.0 * c.kappa * q.total_mass();
        for (int j = 1; j <= q.offset_count(); ++j) {
            const double w = c.kappa * q.weights[j - 1];
            if (i + j < n) A(i, i + j) += w;
            if (i - j >= 0) A(i, i - j) += w;
        }
        const double cp = std::max(c.drift, 0.0) / h;
        const double cm = std::min(c.drift, 0.0) / h;
        A(i, i) += -cp + cm;
        if (i + 1 < n) A(i, i + 1) += cp;
        if (i - 1 >= 0) A(i, i - 1) += -cm;
    }
    return A;
}

DenseEigenResult dense_principal_eigen(const Eigen::MatrixXd& A, double tol, int max_iters) {
    const int n = static_cast<int>(A.rows());
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(-A);
    Eigen::VectorXd u = Eigen::VectorXd::Ones(n);
    double lambda = 0.0;
    int it = 0;
    for (; it < max_iters; ++it) {
        const Eigen::VectorXd f = u / u.cwiseAbs().maxCoeff();
        u = lu.solve(f);
        // bracket from the ratio of rhs to solution
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (int i = 0; i < n; ++i) {
            if (u(i) <= 0.0) { lo = -lo; break; } // not yet in the positive cone
            const double r = f(i) / u(i);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        if (std::isfinite(lo) && hi - lo < tol) {
            lambda = 0.5 * (lo + hi);
            break;
        }
        if (it + 1 == max_iters)
            throw convergence_error("dense_principal_eigen: no convergence");
    }
    Eigen::VectorXd phi = u / u.cwiseAbs().maxCoeff();
    return {lambda, phi, it + 1};
}

namespace {

// tanh-sinh nodes on (-1,1) mapped to (a,b). The distance to the nearer
// endpoint is computed from exp(-2z) directly -- forming mid + half*u would
// round it away and wreck endpoint singularities.
double tanh_sinh(const std::function<double(double)>& f, double a, double b, double tol) {
    const double half = 0.5 * (b - a);
    double prev = 0.0;
    double result = 0.0;
    for (int level = 3; level <= 12; ++level) {
        const double hstep = 1.0 / (1 << (level - 3)) * 0.5;
        double sum = 0.0;
        const double tmax = 6.5;
        const int nmax = static_cast<int>(tmax / hstep);
        for (int i = -nmax; i <= nmax; ++i) {
            const double t = i * hstep;
            const double z = 0.5 * M_PI * std::sinh(t);
            const double e2 = std::exp(-2.0 * std::abs(z));
            const double gap = 2.0 * e2 / (1.0 + e2); // 1 - |u|
            if (gap == 0.0) continue;
            const double w = 0.5 * M_PI * std::cosh(t) / std::pow(std::cosh(z), 2);
            // place the node from whichever endpoint is nearer
            const double x = t >= 0.0 ? b - half * gap : a + half * gap;
            if (x <= a || x >= b) continue;
            const double fx = f(x);
            if (std::isfinite(fx)) sum += w * fx;
        }
        result = sum * half * hstep;
        if (level > 4 &&
            std::abs(result - prev) < 0.5 * tol * std::max(1.0, std::abs(result)))
            return result;
        prev = result;
    }
    return result;
}

} // namespace

double quadrature_oracle(double beta, const KernelClass& k, ExtremalSign sign, double tol) {
    if (!(beta > 0.0 && beta < 2.0 * k.s))
        throw config_error("quadrature_oracle: beta must lie in (0, 2s)");
    const double s = k.s;
    const double m_pos = sign == ExtremalSign::Plus ? k.lambda_hi : k.lambda_lo;
    const double m_neg = sign == ExtremalSign::Plus ? k.lambda_lo : k.lambda_hi;
    auto g = [&](double t) {
        const double v = psi_beta_local(t, beta);
        return (v >= 0.0 ? m_pos : m_neg) * v * std::pow(t, -1.0 - 2.0 * s);
    };
    // locate the sign change of psi on [1, 8] by bisection (psi(1) <= 0 for
    // beta <= 1, and psi grows without bound)
    double split = 1.0;
    if (psi_beta_local(1.0, beta) < 0.0) {
        double lo = 1.0, hi = 8.0;
        while (psi_beta_local(hi, beta) < 0.0) hi *= 2.0;
        for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
            const double m = 0.5 * (lo + hi);
            (psi_beta_local(m, beta) < 0.0 ? lo : hi) = m;
        }
        split = 0.5 * (lo + hi);
    }
    const double piece_tol = 0.2 * tol;
    double acc = 0.0;
    acc += tanh_sinh(g, 0.0, 1.0, piece_tol);
    if (split > 1.0) acc += tanh_sinh(g, 1.0, split, piece_tol);
    // map (split, inf) to (0, split^-p) via w = t^-p with p = 2s - beta; the
    // transformed integrand tends to m_pos/p at w = 0 instead of blowing up
    const double p = 2.0 * s - beta;
    auto far = [&](double w) {
        const double t = std::pow(w, -1.0 / p);
        // psi(t) t^-beta for t > 1, with both terms formed stably
        const double scaled =
            std::exp(beta * std::log1p(1.0 / t)) - 2.0 * std::exp(-beta * std::log(t));
        return (scaled >= 0.0 ? m_pos : m_neg) * scaled / p;
    };
    acc += tanh_sinh(far, 0.0, std::pow(split, -p), piece_tol);
    return 2.0 * acc;
}

} // namespace oracle
} // namespace nonloc
