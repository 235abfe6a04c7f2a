#include "nonloc/beta.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace nonloc {

double psi_beta(double t, double beta) {
    const double a = 1.0 + t;
    const double b = 1.0 - t;
    double v = -2.0;
    if (a > 0.0) v += std::pow(a, beta);
    if (b > 0.0) v += std::pow(b, beta);
    return v;
}

namespace {

struct AdaptiveQuad {
    std::function<double(double)> f;
    double tol;
    int max_depth = 40;
    double achieved = 0.0; // worst accepted panel error
    long evals = 0;

    double simpson(double a, double fa, double m, double fm, double b, double fb) const {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    }

    double run(double a, double b) {
        const double m = 0.5 * (a + b);
        const double fa = f(a), fm = f(m), fb = f(b);
        evals += 3;
        return recurse(a, fa, m, fm, b, fb, simpson(a, fa, m, fm, b, fb), tol, max_depth);
    }

    double recurse(double a, double fa, double m, double fm, double b, double fb,
                   double whole, double eps, int depth) {
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = f(lm), frm = f(rm);
        evals += 2;
        const double left = simpson(a, fa, lm, flm, m, fm);
        const double right = simpson(m, fm, rm, frm, b, fb);
        const double err = (left + right - whole) / 15.0;
        if (depth <= 0 || std::abs(err) <= eps) {
            achieved = std::max(achieved, std::abs(err));
            if (depth <= 0 && std::abs(err) > eps)
                throw accuracy_error("c_constant: quadrature tolerance unreachable", std::abs(err));
            return left + right + err;
        }
        // the panel budget is deliberately not halved: near the algebraic
        // kinks of psi the local error decays like w^{1+beta}, and a halved
        // budget would chase it forever; the Richardson term added above
        // keeps the accepted panels far below their nominal estimate
        return recurse(a, fa, lm, flm, m, fm, left, eps, depth - 1) +
               recurse(m, fm, rm, frm, b, fb, right, eps, depth - 1);
    }
};

// int_0^eps S(psi) t^{-1-2s} dt via the even Taylor series of psi; the sign
// of psi on (0,1) is the sign of beta-1, so the S multiplier is constant.
double near_zero_integral(double eps, double beta, double s, double mult) {
    double acc = 0.0;
    double coeff = 2.0; // running 2 * binomial(beta, 2k)
    for (int k = 1; k <= 60; ++k) {
        coeff *= (beta - (2 * k - 2)) * (beta - (2 * k - 1)) / ((2 * k - 1) * (2 * k));
        const double term = coeff * std::pow(eps, 2.0 * k - 2.0 * s) / (2.0 * k - 2.0 * s);
        acc += term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(acc)) && k >= 4) break;
    }
    return mult * acc;
}

// int_T^inf S(psi) t^{-1-2s} dt in closed form: for t > max(1, t*) one has
// psi = (1+t)^beta - 2 > 0 (the (1-t)+ branch is dead), and the binomial
// series (1+t)^beta = sum_k C(beta,k) t^{beta-k} integrates termwise with
// T^{-k} convergence. Truncation at T would instead decay like T^{beta-2s},
// which is hopeless for beta near 2s.
double tail_integral(double T, double beta, double s, double mult) {
    double acc = -2.0 * std::pow(T, -2.0 * s) / (2.0 * s); // the "-2" part of psi
    double coeff = 1.0; // running binomial(beta, k)
    for (int k = 0; k <= 120; ++k) {
        if (k > 0) coeff *= (beta - (k - 1)) / k;
        const double term = coeff * std::pow(T, beta - k - 2.0 * s) / (k + 2.0 * s - beta);
        acc += term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(acc)) && k >= 4) break;
    }
    return mult * acc;
}

} // namespace

double c_constant(double beta, const KernelClass& k, ExtremalSign sign, double tol) {
    if (!(beta > 0.0 && beta < 2.0 * k.s))
        throw config_error("c_constant: beta must lie in (0, 2s)");
    if (!(tol > 0.0)) throw config_error("c_constant: tolerance must be positive");
    const double s = k.s;
    // S multipliers by the sign of the argument
    const double m_pos = sign == ExtremalSign::Plus ? k.lambda_hi : k.lambda_lo;
    const double m_neg = sign == ExtremalSign::Plus ? k.lambda_lo : k.lambda_hi;

    auto g = [&](double t) {
        const double v = psi_beta(t, beta);
        return (v >= 0.0 ? m_pos : m_neg) * v * std::pow(t, -1.0 - 2.0 * s);
    };

    // zero crossing of psi: 2^{1/beta}-1 when beta < 1, none past 0 otherwise
    const double tstar = beta < 1.0 ? std::pow(2.0, 1.0 / beta) - 1.0 : 1.0;

    const double T = 10.0; // series tail converges like T^{-k} past here

    const double eps = std::min(1e-3, 0.25 * tstar);
    const double near_mult = beta > 1.0 ? m_pos : (beta < 1.0 ? m_neg : 0.0);
    double result = near_zero_integral(eps, beta, s, near_mult);
    if (tstar > T) {
        // small beta: the sign flip at t* = 2^{1/beta}-1 sits far out in the
        // tail, so split the closed form there (I(x) below is sign-free)
        result += (tail_integral(T, beta, s, 1.0) - tail_integral(tstar, beta, s, 1.0)) * m_neg;
        result += tail_integral(tstar, beta, s, m_pos);
    } else {
        result += tail_integral(T, beta, s, m_pos);
    }

    std::vector<double> pts{eps, 1.0, std::clamp(tstar, 1.0, T), T};
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    AdaptiveQuad quad{g, 0.25 * tol / static_cast<double>(pts.size())};
    for (size_t i = 0; i + 1 < pts.size(); ++i) result += quad.run(pts[i], pts[i + 1]);

    return 2.0 * result; // psi is even in t
}

double find_beta_root(const KernelClass& k, ExtremalSign sign, double tol) {
    if (!(tol > 0.0)) throw config_error("find_beta_root: tolerance must be positive");
    const double two_s = 2.0 * k.s;
    const double qtol = std::min(1e-10, 0.01 * tol);
    auto c = [&](double b) { return c_constant(b, k, sign, qtol); };

    // geometric sampling from both ends of (0, 2s)
    std::vector<double> probes;
    for (double f = 0.02; f < 0.5; f *= 1.7) probes.push_back(f * two_s);
    probes.push_back(0.5 * two_s);
    for (double f = 0.02; f < 0.5; f *= 1.7) probes.push_back((1.0 - f) * two_s);
    std::sort(probes.begin(), probes.end());

    double lo = 0.0, hi = 0.0, clo = 0.0, chi = 0.0;
    bool have = false;
    double prev_b = probes.front(), prev_c = c(prev_b);
    for (size_t i = 1; i < probes.size() && !have; ++i) {
        const double b = probes[i], cb = c(b);
        if (prev_c < 0.0 && cb >= 0.0) {
            lo = prev_b; clo = prev_c; hi = b; chi = cb; have = true;
        }
        prev_b = b; prev_c = cb;
    }
    if (!have)
        throw convergence_error("find_beta_root: no sign change of c(beta) in (0, 2s)");

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double cm = c(mid);
        if (cm < 0.0) { lo = mid; clo = cm; }
        else { hi = mid; chi = cm; }
    }
    (void)clo; (void)chi;
    return 0.5 * (lo + hi);
}

BetaProfile profile(const KernelClass& k, int n_samples) {
    if (n_samples < 2) throw config_error("profile: need at least 2 samples");
    BetaProfile p;
    p.s = k.s;
    p.lambda_lo = k.lambda_lo;
    p.lambda_hi = k.lambda_hi;
    const double b0 = 0.02 * 2.0 * k.s, b1 = 0.98 * 2.0 * k.s;
    for (int i = 0; i < n_samples; ++i) {
        const double b = b0 + (b1 - b0) * i / (n_samples - 1);
        p.samples.push_back({b, c_constant(b, k, ExtremalSign::Plus),
                             c_constant(b, k, ExtremalSign::Minus)});
    }
    p.beta1 = find_beta_root(k, ExtremalSign::Plus);
    p.beta2 = find_beta_root(k, ExtremalSign::Minus);
    return p;
}

} // namespace nonloc
