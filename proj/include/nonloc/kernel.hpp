#pragma once

#include <cmath>
#include <vector>

#include "nonloc/errors.hpp"

namespace nonloc {

/// Kernel class (lambda, Lambda, s) plus the drift bound c_plus. All kernels
/// are symmetric multiples kappa/|y|^{n+2s} with kappa in [lambda, Lambda].
struct KernelClass {
    double lambda_lo = 1.0;
    double lambda_hi = 1.0;
    double s = 0.5;
    double c_plus = 0.0;

    KernelClass() = default;
    KernelClass(double lam, double Lam, double order, double drift_bound = 0.0)
        : lambda_lo(lam), lambda_hi(Lam), s(order), c_plus(drift_bound) {
        validate();
    }

    void validate() const {
        if (!(lambda_lo > 0.0 && lambda_hi >= lambda_lo))
            throw config_error("kernel: need 0 < lambda <= Lambda");
        if (!(s > 0.0 && s < 1.0)) throw config_error("kernel: order s must lie in (0,1)");
        if (c_plus < 0.0) throw config_error("kernel: drift bound must be nonnegative");
        // a drift term needs s > 1/2 for the operator to be well defined
        if (c_plus > 0.0 && s <= 0.5)
            throw config_error("kernel: drift requires order s > 1/2");
    }
};

/// One linear operator from the family: kernel multiplier kappa and a
/// constant drift coefficient (1D).
struct Control {
    double kappa = 1.0;
    double drift = 0.0;
};

/// inf-sup (or sup-inf) family of controls, or one of the closed-form
/// extremal envelopes over the whole kernel class.
struct ControlFamily {
    enum class Kind { ExtremalPlus, ExtremalMinus, Explicit };
    enum class Order { InfSup, SupInf };

    Kind kind = Kind::ExtremalPlus;
    Order order = Order::InfSup;
    std::vector<std::vector<Control>> controls; // outer x inner, Kind::Explicit only

    static ControlFamily extremal_plus() { return {Kind::ExtremalPlus, Order::InfSup, {}}; }
    static ControlFamily extremal_minus() { return {Kind::ExtremalMinus, Order::InfSup, {}}; }
    static ControlFamily single(Control c) { return {Kind::Explicit, Order::InfSup, {{c}}}; }
    /// Pure sup over one list of controls.
    static ControlFamily sup_of(std::vector<Control> cs) {
        return {Kind::Explicit, Order::InfSup, {std::move(cs)}};
    }
    /// Pure inf over one list of controls.
    static ControlFamily inf_of(std::vector<Control> cs) {
        ControlFamily f{Kind::Explicit, Order::InfSup, {}};
        for (auto& c : cs) f.controls.push_back({c});
        return f;
    }
    static ControlFamily inf_sup(std::vector<std::vector<Control>> lists) {
        if (lists.empty()) throw config_error("family: control lists must be non-empty");
        for (auto& l : lists)
            if (l.empty()) throw config_error("family: control lists must be non-empty");
        return {Kind::Explicit, Order::InfSup, std::move(lists)};
    }

    bool is_extremal() const { return kind != Kind::Explicit; }

    /// True when the family reduces to a single optimization sense (a pure
    /// sup or pure inf after accounting for the order). Extremal envelopes
    /// count as one-sided.
    bool one_sided() const;

    /// The conjugated family F~ with F~(u) = -F(-u): swaps the extremal tags,
    /// or flips the inf-sup order of an explicit family.
    ControlFamily conjugate() const;

    /// Every control must respect the kernel-class bounds.
    void validate(const KernelClass& k) const;
};

inline bool ControlFamily::one_sided() const {
    if (is_extremal()) return true;
    bool outer_trivial = controls.size() == 1;
    bool inner_trivial = true;
    for (auto& l : controls)
        if (l.size() != 1) inner_trivial = false;
    return outer_trivial || inner_trivial;
}

inline ControlFamily ControlFamily::conjugate() const {
    ControlFamily f = *this;
    if (kind == Kind::ExtremalPlus)
        f.kind = Kind::ExtremalMinus;
    else if (kind == Kind::ExtremalMinus)
        f.kind = Kind::ExtremalPlus;
    else
        f.order = (order == Order::InfSup) ? Order::SupInf : Order::InfSup;
    return f;
}

inline void ControlFamily::validate(const KernelClass& k) const {
    if (is_extremal()) return;
    if (controls.empty()) throw config_error("family: control lists must be non-empty");
    for (auto& list : controls) {
        if (list.empty()) throw config_error("family: control lists must be non-empty");
        for (auto& c : list) {
            if (!(c.kappa >= k.lambda_lo && c.kappa <= k.lambda_hi))
                throw config_error("family: control multiplier outside [lambda, Lambda]");
            if (std::abs(c.drift) > k.c_plus * (1.0 + 1e-12))
                throw config_error("family: control drift exceeds the bound c_plus");
        }
    }
}

} // namespace nonloc
