// kernel.hpp — the memory kernel K(t) of the non-Markovian amplitude equation:
// closed forms per regime plus adaptive momentum quadrature for cross-checks
// and the general case. The delta part at t = 0 (no-cutoff regimes) is carried
// symbolically as an instantaneous rate, never sampled on a grid.

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "diracbath/model.hpp"
#include "diracbath/quadrature.hpp"

namespace diracbath {

enum class KernelForm { ClosedDelta, ClosedBessel, ClosedSinc, Quadrature };

struct KernelSpec {
    ModelParams params;
    KernelForm form = KernelForm::Quadrature;

    static KernelSpec closed_for(const ModelParams& p) {
        KernelSpec s{p, KernelForm::Quadrature};
        switch (classify_regime(p)) {
            case Regime::MasslessNocut: s.form = KernelForm::ClosedDelta; break;
            case Regime::MassiveNocut:  s.form = KernelForm::ClosedBessel; break;
            case Regime::MasslessCut:   s.form = KernelForm::ClosedSinc; break;
            case Regime::General:       s.form = KernelForm::Quadrature; break;
        }
        return s;
    }

    void validate() const {
        params.validate();
        const Regime r = classify_regime(params);
        switch (form) {
            case KernelForm::ClosedDelta:
                if (r != Regime::MasslessNocut)
                    throw std::invalid_argument("KernelSpec: delta form needs m=0, lambda=inf");
                break;
            case KernelForm::ClosedBessel:
                if (r != Regime::MassiveNocut)
                    throw std::invalid_argument("KernelSpec: Bessel form needs m>0, lambda=inf");
                break;
            case KernelForm::ClosedSinc:
                if (r != Regime::MasslessCut)
                    throw std::invalid_argument("KernelSpec: sinc form needs m=0, finite lambda");
                break;
            case KernelForm::Quadrature:
                if (params.infinite_lambda())
                    throw std::invalid_argument(
                        "KernelSpec: quadrature form needs a finite cutoff (no convergent "
                        "pointwise quadrature at lambda=inf)");
                break;
        }
    }
};

// Weight of the delta part, defined so that Phi'(t) = delta_weight * Phi(t) + ...
// reproduces Phi = exp(-2 pi g^2 t / hbar) exactly in the Markovian limit.
inline double kernel_delta_weight(const ModelParams& p) {
    return p.infinite_lambda() ? -2.0 * pi * p.g2() / p.hbar : 0.0;
}

inline double sinc(double x) {
    return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
}

// Pointwise regular part of K at t > 0 (the delta is excluded by construction).
inline Complex kernel_eval(const KernelSpec& spec, double t) {
    spec.validate();
    if (!(t > 0.0)) throw std::invalid_argument("kernel_eval: t must be > 0");
    const ModelParams& p = spec.params;
    const Complex phase = std::exp(iu * p.omega0 * t / p.hbar);
    switch (spec.form) {
        case KernelForm::ClosedDelta:
            return Complex{0.0, 0.0};
        case KernelForm::ClosedBessel:
            return (2.0 * pi * p.g2() / (p.hbar * p.hbar)) * phase * p.m *
                   std::cyl_bessel_j(1.0, p.m * t / p.hbar);
        case KernelForm::ClosedSinc:
            return -(4.0 * p.g2() / p.hbar) * phase * (p.lambda / p.hbar) *
                   sinc(p.lambda * t / p.hbar);
        case KernelForm::Quadrature: {
            // -(2 g^2/hbar^2) e^{i omega0 t/hbar} Int_{-L}^{L} cos(omega_p t/hbar) dp,
            // panels split at the zeros of the cosine phase.
            const double th = t / p.hbar;
            std::vector<double> edges{0.0, p.lambda};
            for (int k = 1;; ++k) {
                const double w = k * pi / th;  // omega_p value at a cosine zero shifted by pi/2
                if (w * w <= p.m * p.m) continue;
                const double pk = std::sqrt(w * w - p.m * p.m);
                if (pk >= p.lambda) break;
                edges.push_back(pk);
                if (edges.size() > 4000) break;
            }
            auto f = [&](double q) {
                return Complex{std::cos(std::sqrt(q * q + p.m * p.m) * th), 0.0};
            };
            auto r = quad::integrate_adaptive(f, edges, 1e-12 * p.lambda, 12);
            return -(2.0 * p.g2() / (p.hbar * p.hbar)) * phase * 2.0 * r.value;
        }
    }
    throw std::logic_error("kernel_eval: unreachable");
}

// Int_0^t ds Int_0^{t-s} du K(u) = delta_weight * t + Int_0^t (t-u) K_reg(u) du.
inline Complex kernel_double_integral(const KernelSpec& spec, double t) {
    spec.validate();
    if (t < 0.0) throw std::invalid_argument("kernel_double_integral: t must be >= 0");
    if (t == 0.0) return {};
    const ModelParams& p = spec.params;
    Complex total = kernel_delta_weight(p) * t;
    if (spec.form == KernelForm::ClosedDelta) return total;
    auto f = [&](double u) { return (t - u) * kernel_eval(spec, u); };
    const double rate = std::max({p.omega0, p.m, p.infinite_lambda() ? 0.0 : p.lambda}) / p.hbar;
    auto edges = quad::oscillation_edges(0.0, t, rate, t);
    auto r = quad::integrate_adaptive(f, edges, 1e-13 * std::max(1.0, t * t), 12);
    return total + r.value;
}

// Taylor coefficients k0..k3 of the regular kernel part about t = 0, expressed
// in dimensionless time u = g^2 t / hbar (used by the solver start-up steps):
// K_reg_dimless(u) = k0 + k1 u + k2 u^2 + k3 u^3 + O(u^4).
inline std::array<Complex, 4> kernel_taylor_dimensionless(const KernelSpec& spec) {
    spec.validate();
    const ModelParams& p = spec.params;
    const double A = p.a_ratio();
    const Complex e1 = iu * A;                 // expansion of e^{iAu}
    const Complex e2 = -0.5 * A * A;
    const Complex e3 = -iu * A * A * A / 6.0;
    switch (spec.form) {
        case KernelForm::ClosedDelta:
            return {Complex{}, Complex{}, Complex{}, Complex{}};
        case KernelForm::ClosedBessel: {
            // 2 pi cm J1(cm u) e^{iAu} = 2 pi cm (cm u/2 - (cm u)^3/16) e^{iAu}
            const double cm = p.cm_ratio();
            const double b1 = pi * cm * cm;            // u coefficient
            const double b3 = -pi * cm * cm * cm * cm / 8.0;  // u^3 coefficient
            return {Complex{}, Complex{b1, 0.0}, b1 * e1, Complex{b3, 0.0} + b1 * e2};
        }
        case KernelForm::ClosedSinc: {
            // -4 e^{iAu} sin(cl u)/u = -4 cl (1 - (cl u)^2/6) e^{iAu}
            const double cl = p.cl_ratio();
            const double s0 = -4.0 * cl;
            const double s2 = 4.0 * cl * cl * cl / 6.0;
            return {Complex{s0, 0.0}, s0 * e1, Complex{s2, 0.0} + s0 * e2, s2 * e1 + s0 * e3};
        }
        case KernelForm::Quadrature: {
            // -2 e^{iAu} Int_{-cl}^{cl} cos(w(q) u) dq with w = sqrt(q^2 + cm^2):
            // moments M0 = 2 cl, M2 = 2(cl^3/3 + cm^2 cl).
            const double cl = p.cl_ratio(), cm = p.cm_ratio();
            const double M0 = 2.0 * cl;
            const double M2 = 2.0 * (cl * cl * cl / 3.0 + cm * cm * cl);
            const Complex k0{-2.0 * M0, 0.0};
            return {k0, k0 * e1, Complex{M2, 0.0} + k0 * e2, M2 * e1 + k0 * e3};
        }
    }
    throw std::logic_error("kernel_taylor: unreachable");
}

}  // namespace diracbath
