// volterra.hpp — time-domain oracles for the amplitude Phi(t):
//  * solve_volterra: the integro-differential equation recast as a second-kind
//    Volterra integral equation for Psi = e^{-W tau} Phi, where W carries the
//    delta part of the kernel exactly (integrating factor).
//  * propagate_discretized: spectral propagation of the full coupled
//    system+modes Hamiltonian on a uniform momentum grid.

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "diracbath/kernel.hpp"
#include "diracbath/linalg.hpp"
#include "diracbath/model.hpp"
#include "diracbath/quadrature.hpp"

namespace diracbath {

enum class VolterraScheme { Trapezoid, Simpson };

struct VolterraConfig {
    double dt = 1e-3;       // physical step
    double t_max = 10.0;    // physical horizon
    VolterraScheme scheme = VolterraScheme::Trapezoid;
    bool refine = true;     // step-halving error estimate (dt, dt/2, dt/4)

    void validate(const ModelParams& p) const {
        if (!(dt > 0.0) || !(t_max > 0.0) || dt > t_max)
            throw std::invalid_argument("VolterraConfig: need 0 < dt <= t_max");
        const double rate =
            std::max({p.omega0, p.m, p.infinite_lambda() ? 0.0 : p.lambda, 1e-30}) / p.hbar;
        if (dt * rate > 0.2)
            throw std::invalid_argument(
                "VolterraConfig: dt too coarse for the fastest kernel oscillation "
                "(need dt*max(omega0,m,lambda)/hbar <= 0.2)");
    }
};

namespace detail {

// Second-kind VIE solve on a uniform dimensionless grid:
//   Psi(tau) = 1 + Int_0^tau Rk(tau - s) Psi(s) ds,  Rk(u) = Int_0^u kappa.
// kappa(u) = K_reg_dimless(u) * e^{-W u} with W the dimensionless delta rate.
template <class Kappa>
std::vector<Complex> vie_solve(const Kappa& kappa, const std::array<Complex, 4>& kt,
                               double dt, std::size_t n, VolterraScheme scheme) {
    // cumulative kernel integral on the grid, each panel by 7-point Gauss
    std::vector<Complex> R(n + 1, Complex{});
    const auto& gl = quad::gauss_legendre(7);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = i * dt, half = 0.5 * dt, mid = a + half;
        Complex s{};
        for (std::size_t q = 0; q < gl.x.size(); ++q) s += gl.w[q] * kappa(mid + half * gl.x[q]);
        R[i + 1] = R[i] + half * s;
    }

    // Taylor of Psi about 0 from the kernel Taylor (start-up points for Simpson)
    const Complex c2 = kt[0] / 2.0;
    const Complex c3 = kt[1] / 6.0;
    const Complex c4 = (2.0 * kt[2] + kt[0] * kt[0]) / 24.0;
    const Complex c5 = (6.0 * kt[3] + 4.0 * kt[0] * kt[1]) / 120.0;
    auto taylor = [&](double u) {
        return 1.0 + u * u * (c2 + u * (c3 + u * (c4 + u * c5)));
    };

    std::vector<Complex> Psi(n + 1);
    Psi[0] = 1.0;
    std::vector<double> w(n + 1);
    for (std::size_t k = 1; k <= n; ++k) {
        if (scheme == VolterraScheme::Simpson && k <= 3) {
            Psi[k] = taylor(k * dt);
            continue;
        }
        // composite weights on [0, tau_k]; the j = k term vanishes (R[0] = 0)
        if (scheme == VolterraScheme::Trapezoid) {
            std::fill(w.begin(), w.begin() + k + 1, 1.0);
            w[0] = w[k] = 0.5;
        } else {
            std::fill(w.begin(), w.begin() + k + 1, 0.0);
            std::size_t simpson_end = (k % 2 == 0) ? k : k - 3;
            for (std::size_t j = 0; j <= simpson_end; ++j) {
                if (j == 0 || j == simpson_end) w[j] = 1.0 / 3.0;
                else w[j] = (j % 2 == 1) ? 4.0 / 3.0 : 2.0 / 3.0;
            }
            if (simpson_end == 0) w[0] = 0.0;
            if (k % 2 == 1) {
                w[k - 3] += 3.0 / 8.0;
                w[k - 2] += 9.0 / 8.0;
                w[k - 1] += 9.0 / 8.0;
                w[k] += 3.0 / 8.0;
            }
        }
        Complex s{};
        for (std::size_t j = 0; j < k; ++j) s += w[j] * R[k - j] * Psi[j];
        Psi[k] = 1.0 + dt * s;
    }
    return Psi;
}

struct DimlessKernel {
    KernelSpec spec;
    double W;  // dimensionless delta rate (= -2 pi for no-cutoff regimes)

    Complex operator()(double u) const {
        const ModelParams& p = spec.params;
        const double t = p.t_phys(u);
        const double scale = (p.hbar / p.g2()) * (p.hbar / p.g2());
        Complex k = (u <= 0.0) ? dimless_taylor_at0() : scale * kernel_eval(spec, t);
        return k * std::exp(-W * u);
    }
    Complex dimless_taylor_at0() const { return kernel_taylor_dimensionless(spec)[0]; }
};

}  // namespace detail

// Direct integration of the amplitude equation; returns Phi(t) (interaction
// picture) on the grid t_k = k*dt with Phi(0) = 1 and a step-halving error bound.
inline ComplexSeries solve_volterra(const ModelParams& p, const VolterraConfig& cfg,
                                    const KernelSpec& spec) {
    cfg.validate(p);
    spec.validate();

    const double W = kernel_delta_weight(p) * p.hbar / p.g2();  // dimensionless
    const double tau_max = p.tau(cfg.t_max);
    if (-W * tau_max > 600.0)
        throw std::invalid_argument("solve_volterra: horizon too long for the integrating factor");

    const std::size_t n_out = std::size_t(std::llround(cfg.t_max / cfg.dt));
    const double dtau = tau_max / double(n_out);

    detail::DimlessKernel kappa{spec, W};
    auto kt_raw = kernel_taylor_dimensionless(spec);
    // compose with e^{-W u}: (k0 + k1 u + k2 u^2 + k3 u^3)(1 - W u + W^2 u^2/2 - ...)
    std::array<Complex, 4> kt{
        kt_raw[0],
        kt_raw[1] - W * kt_raw[0],
        kt_raw[2] - W * kt_raw[1] + 0.5 * W * W * kt_raw[0],
        kt_raw[3] - W * kt_raw[2] + 0.5 * W * W * kt_raw[1] - W * W * W / 6.0 * kt_raw[0]};

    auto run = [&](int refine_factor) {
        return detail::vie_solve(kappa, kt, dtau / refine_factor, n_out * refine_factor,
                                 cfg.scheme);
    };

    std::vector<Complex> best = run(cfg.refine ? 4 : 1);
    double err = 0.0;
    if (cfg.refine) {
        const auto s1 = run(1);
        const auto s2 = run(2);
        double est1 = 0.0, est2 = 0.0;
        for (std::size_t k = 0; k <= n_out; ++k) {
            est1 = std::max(est1, std::abs(s1[k] - s2[2 * k]));
            est2 = std::max(est2, std::abs(s2[2 * k] - best[4 * k]));
        }
        if (est2 > est1 && est1 > 1e-13)
            throw std::runtime_error("solve_volterra: step-halving estimate not decreasing");
        err = est2;
    }

    ComplexSeries out;
    out.grid.scaling = TimeScaling::Physical;
    out.grid.points.resize(n_out + 1);
    out.values.resize(n_out + 1);
    out.picture = Picture::Interaction;
    out.error_estimate = err;
    const int rf = cfg.refine ? 4 : 1;
    for (std::size_t k = 0; k <= n_out; ++k) {
        const double tau = k * dtau;
        out.grid.points[k] = p.t_phys(tau);
        out.values[k] = std::exp(W * tau) * best[k * rf];
    }
    out.grid.points[0] = 0.0;
    return out;
}

inline ComplexSeries solve_volterra(const ModelParams& p, const VolterraConfig& cfg) {
    return solve_volterra(p, cfg, KernelSpec::closed_for(p));
}

// ---------------------------------------------------------------------------

struct DiscretizedField {
    std::vector<double> p_grid;     // momenta
    std::vector<double> weights;    // trapezoid quadrature weights
    std::vector<Complex> phi_p;     // particle-branch amplitudes (Schrodinger)
    std::vector<Complex> psi_p;     // antiparticle-branch amplitudes
    Complex phi{};                  // system amplitude (Schrodinger)

    double norm() const {
        double s = std::norm(phi);
        for (std::size_t j = 0; j < p_grid.size(); ++j)
            s += weights[j] * (std::norm(phi_p[j]) + std::norm(psi_p[j]));
        return s;
    }
};

inline double effective_cutoff(const ModelParams& p) {
    if (!p.infinite_lambda()) return p.lambda;
    return std::max({50.0 * p.g2(), 20.0 * p.m, 20.0 * p.omega0});
}

struct DiscretizedResult {
    ComplexSeries phi;        // interaction-picture Phi(t) on the grid
    DiscretizedField field;   // final-time field
    double lambda_eff = 0.0;
};

// Full coupled single-excitation propagation: exact spectral evolution of the
// (1 + 2 n_modes)-dimensional arrow Hamiltonian; conserves the discrete norm to
// machine precision by construction.
inline DiscretizedResult propagate_discretized(const ModelParams& p, int n_modes,
                                               const VolterraConfig& cfg) {
    p.validate();
    if (n_modes < 2) throw std::invalid_argument("propagate_discretized: n_modes >= 2");
    cfg.validate(p);
    const double L = effective_cutoff(p);

    std::vector<double> q(n_modes), wq(n_modes, 2.0 * L / (n_modes - 1));
    for (int j = 0; j < n_modes; ++j) q[j] = -L + 2.0 * L * j / (n_modes - 1);
    wq.front() *= 0.5;
    wq.back() *= 0.5;

    const int dim = 1 + 2 * n_modes;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    H(0, 0) = p.omega0;
    for (int j = 0; j < n_modes; ++j) {
        const double w = std::sqrt(q[j] * q[j] + p.m * p.m);
        const double cpl = p.g * std::sqrt(wq[j]);
        H(1 + j, 1 + j) = w;
        H(1 + n_modes + j, 1 + n_modes + j) = -w;
        H(0, 1 + j) = H(1 + j, 0) = cpl;
        H(0, 1 + n_modes + j) = H(1 + n_modes + j, 0) = cpl;
    }
    EighResult es = eigh(H);
    const Eigen::VectorXd c0 = es.vectors.row(0).transpose();
    const Eigen::VectorXd& E = es.values;

    const std::size_t n_out = std::size_t(std::llround(cfg.t_max / cfg.dt));
    DiscretizedResult out;
    out.lambda_eff = L;
    out.phi.grid.scaling = TimeScaling::Physical;
    out.phi.picture = Picture::Interaction;
    out.phi.grid.points.resize(n_out + 1);
    out.phi.values.resize(n_out + 1);
    for (std::size_t k = 0; k <= n_out; ++k) {
        const double t = k * cfg.dt;
        Complex amp{};
        for (int i = 0; i < dim; ++i) amp += c0(i) * c0(i) * std::exp(-iu * E(i) * t / p.hbar);
        out.phi.grid.points[k] = t;
        out.phi.values[k] = std::exp(iu * p.omega0 * t / p.hbar) * amp;
    }

    // final-time field amplitudes (undo the sqrt-weight scaling)
    const double t_end = n_out * cfg.dt;
    Eigen::VectorXcd y(dim);
    for (int i = 0; i < dim; ++i) y(i) = c0(i) * std::exp(-iu * E(i) * t_end / p.hbar);
    Eigen::VectorXcd amps = es.vectors * y;
    out.field.p_grid = q;
    out.field.weights = wq;
    out.field.phi = amps(0);
    out.field.phi_p.resize(n_modes);
    out.field.psi_p.resize(n_modes);
    for (int j = 0; j < n_modes; ++j) {
        out.field.phi_p[j] = amps(1 + j) / std::sqrt(wq[j]);
        out.field.psi_p[j] = amps(1 + n_modes + j) / std::sqrt(wq[j]);
    }
    const double drift = std::abs(out.field.norm() - 1.0);
    if (drift > 1e-6)
        throw std::runtime_error("propagate_discretized: norm drift " + std::to_string(drift));
    return out;
}

}  // namespace diracbath
