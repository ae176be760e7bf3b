// quadrature.hpp — Gauss-Legendre panels, adaptive refinement and the panel
// builders (geometric, oscillation-aware) used by the contour integrals.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>
#include <vector>

#include "diracbath/model.hpp"

namespace diracbath::quad {

struct GaussRule {
    std::vector<double> x;  // nodes on [-1, 1]
    std::vector<double> w;
};

// Nodes by Newton iteration on P_n; cached per order.
inline const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        r.x[n - 1 - i] = x;
        r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return cache.emplace(n, std::move(r)).first->second;
}

template <class F>
Complex panel(const F& f, double a, double b, int order) {
    const GaussRule& r = gauss_legendre(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    Complex s{};
    for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(mid + half * r.x[i]);
    return half * s;
}

struct Result {
    Complex value{};
    double error = 0.0;
    std::size_t evals = 0;
};

// Adaptive panel integration: each panel compares GL(n) against GL(2n) and
// bisects until the difference meets the budgeted tolerance.
template <class F>
Result integrate_adaptive(const F& f, std::vector<double> edges, double abs_tol,
                          int order = 12, int max_depth = 24) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-300; }),
                edges.end());
    if (edges.size() < 2) throw std::invalid_argument("integrate_adaptive: need >= 2 edges");

    Result out;
    struct Item {
        double a, b;
        int depth;
    };
    std::vector<Item> stack;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) stack.push_back({edges[i], edges[i + 1], 0});
    const double tol_per = abs_tol / double(stack.size() ? stack.size() : 1);

    while (!stack.empty()) {
        const Item it = stack.back();
        stack.pop_back();
        const Complex coarse = panel(f, it.a, it.b, order);
        const Complex fine = panel(f, it.a, it.b, 2 * order);
        out.evals += std::size_t(3 * order);
        const double err = std::abs(fine - coarse);
        if (err < std::max(tol_per, 1e-17 * std::abs(fine)) || it.depth >= max_depth) {
            out.value += fine;
            out.error += err;
        } else {
            const double mid = 0.5 * (it.a + it.b);
            stack.push_back({it.a, mid, it.depth + 1});
            stack.push_back({mid, it.b, it.depth + 1});
        }
    }
    return out;
}

// Geometric edge set [0, r0, ..., R] for integrands with endpoint structure
// (sqrt or log behaviour at 0 plus exponential damping).
inline std::vector<double> geometric_edges(double r0, double R, int per_decade = 12) {
    if (!(R > r0) || !(r0 > 0.0)) throw std::invalid_argument("geometric_edges: bad range");
    std::vector<double> e{0.0};
    const double decades = std::log10(R / r0);
    const int n = std::max(2, int(decades * per_decade));
    for (int i = 0; i <= n; ++i) e.push_back(r0 * std::pow(R / r0, double(i) / n));
    return e;
}

// Uniform oscillation-resolved edges on [a, b]: width <= pi / freq (capped).
inline std::vector<double> oscillation_edges(double a, double b, double freq, double cap_width = 0.5) {
    const double width = std::min(cap_width, pi / std::max(freq, 1e-9));
    const int n = std::max(2, int(std::ceil((b - a) / width)));
    std::vector<double> e(n + 1);
    for (int i = 0; i <= n; ++i) e[i] = a + (b - a) * double(i) / n;
    return e;
}

}  // namespace diracbath::quad
