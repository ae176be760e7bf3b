// model.hpp — physical parameters, regime classification, time grids and
// amplitude series shared by every solver in the library.

#pragma once

#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace diracbath {

using Complex = std::complex<double>;
inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr Complex iu{0.0, 1.0};

// Distinguished value for an infinite momentum cutoff. Kept as +inf so that
// closed-form branches are selected exactly, never by a large-number quadrature.
inline constexpr double infinite_cutoff = std::numeric_limits<double>::infinity();

struct ModelParams {
    double omega0 = 1.0;   // level splitting, > 0
    double g      = 1.0;   // coupling, != 0 (constant in momentum)
    double m      = 0.0;   // Dirac mass, >= 0 (spectral gap 2m)
    double lambda = infinite_cutoff;  // momentum cutoff, > 0 or infinite
    double hbar   = 1.0;

    void validate() const {
        if (!(omega0 > 0.0)) throw std::invalid_argument("ModelParams: omega0 must be > 0");
        if (g == 0.0) throw std::invalid_argument("ModelParams: g must be nonzero");
        if (!(m >= 0.0)) throw std::invalid_argument("ModelParams: m must be >= 0");
        if (!(lambda > 0.0)) throw std::invalid_argument("ModelParams: lambda must be > 0 or infinite");
        if (!(hbar > 0.0)) throw std::invalid_argument("ModelParams: hbar must be > 0");
    }

    double g2() const { return g * g; }
    bool infinite_lambda() const { return std::isinf(lambda); }

    // Dimensionless ratios; every spectral formula is written in these.
    double a_ratio()  const { return omega0 / g2(); }          // omega0 / g^2
    double cm_ratio() const { return m / g2(); }                // m / g^2
    double cl_ratio() const { return lambda / g2(); }           // Lambda / g^2 (inf allowed)

    // tau = g^2 t / hbar and its inverse.
    double tau(double t) const { return g2() * t / hbar; }
    double t_phys(double tau_) const { return tau_ * hbar / g2(); }
};

enum class Regime { MasslessNocut, MassiveNocut, MasslessCut, General };

inline Regime classify_regime(const ModelParams& p) {
    p.validate();
    const bool massless = (p.m == 0.0);
    const bool nocut = p.infinite_lambda();
    if (massless && nocut) return Regime::MasslessNocut;
    if (!massless && nocut) return Regime::MassiveNocut;
    if (massless && !nocut) return Regime::MasslessCut;
    return Regime::General;
}

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::MasslessNocut: return "massless-nocut";
        case Regime::MassiveNocut:  return "massive-nocut";
        case Regime::MasslessCut:   return "massless-cut";
        case Regime::General:       return "general";
    }
    return "?";
}

inline double to_dimensionless(double t, const ModelParams& p) {
    if (t < 0.0) throw std::invalid_argument("to_dimensionless: t must be >= 0");
    return p.tau(t);
}
inline double from_dimensionless(double tau, const ModelParams& p) {
    if (tau < 0.0) throw std::invalid_argument("from_dimensionless: tau must be >= 0");
    return p.t_phys(tau);
}

enum class TimeScaling { Physical, Dimensionless };

struct TimeGrid {
    std::vector<double> points;  // >= 0, strictly increasing
    TimeScaling scaling = TimeScaling::Physical;

    void validate() const {
        if (points.empty()) throw std::invalid_argument("TimeGrid: empty");
        if (points.front() < 0.0) throw std::invalid_argument("TimeGrid: negative time");
        for (std::size_t i = 1; i < points.size(); ++i)
            if (!(points[i] > points[i - 1]))
                throw std::invalid_argument("TimeGrid: points must increase strictly");
    }

    static TimeGrid uniform(double t0, double t1, std::size_t n, TimeScaling s = TimeScaling::Physical) {
        if (n < 2 || !(t1 > t0)) throw std::invalid_argument("TimeGrid::uniform: bad range");
        TimeGrid g;
        g.scaling = s;
        g.points.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            g.points[i] = t0 + (t1 - t0) * double(i) / double(n - 1);
        return g;
    }

    TimeGrid converted(TimeScaling target, const ModelParams& p) const {
        if (target == scaling) return *this;
        TimeGrid out;
        out.scaling = target;
        out.points.reserve(points.size());
        for (double t : points)
            out.points.push_back(target == TimeScaling::Dimensionless ? p.tau(t) : p.t_phys(t));
        return out;
    }
};

enum class Picture { Interaction, Schrodinger };  // Phi(t) vs phi(t) = e^{-i omega0 t/hbar} Phi(t)

struct ComplexSeries {
    TimeGrid grid;
    std::vector<Complex> values;
    Picture picture = Picture::Interaction;
    double error_estimate = 0.0;   // solver-reported bound, 0 if exact/analytic

    void validate() const {
        grid.validate();
        if (values.size() != grid.points.size())
            throw std::invalid_argument("ComplexSeries: size mismatch");
    }

    // Picture conversion multiplies by e^{-/+ i omega0 t / hbar}; |value| unchanged.
    ComplexSeries in_picture(Picture target, const ModelParams& p) const {
        if (target == picture) return *this;
        ComplexSeries out = *this;
        out.picture = target;
        const double sign = (target == Picture::Schrodinger) ? -1.0 : 1.0;
        const TimeGrid phys = grid.converted(TimeScaling::Physical, p);
        for (std::size_t i = 0; i < values.size(); ++i)
            out.values[i] = values[i] * std::exp(sign * iu * p.omega0 * phys.points[i] / p.hbar);
        return out;
    }

    std::vector<double> survival() const {
        std::vector<double> out(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) out[i] = std::norm(values[i]);
        return out;
    }
};

// ---------------------------------------------------------------------------
// key=value configuration files ("omega0=1.0", "lambda=inf", '#' comments).

inline std::map<std::string, std::string> parse_config_text(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const char* ws = " \t\r\n";
            const auto b = s.find_first_not_of(ws);
            if (b == std::string::npos) return std::string{};
            const auto e = s.find_last_not_of(ws);
            return s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

inline ModelParams params_from_config(const std::map<std::string, std::string>& kv) {
    ModelParams p;
    auto num = [](const std::string& s) {
        if (s == "inf" || s == "INF" || s == "infinite") return infinite_cutoff;
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("config: bad number '" + s + "'");
        return v;
    };
    for (const auto& [k, v] : kv) {
        if (k == "omega0") p.omega0 = num(v);
        else if (k == "g") p.g = num(v);
        else if (k == "m") p.m = num(v);
        else if (k == "lambda") p.lambda = num(v);
        else if (k == "hbar") p.hbar = num(v);
        else throw std::invalid_argument("config: unknown key '" + k + "'");
    }
    p.validate();
    return p;
}

inline ModelParams params_from_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return params_from_config(parse_config_text(in));
}

}  // namespace diracbath
