#include "collide/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace collide::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

double omega_p(double T) { return kPi / (2.0 * T); }

// Pieces end on pulse edges, so the end samples are taken as one-sided
// limits from inside the piece.
double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    const double h = (b - a) / n;
    // must clear at least a few ulps of the endpoint, or tiny pieces sample
    // the far side of the jump
    const double ulps = 8.0 * std::numeric_limits<double>::epsilon() * std::max({std::fabs(a), std::fabs(b), 1.0});
    const double inset = std::min(0.5 * h, std::max(1e-12 * (b - a), ulps));
    double odd = 0.0, even = 0.0;
    for (int i = 1; i < n; ++i) (i % 2 ? odd : even) += f(a + i * h);
    return h / 3.0 * (f(a + inset) + f(b - inset) + 4.0 * odd + 2.0 * even);
}

double midpoint(const std::function<double(double)>& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += f(a + (i + 0.5) * h);
    return s * h;
}

}  // namespace

void QuadratureConfig::validate() const {
    if (steps_per_bit < 64) throw std::invalid_argument("steps_per_bit must be at least 64");
    if (method == Method::Simpson && steps_per_bit % 2 != 0)
        throw std::invalid_argument("simpson quadrature needs an even step count");
    if (carrier_multiple < 8) throw std::invalid_argument("carrier_multiple must be at least 8");
}

double integrate(const std::function<double(double)>& f, double a, double b, std::vector<double> breakpoints,
                 int steps, Method method) {
    std::vector<double> nodes{a};
    std::sort(breakpoints.begin(), breakpoints.end());
    for (double x : breakpoints)
        if (x > nodes.back() && x < b) nodes.push_back(x);
    nodes.push_back(b);

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double lo = nodes[i], hi = nodes[i + 1];
        if (hi <= lo) continue;
        int n = std::max(2, static_cast<int>(std::ceil(steps * (hi - lo) / (b - a))));
        if (n % 2) ++n;
        total += method == Method::Simpson ? simpson(f, lo, hi, n) : midpoint(f, lo, hi, n);
    }
    return total;
}

int pulse_train(const IqStream& bits, Branch branch, double t, double tau, double T) {
    const double x = t - tau;
    // I pulse m covers ((2m-1)T, (2m+1)T); Q pulse m covers (2mT, (2m+2)T).
    const double origin = branch == Branch::I ? x + T : x;
    const auto m = static_cast<long>(std::floor(origin / (2.0 * T)));
    return bits.bit(branch, m);
}

std::vector<double> pulse_edges(Branch branch, double tau, double T, double a, double b) {
    // I edges at tau + (2m+1)T, Q edges at tau + 2mT
    const double phase = branch == Branch::I ? tau + T : tau;
    std::vector<double> edges;
    const auto m0 = static_cast<long>(std::floor((a - phase) / (2.0 * T)));
    for (long m = m0; ; ++m) {
        const double e = phase + 2.0 * T * static_cast<double>(m);
        if (e >= b) break;
        if (e > a) edges.push_back(e);
    }
    return edges;
}

std::pair<double, double> decision_window(Branch branch, long k, double T) {
    const double kk = static_cast<double>(k);
    if (branch == Branch::I) return {(2.0 * kk - 1.0) * T, (2.0 * kk + 1.0) * T};
    return {2.0 * kk * T, (2.0 * kk + 2.0) * T};
}

namespace {

std::vector<double> all_edges(double tau, double T, double a, double b) {
    auto e = pulse_edges(Branch::I, tau, T, a, b);
    auto q = pulse_edges(Branch::Q, tau, T, a, b);
    e.insert(e.end(), q.begin(), q.end());
    return e;
}

}  // namespace

double lambda_baseband(const InterfererParams& params, long k, Branch branch, const QuadratureConfig& cfg, double T) {
    cfg.validate();
    const double wp = omega_p(T);
    const double tau = params.tau;
    const double pp = wp * tau;
    const double cc = std::cos(params.phi_c), sc = std::sin(params.phi_c);
    const double gain = (2.0 / T) * params.amplitude / 4.0;
    const IqStream& bits = params.payload;

    std::function<double(double)> f;
    if (branch == Branch::I) {
        f = [&](double t) {
            const double bi = pulse_train(bits, Branch::I, t, tau, T);
            const double bq = pulse_train(bits, Branch::Q, t, tau, T);
            return gain * (bi * cc * (std::cos(pp) + std::cos(2.0 * wp * t - pp)) +
                           bq * sc * (std::sin(2.0 * wp * t - pp) - std::sin(pp)));
        };
    } else {
        f = [&](double t) {
            const double bi = pulse_train(bits, Branch::I, t, tau, T);
            const double bq = pulse_train(bits, Branch::Q, t, tau, T);
            return gain * (bq * cc * (std::cos(pp) - std::cos(2.0 * wp * t - pp)) -
                           bi * sc * (std::sin(2.0 * wp * t - pp) + std::sin(pp)));
        };
    }
    const auto [a, b] = decision_window(branch, k, T);
    return integrate(f, a, b, all_edges(tau, T, a, b), cfg.steps_per_bit, cfg.method);
}

double lambda_passband(const InterfererParams& params, long k, Branch branch, const QuadratureConfig& cfg, double T) {
    cfg.validate();
    const double wp = omega_p(T);
    const double wc = cfg.carrier_multiple * wp;
    const double tau = params.tau;
    const double phi = params.phi_c;
    const IqStream& bits = params.payload;

    auto u = [&](double t) {
        const double bi = pulse_train(bits, Branch::I, t, tau, T);
        const double bq = pulse_train(bits, Branch::Q, t, tau, T);
        return params.amplitude * (bi * std::cos(wp * (t - tau)) * std::cos(wc * t + phi) +
                                   bq * std::sin(wp * (t - tau)) * std::sin(wc * t + phi));
    };
    std::function<double(double)> f;
    if (branch == Branch::I)
        f = [&](double t) { return u(t) * (2.0 / T) * std::cos(wp * t) * std::cos(wc * t); };
    else
        f = [&](double t) { return u(t) * (2.0 / T) * std::sin(wp * t) * std::sin(wc * t); };

    // resolve every carrier cycle with at least 32 samples
    const int steps = std::max(cfg.steps_per_bit, 32 * cfg.carrier_multiple);
    const auto [a, b] = decision_window(branch, k, T);
    return integrate(f, a, b, all_edges(tau, T, a, b), steps + steps % 2, cfg.method);
}

double rect_integral(RectKind kind, Branch branch, double tau, const IqStream& bits, long k, double T) {
    const double two_t = 2.0 * T;
    const double shifted = branch == Branch::I ? tau : tau + T;
    const double k_tau = std::floor(shifted / two_t);
    const double tr = shifted - k_tau * two_t;
    const long kp = k - static_cast<long>(k_tau);
    const double prev = bits.bit(branch, kp - 1);
    const double cur = bits.bit(branch, kp);
    const double diff = prev - cur;
    const double wp = omega_p(T);
    const double pp = wp * tau;

    switch (kind) {
        case RectKind::One:
            return tr * prev + (two_t - tr) * cur;
        case RectKind::Cos2wp:
            return (branch == Branch::I ? -1.0 : 1.0) / (2.0 * wp) * std::sin(2.0 * pp) * diff;
        case RectKind::Sin2wp:
            return -1.0 / (2.0 * wp) * (1.0 + (branch == Branch::I ? -1.0 : 1.0) * std::cos(2.0 * pp)) * diff;
    }
    return 0.0;
}

double rect_integral_quadrature(RectKind kind, Branch branch, double tau, const IqStream& bits, long k, double T,
                                int steps, Method method) {
    const double wp = omega_p(T);
    std::function<double(double)> f = [&](double t) {
        const double b = pulse_train(bits, branch, t, tau, T);
        switch (kind) {
            case RectKind::One: return b;
            case RectKind::Cos2wp: return b * std::cos(2.0 * wp * t);
            case RectKind::Sin2wp: return b * std::sin(2.0 * wp * t);
        }
        return 0.0;
    };
    const auto [a, b] = decision_window(Branch::I, k, T);
    return integrate(f, a, b, pulse_edges(branch, tau, T, a, b), steps, method);
}

double assemble_x1(double tau, const IqStream& bits, long k, double T) {
    const double pp = omega_p(T) * tau;
    return std::cos(pp) * rect_integral(RectKind::One, Branch::I, tau, bits, k, T) +
           std::cos(pp) * rect_integral(RectKind::Cos2wp, Branch::I, tau, bits, k, T) +
           std::sin(pp) * rect_integral(RectKind::Sin2wp, Branch::I, tau, bits, k, T);
}

double assemble_x2(double tau, const IqStream& bits, long k, double T) {
    const double pp = omega_p(T) * tau;
    return -(std::sin(pp) * rect_integral(RectKind::One, Branch::Q, tau, bits, k, T) +
             std::sin(pp) * rect_integral(RectKind::Cos2wp, Branch::Q, tau, bits, k, T) -
             std::cos(pp) * rect_integral(RectKind::Sin2wp, Branch::Q, tau, bits, k, T));
}

double lambda_i_from_primitives(const InterfererParams& params, long k, double T) {
    const double x1 = assemble_x1(params.tau, params.payload, k, T);
    const double x2 = assemble_x2(params.tau, params.payload, k, T);
    return params.amplitude / (2.0 * T) * (std::cos(params.phi_c) * x1 + std::sin(params.phi_c) * x2);
}

}  // namespace collide::oracle
