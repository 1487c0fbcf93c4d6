#include "collide/analytic_demod.hpp"

#include <cmath>
#include <numbers>

namespace collide {

OffsetDecomposition decompose_offset(double tau, double T, OffsetVariant variant) {
    if (!(T > 0.0)) throw std::invalid_argument("half-bit duration T must be positive");
    double shifted = tau;
    if (variant == OffsetVariant::QLeak) shifted = tau + T;
    if (variant == OffsetVariant::ILeak) shifted = tau - T;

    const double bit = 2.0 * T;
    auto k_shift = static_cast<long>(std::floor(shifted / bit));
    double rel = shifted - static_cast<double>(k_shift) * bit;
    // floor() and the subtraction can disagree by an ulp near multiples of 2T
    if (rel >= bit) {
        rel -= bit;
        ++k_shift;
    }
    if (rel < 0.0) rel = 0.0;

    OffsetDecomposition d;
    d.k_shift = k_shift;
    d.tau_rel = rel;
    d.phi_p = pulse_omega(T) * tau;
    d.variant = variant;
    return d;
}

ContributionKernel make_kernel(double amplitude, double tau, double phi_c, double T, Branch branch) {
    const auto active = decompose_offset(tau, T, OffsetVariant::IActive);
    const auto leak = decompose_offset(tau, T, branch == Branch::I ? OffsetVariant::QLeak : OffsetVariant::ILeak);

    const double two_t = 2.0 * T;
    const double edge = two_t / std::numbers::pi;
    const double cp = std::cos(active.phi_p);
    const double sp = std::sin(active.phi_p);
    const double cc = std::cos(phi_c);
    const double sc = std::sin(phi_c);
    const double scale = amplitude / two_t;

    ContributionKernel k;
    k.branch = branch;
    k.active_shift = active.k_shift;
    // cos(phi_c) * [cos(phi_p) * (tr*b[k'-1] + (2T-tr)*b[k']) - (2T/pi) sin(phi_p) (b[k'-1] - b[k'])]
    k.w_active_prev = scale * cc * (cp * active.tau_rel - edge * sp);
    k.w_active_cur = scale * cc * (cp * (two_t - active.tau_rel) + edge * sp);
    k.leak_shift = leak.k_shift;
    // -sin(phi_c) * [sin(phi_p) * (tq*l[kq-1] + (2T-tq)*l[kq]) + (2T/pi) cos(phi_p) (l[kq-1] - l[kq])]
    k.w_leak_prev = -scale * sc * (sp * leak.tau_rel + edge * cp);
    k.w_leak_cur = -scale * sc * (sp * (two_t - leak.tau_rel) - edge * cp);
    return k;
}

double lambda_sync(double amplitude, TernaryBit bit) { return amplitude * bit.value(); }

BitContribution lambda_branch(const InterfererParams& params, Branch branch, long k, double T) {
    const auto kernel = make_kernel(params.amplitude, params.tau, params.phi_c, T, branch);
    return {kernel(params.payload, k), branch, k};
}

BitContribution lambda_i(const InterfererParams& params, long k, double T) {
    return lambda_branch(params, Branch::I, k, T);
}

BitContribution lambda_q(const InterfererParams& params, long k, double T) {
    return lambda_branch(params, Branch::Q, k, T);
}

double lambda_carrier_offset(double amplitude, double phi_c, int bit_i_k, int bit_q_prev, int bit_q_k) {
    return amplitude *
           (std::cos(phi_c) * bit_i_k - std::sin(phi_c) * (bit_q_prev - bit_q_k) / std::numbers::pi);
}

double lambda_time_offset(double amplitude, double tau, double T, int bit_prev, int bit_cur) {
    const double bit = 2.0 * T;
    const double tr = tau - std::floor(tau / bit) * bit;
    const double phi_p = std::numbers::pi * tau / bit;
    return amplitude / bit *
           (std::cos(phi_p) * (tr * bit_prev + (bit - tr) * bit_cur) -
            bit / std::numbers::pi * std::sin(phi_p) * (bit_prev - bit_cur));
}

double soft_bit(const Scenario& scenario, Branch branch, long k, std::mt19937_64& rng) {
    return soft_bits(scenario, branch, k, 1, rng).front();
}

std::vector<double> soft_bits(const Scenario& scenario, Branch branch, long k_begin, std::size_t count,
                              std::mt19937_64& rng) {
    std::vector<double> out(count);
    const auto& soi = scenario.soi_payload;
    for (std::size_t n = 0; n < count; ++n)
        out[n] = scenario.soi_amplitude * soi.bit(branch, k_begin + static_cast<long>(n));

    for (const auto& u : scenario.interferers) {
        const auto kernel = make_kernel(u.amplitude, u.tau, u.phi_c, scenario.half_bit_T, branch);
        for (std::size_t n = 0; n < count; ++n) out[n] += kernel(u.payload, k_begin + static_cast<long>(n));
    }

    if (scenario.noise_std > 0.0) {
        std::normal_distribution<double> noise(0.0, scenario.noise_std);
        for (auto& v : out) v += noise(rng);
    }
    return out;
}

}  // namespace collide
