#pragma once

#include <random>
#include <vector>

#include "collide/signal_model.hpp"

namespace collide {

// Which pulse train is being aligned to a decision interval:
//  IActive - the branch's own bits (shift tau)
//  QLeak   - Q bits leaking into an I interval (shift tau + T)
//  ILeak   - I bits leaking into a Q interval (shift tau - T)
enum class OffsetVariant { IActive, QLeak, ILeak };

struct OffsetDecomposition {
    long k_shift = 0;     // floor(shifted_tau / 2T)
    double tau_rel = 0;   // shifted_tau - 2*k_shift*T, in [0, 2T)
    double phi_p = 0;     // omega_p * tau, from the unshifted tau
    OffsetVariant variant = OffsetVariant::IActive;
};

OffsetDecomposition decompose_offset(double tau, double T, OffsetVariant variant);

inline double pulse_omega(double T) { return 1.5707963267948966 / T; }

struct BitContribution {
    double value = 0.0;
    Branch branch = Branch::I;
    long bit_index = 0;
};

// Decision-variable contribution of one interferer on one branch, reduced to
// four weights on its active bits. In decision interval k the interferer's
// own-branch bits k - active_shift - 1 and k - active_shift, and the other
// branch's bits k - leak_shift - 1 and k - leak_shift, are the only ones
// whose pulses overlap the integration window.
struct ContributionKernel {
    Branch branch = Branch::I;
    long active_shift = 0;
    double w_active_prev = 0.0;
    double w_active_cur = 0.0;
    long leak_shift = 0;
    double w_leak_prev = 0.0;
    double w_leak_cur = 0.0;

    double operator()(const IqStream& bits, long k) const {
        const Branch other = branch == Branch::I ? Branch::Q : Branch::I;
        const long ka = k - active_shift;
        const long kl = k - leak_shift;
        return w_active_prev * bits.bit(branch, ka - 1) + w_active_cur * bits.bit(branch, ka) +
               w_leak_prev * bits.bit(other, kl - 1) + w_leak_cur * bits.bit(other, kl);
    }
};

// Closed form of the matched-filter output for an MSK interferer with both a
// time offset tau and a carrier phase offset phi_c. The prefactor 1/(2T)
// includes the 2/T matched-filter gain, so a synchronized interferer
// contributes exactly amplitude * bit.
//
// The Q-branch form follows by shifting time by T: the Q decision window
// [2kT, 2kT+2T] maps onto an I window, the interferer's Q bits then align
// with offset tau and its I bits with offset tau - T. Working through the
// lowpassed product gives the same expression as the I branch with I and Q
// exchanged and k^{I'} in place of k^{Q'}; the sign of the sin(phi_c) term
// is unchanged. Agreement with the baseband quadrature oracle is asserted to
// 1e-9 relative over random draws in test_oracle.cpp.
ContributionKernel make_kernel(double amplitude, double tau, double phi_c, double T, Branch branch);

double lambda_sync(double amplitude, TernaryBit bit);
BitContribution lambda_i(const InterfererParams& params, long k, double T);
BitContribution lambda_q(const InterfererParams& params, long k, double T);
BitContribution lambda_branch(const InterfererParams& params, Branch branch, long k, double T);

// Special cases of the full form, kept as separate code paths so the general
// kernel can be checked against them.
// tau = 0:
double lambda_carrier_offset(double amplitude, double phi_c, int bit_i_k, int bit_q_prev, int bit_q_k);
// phi_c = 0; bits are the active pair (k'-1, k').
double lambda_time_offset(double amplitude, double tau, double T, int bit_prev, int bit_cur);

// Demodulator output for one bit: SoI term + all interferer terms + noise.
double soft_bit(const Scenario& scenario, Branch branch, long k, std::mt19937_64& rng);

// Soft bits for indices [k_begin, k_begin + count) on one branch.
std::vector<double> soft_bits(const Scenario& scenario, Branch branch, long k_begin, std::size_t count,
                              std::mt19937_64& rng);

}  // namespace collide
