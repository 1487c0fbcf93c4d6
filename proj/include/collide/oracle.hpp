#pragma once

#include <functional>

#include "collide/signal_model.hpp"

namespace collide::oracle {

enum class Method { Midpoint, Simpson };

struct QuadratureConfig {
    int steps_per_bit = 4096;  // subdivisions of one 2T decision window
    Method method = Method::Simpson;
    int carrier_multiple = 256;  // passband only: omega_c = multiple * omega_p

    void validate() const;
};

// Integrates f over [a, b], splitting at every breakpoint strictly inside
// the interval. Each piece gets a share of `steps` proportional to its
// length (at least 2, even for Simpson).
double integrate(const std::function<double(double)>& f, double a, double b, std::vector<double> breakpoints,
                 int steps, Method method);

// Pulse-train value of the interferer's branch at time t, shifted by tau.
int pulse_train(const IqStream& bits, Branch branch, double t, double tau, double T);

// Edges of a shifted pulse train inside (a, b).
std::vector<double> pulse_edges(Branch branch, double tau, double T, double a, double b);

// Decision window of bit k on a branch.
std::pair<double, double> decision_window(Branch branch, long k, double T);

// Matched-filter output after ideal lowpass filtering, by direct quadrature.
double lambda_baseband(const InterfererParams& params, long k, Branch branch, const QuadratureConfig& cfg, double T);

// Full passband product with an explicit carrier. Deviates from the baseband
// value by an O(1/carrier_multiple) residue of the double-frequency terms.
double lambda_passband(const InterfererParams& params, long k, Branch branch, const QuadratureConfig& cfg, double T);

// Rectangle-pulse primitives over the I decision window of bit k:
//   branch I: integral of b_I(t - tau) f(t)
//   branch Q: integral of b_Q(t - tau) f(t)   (Q bits leaking into I)
// for f in {1, cos(2 omega_p t), sin(2 omega_p t)}.
enum class RectKind { One, Cos2wp, Sin2wp };

double rect_integral(RectKind kind, Branch branch, double tau, const IqStream& bits, long k, double T);
double rect_integral_quadrature(RectKind kind, Branch branch, double tau, const IqStream& bits, long k, double T,
                                int steps = 4096, Method method = Method::Midpoint);

// The two bracketed terms of the I-branch matched-filter output assembled
// from the rectangle primitives; lambda_I = A/(2T) (cos phi_c X1 + sin phi_c X2).
double assemble_x1(double tau, const IqStream& bits, long k, double T);
double assemble_x2(double tau, const IqStream& bits, long k, double T);
double lambda_i_from_primitives(const InterfererParams& params, long k, double T);

}  // namespace collide::oracle
