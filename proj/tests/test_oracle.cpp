#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "collide/analytic_demod.hpp"
#include "collide/oracle.hpp"

using namespace collide;
using namespace collide::oracle;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double T = kHalfBit;

const IqStream& reference_payload() {
    static const IqStream s = multiplex_bits(std::vector<int>{1, -1, -1, 1, 1, 1, -1, -1});
    return s;
}

QuadratureConfig fine() {
    QuadratureConfig c;
    c.steps_per_bit = 1 << 18;
    return c;
}

}  // namespace

TEST_CASE("config validation") {
    QuadratureConfig c;
    CHECK_NOTHROW(c.validate());
    c.steps_per_bit = 32;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.steps_per_bit = 1001;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.method = Method::Midpoint;
    CHECK_NOTHROW(c.validate());
    c.carrier_multiple = 4;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("pulse trains and windows") {
    const auto& s = reference_payload();  // I: +1 -1 +1 -1, Q: -1 +1 +1 -1
    CHECK(pulse_train(s, Branch::I, 0.0, 0.0, T) == 1);
    CHECK(pulse_train(s, Branch::I, 1.5, 0.0, T) == -1);
    CHECK(pulse_train(s, Branch::I, -1.5, 0.0, T) == 0);
    CHECK(pulse_train(s, Branch::Q, 0.5, 0.0, T) == -1);
    CHECK(pulse_train(s, Branch::Q, 2.5, 0.0, T) == 1);
    CHECK(pulse_train(s, Branch::I, 1.5, 1.0, T) == 1);

    CHECK(decision_window(Branch::I, 2, T) == std::pair{3.0, 5.0});
    CHECK(decision_window(Branch::Q, 2, T) == std::pair{4.0, 6.0});

    CHECK(pulse_edges(Branch::I, 0.25, T, 0.0, 5.0) == std::vector<double>{1.25, 3.25});
    CHECK(pulse_edges(Branch::Q, 0.25, T, 0.0, 5.0) == std::vector<double>{0.25, 2.25, 4.25});
}

TEST_CASE("integrate splits at breakpoints") {
    auto step = [](double t) { return t < 0.3 ? 1.0 : -1.0; };
    CHECK(integrate(step, 0.0, 1.0, {0.3}, 64, Method::Simpson) == doctest::Approx(-0.4).epsilon(1e-12));
    CHECK(integrate(step, 0.0, 1.0, {0.3, 5.0, -1.0}, 64, Method::Midpoint) == doctest::Approx(-0.4).epsilon(1e-12));
    auto cube = [](double t) { return t * t * t; };
    CHECK(integrate(cube, 0.0, 2.0, {}, 2, Method::Simpson) == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("baseband quadrature at the frozen reference point") {
    const InterfererParams p(1.0, 0.37, 1.1, reference_payload());
    const auto c = fine();
    CHECK(lambda_baseband(p, 1, Branch::I, c, T) == doctest::Approx(0.257857009864846).epsilon(1e-12));
    CHECK(lambda_baseband(p, 2, Branch::I, c, T) == doctest::Approx(-0.091907856878119).epsilon(1e-11));
    CHECK(lambda_baseband(p, 1, Branch::Q, c, T) == doctest::Approx(1.052627648591823).epsilon(1e-12));
    CHECK(lambda_baseband(p, 2, Branch::Q, c, T) == doctest::Approx(-0.276123351852738).epsilon(1e-12));
}

TEST_CASE("baseband quadrature of the synchronized and special cases") {
    QuadratureConfig c;
    const InterfererParams sync(0.7, 0.0, 0.0, reference_payload());
    CHECK(lambda_baseband(sync, 1, Branch::I, c, T) == doctest::Approx(-0.7).epsilon(1e-12));
    CHECK(lambda_baseband(sync, 1, Branch::Q, c, T) == doctest::Approx(0.7).epsilon(1e-12));

    // Q bits +1 then -1 around I bit 1 with phi_c = pi/2
    const IqStream q_step({TernaryBit(1), TernaryBit(1)}, {TernaryBit(1), TernaryBit(-1)});
    const InterfererParams quad(1.0, 0.0, kPi / 2, q_step);
    CHECK(lambda_baseband(quad, 1, Branch::I, c, T) == doctest::Approx(-2.0 / kPi).epsilon(1e-12));
}

TEST_CASE("closed form matches baseband quadrature on random draws") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> amp(0.01, 100.0), phase(0.0, 2.0 * kPi), offset(-4.0, 4.0);
    std::uniform_int_distribution<long> index(-3, 25);
    QuadratureConfig c;
    double worst = 0.0;
    for (int n = 0; n < 10000; ++n) {
        const InterfererParams p(amp(rng), offset(rng), phase(rng), random_payload(false, 40, rng));
        const long k = index(rng);
        for (auto br : {Branch::I, Branch::Q}) {
            const double o = lambda_baseband(p, k, br, c, T);
            const double a = lambda_branch(p, br, k, T).value;
            const double err = std::fabs(a - o) / (1.0 + std::fabs(o));
            worst = std::max(worst, err);
            if (err > 1e-9) {
                INFO("tau=" << p.tau << " phi=" << p.phi_c << " A=" << p.amplitude << " k=" << k);
                CHECK(err <= 1e-9);
            }
        }
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("rectangle primitives match quadrature") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> offset(-4.0, 4.0);
    std::uniform_int_distribution<long> index(0, 20);
    for (int n = 0; n < 1000; ++n) {
        const double tau = offset(rng);
        const auto bits = random_payload(false, 48, rng);
        const long k = index(rng);
        for (auto br : {Branch::I, Branch::Q}) {
            for (auto kind : {RectKind::One, RectKind::Cos2wp, RectKind::Sin2wp}) {
                const double closed = rect_integral(kind, br, tau, bits, k, T);
                const double numeric = rect_integral_quadrature(kind, br, tau, bits, k, T, 65536, Method::Midpoint);
                CHECK(std::fabs(closed - numeric) <= 1e-9 * (1.0 + std::fabs(numeric)));
            }
        }
    }
}

TEST_CASE("rectangle primitive examples") {
    const IqStream alt({TernaryBit(1), TernaryBit(-1)}, {TernaryBit(1), TernaryBit(-1)});
    CHECK(rect_integral(RectKind::One, Branch::I, 0.0, alt, 1, T) == doctest::Approx(-2.0));
    CHECK(rect_integral(RectKind::One, Branch::I, 0.5, alt, 1, T) == doctest::Approx(-1.0));
    CHECK(rect_integral(RectKind::Sin2wp, Branch::I, 0.5, alt, 1, T) == doctest::Approx(-2.0 / kPi));
    CHECK(rect_integral(RectKind::Cos2wp, Branch::I, 0.5, alt, 1, T) == doctest::Approx(-2.0 / kPi));
    CHECK(rect_integral(RectKind::Cos2wp, Branch::I, 0.25, alt, 1, T) ==
          doctest::Approx(-std::sqrt(2.0) / kPi).epsilon(1e-14));
    // aligned pulses: the double-frequency terms integrate to zero
    CHECK(std::fabs(rect_integral(RectKind::Cos2wp, Branch::I, 0.0, alt, 1, T)) < 1e-15);
    CHECK(std::fabs(rect_integral(RectKind::Sin2wp, Branch::I, 0.0, alt, 1, T)) < 1e-15);
}

TEST_CASE("primitives reassemble the closed-form I output") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> amp(0.01, 100.0), phase(0.0, 2.0 * kPi), offset(-4.0, 4.0);
    for (int n = 0; n < 1000; ++n) {
        const InterfererParams p(amp(rng), offset(rng), phase(rng), random_payload(false, 40, rng));
        const double a = lambda_i(p, 10, T).value;
        CHECK(std::fabs(lambda_i_from_primitives(p, 10, T) - a) <= 1e-12 * (1.0 + std::fabs(a)));
    }
}

TEST_CASE("quadrature converges at the method's order") {
    const InterfererParams p(1.0, 0.37, 1.1, reference_payload());
    const double exact = lambda_i(p, 1, T).value;
    auto err = [&](int steps, Method m) {
        QuadratureConfig c;
        c.steps_per_bit = steps;
        c.method = m;
        return std::fabs(lambda_baseband(p, 1, Branch::I, c, T) - exact);
    };
    // midpoint: second order
    const double m1 = err(256, Method::Midpoint), m2 = err(512, Method::Midpoint);
    CHECK(m1 / m2 == doctest::Approx(4.0).epsilon(0.1));
    // simpson: fourth order
    const double s1 = err(64, Method::Simpson), s2 = err(128, Method::Simpson);
    CHECK(s1 / s2 == doctest::Approx(16.0).epsilon(0.15));
}

TEST_CASE("passband residue shrinks with the carrier multiple") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi), offset(-4.0, 4.0);
    std::vector<InterfererParams> draws;
    for (int n = 0; n < 50; ++n) draws.emplace_back(1.0, offset(rng), phase(rng), random_payload(false, 40, rng));

    auto mean_deviation = [&](int multiple) {
        QuadratureConfig c;
        c.carrier_multiple = multiple;
        double sum = 0.0;
        for (const auto& p : draws) {
            for (auto br : {Branch::I, Branch::Q}) {
                const double d = std::fabs(lambda_passband(p, 10, br, c, T) - lambda_baseband(p, 10, br, c, T));
                CHECK(d <= 1e-2);
                sum += d;
            }
        }
        return sum / (2.0 * static_cast<double>(draws.size()));
    };
    const double d128 = mean_deviation(128);
    const double d256 = mean_deviation(256);
    const double d512 = mean_deviation(512);
    CHECK(d256 > 0.0);
    CHECK(d256 <= 0.6 * d128);
    CHECK(d512 <= 0.6 * d256);
}

TEST_CASE("simpson handles a pulse edge a hair inside the window") {
    // Q edge at 13.000319..., one ulp of 13 is ~1.8e-15
    const IqStream bits({TernaryBit(1), TernaryBit(1), TernaryBit(1), TernaryBit(1), TernaryBit(1), TernaryBit(1),
                         TernaryBit(1), TernaryBit(1)},
                        {TernaryBit(1), TernaryBit(1), TernaryBit(1), TernaryBit(1), TernaryBit(1), TernaryBit(-1),
                         TernaryBit(1), TernaryBit(1)});
    const double tau = 1.0003190331136933;
    for (auto kind : {RectKind::One, RectKind::Cos2wp, RectKind::Sin2wp}) {
        const double closed = rect_integral(kind, Branch::Q, tau, bits, 7, T);
        for (int steps : {64, 4096})
            CHECK(std::fabs(rect_integral_quadrature(kind, Branch::Q, tau, bits, 7, T, steps, Method::Simpson) - closed) <
                  1e-9);
    }
}

TEST_CASE("rectangle primitives match simpson quadrature") {
    std::mt19937_64 rng(78);
    std::uniform_real_distribution<double> offset(-4.0, 4.0);
    std::uniform_int_distribution<long> index(0, 20);
    for (int n = 0; n < 2000; ++n) {
        const double tau = offset(rng);
        const auto bits = random_payload(false, 48, rng);
        const long k = index(rng);
        for (auto br : {Branch::I, Branch::Q})
            for (auto kind : {RectKind::One, RectKind::Cos2wp, RectKind::Sin2wp}) {
                const double closed = rect_integral(kind, br, tau, bits, k, T);
                const double numeric = rect_integral_quadrature(kind, br, tau, bits, k, T, 4096, Method::Simpson);
                CHECK(std::fabs(closed - numeric) <= 1e-9 * (1.0 + std::fabs(numeric)));
            }
    }
}
