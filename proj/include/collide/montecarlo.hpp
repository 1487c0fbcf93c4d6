#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "collide/receiver.hpp"
#include "collide/signal_model.hpp"

namespace collide {

enum class Target { Soi, Interferer };
enum class PowerSplit { Single, EqualSplit };

struct ExperimentConfig {
    int packets_per_point = 1000;
    int payload_bits = 64;
    PayloadMode payload_mode = PayloadMode::Independent;
    Coding coding = Coding::Uncoded;
    Target target = Target::Soi;
    std::vector<double> tau_grid;     // units of T
    std::vector<double> sir_db_grid;
    std::optional<double> fixed_phi;  // empty: phi_c ~ U[0, 2pi) per interferer and packet
    int n_interferers = 1;
    PowerSplit power_split = PowerSplit::Single;
    std::uint64_t master_seed = 1;
    double noise_std = 0.0;

    // Throws std::invalid_argument with a description of the first problem.
    void validate() const;
};

struct MetricPoint {
    double tau = 0.0;
    double sir_db = 0.0;
    std::optional<double> phi_c;
    int n_interferers = 1;
    double prr_mean = 0.0;
    double prr_std = 0.0;
    double ber = 0.0;
    double ser = 0.0;
    int packets = 0;
};

struct MetricGrid {
    std::vector<double> tau_grid;
    std::vector<double> sir_db_grid;
    std::vector<MetricPoint> points;  // tau-major

    const MetricPoint& at(std::size_t tau_index, std::size_t sir_index) const {
        return points[tau_index * sir_db_grid.size() + sir_index];
    }
};

// Batches used for the PRR standard deviation.
inline constexpr int kPrrBatches = 10;

// Independent per-packet stream, a pure function of the seed, the point
// coordinates and the packet index.
std::mt19937_64 packet_rng(std::uint64_t master_seed, double tau, double sir_db, std::optional<double> phi, int n,
                           std::uint64_t packet);

// Builds the collision scenario for one packet: fresh payloads and carrier
// phases drawn from rng, interferer amplitudes from sir_db.
Scenario draw_scenario(const ExperimentConfig& cfg, double tau, double sir_db, std::mt19937_64& rng);

MetricPoint run_point(const ExperimentConfig& cfg, double tau, double sir_db);

// Cartesian product tau_grid x sir_db_grid. Bit-identical for any thread
// count; threads = 0 uses the hardware concurrency.
MetricGrid sweep(const ExperimentConfig& cfg, unsigned threads = 0);

struct ZoneCell {
    double tau = 0.0;
    double phi_c = 0.0;
    double ber = 0.0;
    double ser = 0.0;
    double prr = 0.0;
    // BER for uncoded reception, SER for DSSS.
    double error_rate(Coding c) const { return is_coded(c) ? ser : ber; }
};

// Interferer error rate over a (tau, phi_c) grid at fixed SIR.
std::vector<ZoneCell> capture_zone(ExperimentConfig cfg, double sir_db, const std::vector<double>& tau_grid,
                                   const std::vector<double>& phi_grid, unsigned threads = 0);

struct NInterfererRow {
    int n = 1;
    PowerSplit layout = PowerSplit::Single;
    PayloadMode payload_mode = PayloadMode::Independent;
    double prr_mean = 0.0;
    double prr_std = 0.0;
};

// n interferers at half the SoI power each versus one interferer with the
// combined power, tau = 0, random phases; both payload modes, n = 1..max_n.
std::vector<NInterfererRow> n_interferer_experiment(ExperimentConfig cfg, int max_n, unsigned threads = 0);

struct ThresholdPoint {
    double tau = 0.0;
    std::optional<double> sir_db;  // empty where no SIR reaches the threshold
};

// Per tau, the smallest SIR whose PRR reaches prr_threshold, linearly
// interpolated against the preceding grid point.
std::vector<ThresholdPoint> threshold_extract(const MetricGrid& grid, double prr_threshold = 0.9);

// Evenly spaced grid from first to last inclusive.
std::vector<double> make_grid(double first, double last, double step);

std::string to_string(Coding c);
std::string to_string(PayloadMode m);
std::string to_string(Target t);
std::string to_string(PowerSplit s);
Coding parse_coding(const std::string& s);
PayloadMode parse_payload_mode(const std::string& s);
Target parse_target(const std::string& s);
PowerSplit parse_power_split(const std::string& s);

}  // namespace collide
