#include "collide/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace collide {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) { return splitmix64(h ^ splitmix64(v)); }

std::uint64_t coord_bits(double x) {
    if (x == 0.0) x = 0.0;  // fold -0
    return std::bit_cast<std::uint64_t>(x);
}

// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
// written by exactly one worker, so results do not depend on scheduling.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) body(i);
        });
}

struct Tally {
    int packets = 0;
    int successes = 0;
    long bit_errors = 0;
    long bits = 0;
    long symbol_errors = 0;
    long symbols = 0;
};

MetricPoint evaluate(const ExperimentConfig& cfg, double tau, double sir_db) {
    const int packets = cfg.packets_per_point;
    const int batches = std::min(kPrrBatches, packets);
    std::vector<Tally> tallies(static_cast<std::size_t>(batches));
    const std::optional<std::size_t> target =
        cfg.target == Target::Interferer ? std::optional<std::size_t>(0) : std::nullopt;

    for (int p = 0; p < packets; ++p) {
        auto rng = packet_rng(cfg.master_seed, tau, sir_db, cfg.fixed_phi, cfg.n_interferers,
                              static_cast<std::uint64_t>(p));
        const Scenario sc = draw_scenario(cfg, tau, sir_db, rng);
        const auto r = decode_packet(sc, cfg.coding, target, rng);
        auto& t = tallies[static_cast<std::size_t>(static_cast<long>(p) * batches / packets)];
        ++t.packets;
        t.successes += r.success;
        t.bit_errors += r.bit_errors;
        t.bits += r.bits_compared;
        t.symbol_errors += r.symbol_errors;
        t.symbols += r.symbols_compared;
    }

    Tally all;
    for (const auto& t : tallies) {
        all.packets += t.packets;
        all.successes += t.successes;
        all.bit_errors += t.bit_errors;
        all.bits += t.bits;
        all.symbol_errors += t.symbol_errors;
        all.symbols += t.symbols;
    }

    MetricPoint m;
    m.tau = tau;
    m.sir_db = sir_db;
    m.phi_c = cfg.fixed_phi;
    m.n_interferers = cfg.n_interferers;
    m.packets = all.packets;
    m.prr_mean = static_cast<double>(all.successes) / all.packets;
    m.ber = all.bits ? static_cast<double>(all.bit_errors) / static_cast<double>(all.bits) : 0.0;
    m.ser = all.symbols ? static_cast<double>(all.symbol_errors) / static_cast<double>(all.symbols) : 0.0;
    if (batches > 1) {
        double mean = 0.0;
        for (const auto& t : tallies) mean += static_cast<double>(t.successes) / t.packets;
        mean /= batches;
        double var = 0.0;
        for (const auto& t : tallies) {
            const double d = static_cast<double>(t.successes) / t.packets - mean;
            var += d * d;
        }
        m.prr_std = std::sqrt(var / (batches - 1));
    }
    return m;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (packets_per_point < 1) throw std::invalid_argument("packets_per_point must be at least 1");
    if (payload_bits <= 0) throw std::invalid_argument("payload_bits must be positive");
    if (is_coded(coding) && payload_bits % kBitsPerSymbol != 0)
        throw std::invalid_argument("coded payload_bits must be a multiple of 4");
    if (tau_grid.empty()) throw std::invalid_argument("tau grid is empty");
    if (sir_db_grid.empty()) throw std::invalid_argument("SIR grid is empty");
    if (n_interferers < 0) throw std::invalid_argument("n_interferers must be non-negative");
    if (target == Target::Interferer && n_interferers < 1)
        throw std::invalid_argument("target=interferer needs at least one interferer");
    if (!(noise_std >= 0.0)) throw std::invalid_argument("noise_std must be non-negative");
    for (double v : tau_grid)
        if (!std::isfinite(v)) throw std::invalid_argument("tau grid holds a non-finite value");
    for (double v : sir_db_grid)
        if (!std::isfinite(v)) throw std::invalid_argument("SIR grid holds a non-finite value");
}

std::mt19937_64 packet_rng(std::uint64_t master_seed, double tau, double sir_db, std::optional<double> phi, int n,
                           std::uint64_t packet) {
    std::uint64_t h = splitmix64(master_seed);
    h = mix(h, coord_bits(tau));
    h = mix(h, coord_bits(sir_db));
    h = mix(h, phi ? coord_bits(*phi) : 0x7ff8dead0000beefULL);
    h = mix(h, static_cast<std::uint64_t>(n));
    h = mix(h, packet);
    return std::mt19937_64(h);
}

Scenario draw_scenario(const ExperimentConfig& cfg, double tau, double sir_db, std::mt19937_64& rng) {
    const bool coded = is_coded(cfg.coding);
    Scenario sc;
    sc.soi_amplitude = 1.0;
    sc.noise_std = cfg.noise_std;
    sc.soi_payload = random_payload(coded, cfg.payload_bits, rng);

    const int count = cfg.power_split == PowerSplit::Single ? std::min(cfg.n_interferers, 1) : cfg.n_interferers;
    if (count == 0) return sc;
    // total interference power 10^(-SIR/10), shared evenly
    const double amplitude = db_to_amplitude_ratio(sir_db) / std::sqrt(static_cast<double>(count));
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    for (int i = 0; i < count; ++i) {
        IqStream payload = cfg.payload_mode == PayloadMode::Identical ? sc.soi_payload
                                                                      : random_payload(coded, cfg.payload_bits, rng);
        const double phi = cfg.fixed_phi ? *cfg.fixed_phi : phase(rng);
        sc.interferers.emplace_back(amplitude, tau, phi, std::move(payload));
    }
    return sc;
}

MetricPoint run_point(const ExperimentConfig& cfg, double tau, double sir_db) {
    cfg.validate();
    return evaluate(cfg, tau, sir_db);
}

MetricGrid sweep(const ExperimentConfig& cfg, unsigned threads) {
    cfg.validate();
    MetricGrid grid;
    grid.tau_grid = cfg.tau_grid;
    grid.sir_db_grid = cfg.sir_db_grid;
    const std::size_t ns = cfg.sir_db_grid.size();
    grid.points.resize(cfg.tau_grid.size() * ns);
    parallel_for(grid.points.size(), threads, [&](std::size_t i) {
        grid.points[i] = evaluate(cfg, cfg.tau_grid[i / ns], cfg.sir_db_grid[i % ns]);
    });
    return grid;
}

std::vector<ZoneCell> capture_zone(ExperimentConfig cfg, double sir_db, const std::vector<double>& tau_grid,
                                   const std::vector<double>& phi_grid, unsigned threads) {
    if (tau_grid.empty() || phi_grid.empty()) throw std::invalid_argument("capture zone grids must be nonempty");
    cfg.target = Target::Interferer;
    cfg.tau_grid = tau_grid;
    cfg.sir_db_grid = {sir_db};
    cfg.fixed_phi = 0.0;
    cfg.validate();

    const std::size_t np = phi_grid.size();
    std::vector<ZoneCell> cells(tau_grid.size() * np);
    parallel_for(cells.size(), threads, [&](std::size_t i) {
        ExperimentConfig local = cfg;
        local.fixed_phi = phi_grid[i % np];
        const auto m = evaluate(local, tau_grid[i / np], sir_db);
        cells[i] = {m.tau, *local.fixed_phi, m.ber, m.ser, m.prr_mean};
    });
    return cells;
}

std::vector<NInterfererRow> n_interferer_experiment(ExperimentConfig cfg, int max_n, unsigned threads) {
    if (max_n < 1) throw std::invalid_argument("max_n must be at least 1");
    cfg.tau_grid = {0.0};
    cfg.fixed_phi.reset();
    cfg.sir_db_grid = {0.0};
    cfg.validate();

    std::vector<NInterfererRow> rows;
    for (auto mode : {PayloadMode::Identical, PayloadMode::Independent})
        for (auto layout : {PowerSplit::Single, PowerSplit::EqualSplit})
            for (int n = 1; n <= max_n; ++n) rows.push_back({n, layout, mode, 0.0, 0.0});

    parallel_for(rows.size(), threads, [&](std::size_t i) {
        auto& row = rows[i];
        ExperimentConfig local = cfg;
        local.payload_mode = row.payload_mode;
        local.power_split = row.layout;
        local.n_interferers = row.n;
        // each interferer at half the SoI power: SIR = 2/n
        const double sir_db = 10.0 * std::log10(2.0 / row.n);
        const auto m = evaluate(local, 0.0, sir_db);
        row.prr_mean = m.prr_mean;
        row.prr_std = m.prr_std;
    });
    return rows;
}

std::vector<ThresholdPoint> threshold_extract(const MetricGrid& grid, double prr_threshold) {
    std::vector<std::size_t> order(grid.sir_db_grid.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return grid.sir_db_grid[a] < grid.sir_db_grid[b]; });

    std::vector<ThresholdPoint> out;
    for (std::size_t t = 0; t < grid.tau_grid.size(); ++t) {
        ThresholdPoint tp{grid.tau_grid[t], std::nullopt};
        for (std::size_t j = 0; j < order.size(); ++j) {
            const auto& cur = grid.at(t, order[j]);
            if (cur.prr_mean < prr_threshold) continue;
            if (j == 0) {
                tp.sir_db = cur.sir_db;
            } else {
                const auto& prev = grid.at(t, order[j - 1]);
                const double frac = (prr_threshold - prev.prr_mean) / (cur.prr_mean - prev.prr_mean);
                tp.sir_db = prev.sir_db + frac * (cur.sir_db - prev.sir_db);
            }
            break;
        }
        out.push_back(tp);
    }
    return out;
}

std::vector<double> make_grid(double first, double last, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
    if (last < first) throw std::invalid_argument("grid end lies before its start");
    const auto n = static_cast<long>(std::floor((last - first) / step + 1e-9)) + 1;
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        const double v = first + static_cast<double>(i) * step;
        g.push_back(std::round(v * 1e9) / 1e9);
    }
    return g;
}

std::string to_string(Coding c) {
    switch (c) {
        case Coding::Uncoded: return "uncoded";
        case Coding::Hdd: return "hdd";
        case Coding::Sdd: return "sdd";
    }
    return "?";
}

std::string to_string(PayloadMode m) { return m == PayloadMode::Identical ? "identical" : "independent"; }
std::string to_string(Target t) { return t == Target::Interferer ? "interferer" : "soi"; }
std::string to_string(PowerSplit s) { return s == PowerSplit::EqualSplit ? "equal_split" : "single"; }

Coding parse_coding(const std::string& s) {
    if (s == "uncoded") return Coding::Uncoded;
    if (s == "hdd") return Coding::Hdd;
    if (s == "sdd") return Coding::Sdd;
    throw std::invalid_argument("unknown coding '" + s + "' (expected uncoded, hdd or sdd)");
}

PayloadMode parse_payload_mode(const std::string& s) {
    if (s == "independent") return PayloadMode::Independent;
    if (s == "identical") return PayloadMode::Identical;
    throw std::invalid_argument("unknown payload mode '" + s + "' (expected independent or identical)");
}

Target parse_target(const std::string& s) {
    if (s == "soi") return Target::Soi;
    if (s == "interferer") return Target::Interferer;
    throw std::invalid_argument("unknown target '" + s + "' (expected soi or interferer)");
}

PowerSplit parse_power_split(const std::string& s) {
    if (s == "single") return PowerSplit::Single;
    if (s == "equal_split") return PowerSplit::EqualSplit;
    throw std::invalid_argument("unknown power split '" + s + "' (expected single or equal_split)");
}

}  // namespace collide
