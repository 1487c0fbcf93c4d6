#include <cmath>
#include <iostream>
#include <numbers>
#include <random>

#include <CLI11.hpp>

#include "cli_io.hpp"
#include "collide/analytic_demod.hpp"
#include "collide/montecarlo.hpp"
#include "collide/oracle.hpp"
#include "collide/presets.hpp"

using namespace collide;
using namespace collide::cli;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;

struct Globals {
    std::uint64_t seed = 1;
    std::optional<int> packets;
    unsigned threads = 0;
    std::string format = "csv";
    std::string out;
};

struct ExperimentFlags {
    std::string preset;
    std::string config;
    std::string coding, payload_mode, target, power_split;
    std::string tau_range, tau_ns_range, sir_range;
    std::optional<double> phi;
    std::optional<int> n_interferers, payload_bits;
    std::optional<double> noise_std;
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& f, bool with_sir) {
    cmd->add_option("--preset", f.preset, "named figure setup (see --list-presets)");
    cmd->add_option("--config", f.config, "JSON experiment config");
    cmd->add_option("--coding", f.coding, "uncoded | hdd | sdd");
    cmd->add_option("--payload-mode", f.payload_mode, "independent | identical");
    cmd->add_option("--payload-bits", f.payload_bits, "information bits per packet");
    cmd->add_option("--tau-range", f.tau_range, "time offsets first:last:step in units of T");
    cmd->add_option("--tau-ns-range", f.tau_ns_range, "time offsets first:last:step in ns (T = 500 ns)");
    if (with_sir) {
        cmd->add_option("--target", f.target, "soi | interferer");
        cmd->add_option("--sir-range", f.sir_range, "SIR grid first:last:step in dB");
        cmd->add_option("--phi", f.phi, "fixed carrier phase offset in rad (default: uniform random)");
        cmd->add_option("--n-interferers", f.n_interferers, "number of interferers");
        cmd->add_option("--power-split", f.power_split, "single | equal_split");
    }
    cmd->add_option("--noise-std", f.noise_std, "AWGN standard deviation on soft bits");
}

ExperimentConfig resolve(const ExperimentFlags& f, const Globals& g, PresetKind kind, const Preset** preset_out) {
    ExperimentConfig c;
    if (!f.preset.empty()) {
        const Preset* p;
        try {
            p = &find_preset(f.preset);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        if (p->kind != kind)
            throw ConfigError("preset " + p->name + " is a " + to_string(p->kind) + " preset");
        c = p->config;
        if (preset_out) *preset_out = p;
    }
    if (!f.config.empty()) c = load_config(f.config, c);
    try {
        if (!f.coding.empty()) c.coding = parse_coding(f.coding);
        if (!f.payload_mode.empty()) c.payload_mode = parse_payload_mode(f.payload_mode);
        if (!f.target.empty()) c.target = parse_target(f.target);
        if (!f.power_split.empty()) c.power_split = parse_power_split(f.power_split);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!f.tau_range.empty() && !f.tau_ns_range.empty())
        throw ConfigError("give --tau-range or --tau-ns-range, not both");
    if (!f.tau_range.empty()) c.tau_grid = parse_range(f.tau_range);
    if (!f.tau_ns_range.empty()) c.tau_grid = parse_range(f.tau_ns_range, 1.0 / kHalfBitNs802154);
    if (!f.sir_range.empty()) c.sir_db_grid = parse_range(f.sir_range);
    if (f.phi) c.fixed_phi = *f.phi;
    if (f.n_interferers) c.n_interferers = *f.n_interferers;
    if (f.payload_bits) c.payload_bits = *f.payload_bits;
    if (f.noise_std) c.noise_std = *f.noise_std;
    if (g.packets) c.packets_per_point = *g.packets;
    c.master_seed = g.seed;
    return c;
}

void emit(const Globals& g, Manifest& m, const Table& t) {
    const Format fmt = parse_format(g.format);
    const std::string manifest_name =
        g.out.empty() ? "" : std::filesystem::path(manifest_path(g.out)).filename().string();
    m.outputs.push_back(write_output(g.out, render(t, fmt, manifest_name)));
}

int cmd_sweep(const ExperimentFlags& f, const Globals& g, const std::string& thresholds_path, double prr_threshold) {
    const Preset* p = nullptr;
    const auto cfg = resolve(f, g, PresetKind::Sweep, &p);
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    Manifest m;
    m.command = "sweep";
    if (p) m.preset = p->name;
    m.config = config_to_json(cfg);
    m.master_seed = cfg.master_seed;
    m.threads = g.threads;

    const auto grid = sweep(cfg, g.threads);
    Table t{{"tau_over_T", "sir_db", "prr_mean", "prr_std", "ber", "ser", "packets"}, {}};
    for (const auto& pt : grid.points)
        t.rows.push_back({pt.tau, pt.sir_db, pt.prr_mean, pt.prr_std, pt.ber, pt.ser, long{pt.packets}});
    emit(g, m, t);

    if (!thresholds_path.empty()) {
        Table th{{"tau_over_T", "delta_sir_db"}, {}};
        for (const auto& tp : threshold_extract(grid, prr_threshold))
            th.rows.push_back({tp.tau, tp.sir_db ? Cell{*tp.sir_db} : Cell{}});
        const std::string name = g.out.empty() ? "" : std::filesystem::path(manifest_path(g.out)).filename().string();
        m.outputs.push_back(write_output(thresholds_path, render(th, parse_format(g.format), name)));
        m.extra["prr_threshold"] = prr_threshold;
    }
    write_manifest(g.out, m);
    return kExitOk;
}

int cmd_zone(const ExperimentFlags& f, const Globals& g, std::optional<double> sir_db, int phi_points) {
    const Preset* p = nullptr;
    auto cfg = resolve(f, g, PresetKind::Zone, &p);
    cfg.target = Target::Interferer;
    if (cfg.tau_grid.empty()) cfg.tau_grid = make_grid(-2.0, 2.0, 0.1);
    const double sir = sir_db ? *sir_db : (p ? p->zone_sir_db : -40.0);
    cfg.sir_db_grid = {sir};
    std::vector<double> phis;
    try {
        phis = phi_points > 0 ? phase_grid(phi_points) : (p ? p->phi_grid : phase_grid(64));
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    Manifest m;
    m.command = "zone";
    if (p) m.preset = p->name;
    m.config = config_to_json(cfg);
    m.config.erase("phi_mode");
    m.master_seed = cfg.master_seed;
    m.threads = g.threads;
    m.extra["phi_grid"] = phis;

    const auto cells = capture_zone(cfg, sir, cfg.tau_grid, phis, g.threads);
    Table t{{"tau_over_T", "phi_c", "ber_or_ser"}, {}};
    for (const auto& c : cells) t.rows.push_back({c.tau, c.phi_c, c.error_rate(cfg.coding)});
    emit(g, m, t);
    write_manifest(g.out, m);
    return kExitOk;
}

int cmd_ninterf(const ExperimentFlags& f, const Globals& g, std::optional<int> max_n) {
    const Preset* p = nullptr;
    auto cfg = resolve(f, g, PresetKind::NInterferer, &p);
    if (f.preset.empty() && f.coding.empty()) cfg.coding = Coding::Sdd;
    const int n = max_n ? *max_n : (p ? p->max_n : 8);
    if (n < 1) throw ConfigError("--max-n must be at least 1");
    Manifest m;
    m.command = "ninterf";
    if (p) m.preset = p->name;
    m.config = config_to_json(cfg);
    m.master_seed = cfg.master_seed;
    m.threads = g.threads;
    m.extra["max_n"] = n;
    if (n > 8) {
        std::cerr << "warning: n > 8 lies beyond the studied range of 1..8 interferers\n";
        m.extra["beyond_studied_range"] = true;
    }

    std::vector<NInterfererRow> rows;
    try {
        rows = n_interferer_experiment(cfg, n, g.threads);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    Table t{{"n", "layout", "payload_mode", "prr_mean", "prr_std"}, {}};
    for (const auto& r : rows)
        t.rows.push_back({long{r.n}, to_string(r.layout), to_string(r.payload_mode), r.prr_mean, r.prr_std});
    emit(g, m, t);
    write_manifest(g.out, m);
    return kExitOk;
}

int cmd_chiptable(const Globals& g) {
    Manifest m;
    m.command = "chiptable";
    m.master_seed = g.seed;
    Table t;
    t.columns.push_back("symbol");
    for (int n = 0; n < kChipsPerSymbol; ++n) t.columns.push_back("c" + std::to_string(n));
    const auto& table = ChipTable::ieee802154();
    for (int s = 0; s < kSymbolCount; ++s) {
        std::vector<Cell> row{long{s}};
        for (int n = 0; n < kChipsPerSymbol; ++n) row.push_back(long{table.chip(s, n)});
        t.rows.push_back(std::move(row));
    }
    emit(g, m, t);
    write_manifest(g.out, m);
    return kExitOk;
}

struct Deviation {
    double worst = 0.0;
    int violations = 0;
};

int cmd_validate(const Globals& g, int draws, double tolerance, int steps, bool passband, int carrier_multiple) {
    if (draws < 1) throw ConfigError("--draws must be at least 1");
    if (!(tolerance >= 0.0)) throw ConfigError("--tolerance must be non-negative");
    oracle::QuadratureConfig q;
    q.steps_per_bit = steps;
    q.carrier_multiple = carrier_multiple;
    try {
        q.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    Manifest m;
    m.command = "validate";
    m.master_seed = g.seed;
    m.config = {{"draws", draws}, {"tolerance", tolerance}, {"steps", steps}, {"passband", passband},
                {"carrier_multiple", carrier_multiple}};

    std::mt19937_64 rng(g.seed);
    std::uniform_real_distribution<double> amp(0.01, 100.0), phase(0.0, 2.0 * std::numbers::pi), offset(-4.0, 4.0);
    std::uniform_int_distribution<long> index(0, 19);
    std::map<std::string, Deviation> dev;
    int reported = 0;

    auto check = [&](const std::string& what, double closed, double numeric, const std::string& tuple) {
        const double d = std::fabs(closed - numeric) / (1.0 + std::fabs(numeric));
        auto& e = dev[what];
        e.worst = std::max(e.worst, d);
        if (!(d <= tolerance)) {
            ++e.violations;
            if (reported++ < 10)
                std::cerr << "violation " << what << ": " << tuple << " closed=" << format_double(closed)
                          << " oracle=" << format_double(numeric) << " deviation=" << format_double(d) << "\n";
        }
    };

    for (int n = 0; n < draws; ++n) {
        const InterfererParams p(amp(rng), offset(rng), phase(rng), random_payload(false, 40, rng));
        const long k = index(rng);
        const std::string tuple = "tau=" + format_double(p.tau) + " phi_c=" + format_double(p.phi_c) +
                                  " A=" + format_double(p.amplitude) + " k=" + std::to_string(k);
        for (auto br : {Branch::I, Branch::Q}) {
            const double closed = lambda_branch(p, br, k, kHalfBit).value;
            const double numeric = passband ? oracle::lambda_passband(p, k, br, q, kHalfBit)
                                            : oracle::lambda_baseband(p, k, br, q, kHalfBit);
            check(std::string("lambda_") + (br == Branch::I ? "I" : "Q"), closed, numeric, tuple);
        }
        for (auto br : {Branch::I, Branch::Q})
            for (auto kind : {oracle::RectKind::One, oracle::RectKind::Cos2wp, oracle::RectKind::Sin2wp}) {
                static const char* names[] = {"one", "cos2wp", "sin2wp"};
                const std::string what = std::string("rect_") + (br == Branch::I ? "I" : "Q") + "_" +
                                         names[static_cast<int>(kind)];
                check(what, oracle::rect_integral(kind, br, p.tau, p.payload, k, kHalfBit),
                      oracle::rect_integral_quadrature(kind, br, p.tau, p.payload, k, kHalfBit, steps, q.method),
                      tuple);
            }
    }

    Table t{{"check", "max_deviation", "violations", "draws", "tolerance"}, {}};
    double worst = 0.0;
    int violations = 0;
    for (const auto& [what, e] : dev) {
        t.rows.push_back({what, e.worst, long{e.violations}, long{draws}, tolerance});
        worst = std::max(worst, e.worst);
        violations += e.violations;
    }
    std::cout << "max deviation " << format_double(worst) << " over " << draws << " draws ("
              << (passband ? "passband" : "baseband") << " oracle), tolerance " << format_double(tolerance) << ": "
              << (violations ? std::to_string(violations) + " violations" : std::string("ok")) << "\n";
    if (!g.out.empty()) {
        emit(g, m, t);
        write_manifest(g.out, m);
    }
    return violations ? kExitValidation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MSK / IEEE 802.15.4 packet collision simulator"};
    app.require_subcommand(0, 1);
    Globals g;
    app.add_option("--seed", g.seed, "master seed")->capture_default_str();
    app.add_option("--packets", g.packets, "packets per grid point");
    app.add_option("--threads", g.threads, "worker threads (0: all cores)")->capture_default_str();
    app.add_option("--format", g.format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--out", g.out, "output file (default: stdout)");
    bool list = false;
    app.add_flag("--list-presets", list, "print the named presets and exit");
    app.fallthrough();

    int draws = 1000, steps = 4096, carrier = 256;
    double tolerance = 1e-9;
    bool passband = false;
    auto* validate = app.add_subcommand("validate", "closed form vs numerical oracle");
    validate->add_option("--draws", draws, "random parameter draws")->capture_default_str();
    validate->add_option("--tolerance", tolerance, "relative tolerance")->capture_default_str();
    validate->add_option("--steps", steps, "quadrature steps per bit interval")->capture_default_str();
    validate->add_flag("--passband", passband, "compare against the explicit-carrier oracle");
    validate->add_option("--carrier-multiple", carrier, "carrier frequency / pulse frequency")->capture_default_str();

    ExperimentFlags sf;
    std::string thresholds;
    double prr_threshold = 0.9;
    auto* sweep_cmd = app.add_subcommand("sweep", "PRR/BER/SER over a tau x SIR grid");
    add_experiment_flags(sweep_cmd, sf, true);
    sweep_cmd->add_option("--thresholds", thresholds, "also write the SIR threshold per tau to this file");
    sweep_cmd->add_option("--prr-threshold", prr_threshold, "PRR level for --thresholds")->capture_default_str();

    ExperimentFlags zf;
    std::optional<double> zone_sir;
    int phi_points = 0;
    auto* zone_cmd = app.add_subcommand("zone", "interferer error rate over a tau x phi_c grid");
    add_experiment_flags(zone_cmd, zf, false);
    zone_cmd->add_option("--sir-db", zone_sir, "SIR in dB (default -40)");
    zone_cmd->add_option("--phi-points", phi_points, "phase grid points over [0, 2pi) (default 64)");

    ExperimentFlags nf;
    std::optional<int> max_n;
    auto* ninterf_cmd = app.add_subcommand("ninterf", "one strong vs n weaker interferers");
    add_experiment_flags(ninterf_cmd, nf, false);
    ninterf_cmd->add_option("--max-n", max_n, "largest interferer count (default 8)");

    auto* chip_cmd = app.add_subcommand("chiptable", "dump the chipping sequences");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (list) {
            for (const auto& p : presets()) std::cout << p.name << "\t" << to_string(p.kind) << "\t" << p.description << "\n";
            return kExitOk;
        }
        if (*validate) return cmd_validate(g, draws, tolerance, steps, passband, carrier);
        if (*sweep_cmd) return cmd_sweep(sf, g, thresholds, prr_threshold);
        if (*zone_cmd) return cmd_zone(zf, g, zone_sir, phi_points);
        if (*ninterf_cmd) return cmd_ninterf(nf, g, max_n);
        if (*chip_cmd) return cmd_chiptable(g);
        std::cout << app.help();
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
