#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "collide/analytic_demod.hpp"
#include "collide/montecarlo.hpp"
#include "collide/oracle.hpp"
#include "collide/presets.hpp"
#include "collide/receiver.hpp"

namespace py = pybind11;
using namespace collide;

namespace {

InterfererParams params(double amplitude, double tau, double phi_c, const std::vector<int>& bits) {
    return InterfererParams(amplitude, tau, phi_c, multiplex_bits(bits));
}

Branch branch_of(const std::string& b) {
    if (b == "I" || b == "i") return Branch::I;
    if (b == "Q" || b == "q") return Branch::Q;
    throw std::invalid_argument("branch must be 'I' or 'Q'");
}

py::dict decision(const SymbolDecision& d) {
    py::dict r;
    r["symbol"] = d.symbol;
    r["correlation"] = d.correlation;
    r["runner_up_gap"] = d.runner_up_gap;
    return r;
}

py::dict point(const MetricPoint& p) {
    py::dict r;
    r["tau"] = p.tau;
    r["sir_db"] = p.sir_db;
    r["prr_mean"] = p.prr_mean;
    r["prr_std"] = p.prr_std;
    r["ber"] = p.ber;
    r["ser"] = p.ser;
    r["packets"] = p.packets;
    return r;
}

}  // namespace

PYBIND11_MODULE(_collide, m) {
    m.doc() = "Packet collision link-level simulator";
    m.attr("HALF_BIT_NS") = kHalfBitNs802154;

    py::enum_<Coding>(m, "Coding").value("UNCODED", Coding::Uncoded).value("HDD", Coding::Hdd).value("SDD", Coding::Sdd);
    py::enum_<PayloadMode>(m, "PayloadMode")
        .value("INDEPENDENT", PayloadMode::Independent)
        .value("IDENTICAL", PayloadMode::Identical);
    py::enum_<Target>(m, "Target").value("SOI", Target::Soi).value("INTERFERER", Target::Interferer);
    py::enum_<PowerSplit>(m, "PowerSplit").value("SINGLE", PowerSplit::Single).value("EQUAL_SPLIT", PowerSplit::EqualSplit);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("packets_per_point", &ExperimentConfig::packets_per_point)
        .def_readwrite("payload_bits", &ExperimentConfig::payload_bits)
        .def_readwrite("payload_mode", &ExperimentConfig::payload_mode)
        .def_readwrite("coding", &ExperimentConfig::coding)
        .def_readwrite("target", &ExperimentConfig::target)
        .def_readwrite("tau_grid", &ExperimentConfig::tau_grid)
        .def_readwrite("sir_db_grid", &ExperimentConfig::sir_db_grid)
        .def_readwrite("fixed_phi", &ExperimentConfig::fixed_phi)
        .def_readwrite("n_interferers", &ExperimentConfig::n_interferers)
        .def_readwrite("power_split", &ExperimentConfig::power_split)
        .def_readwrite("master_seed", &ExperimentConfig::master_seed)
        .def_readwrite("noise_std", &ExperimentConfig::noise_std)
        .def("validate", &ExperimentConfig::validate);

    // bits: +-1 in transmit order, even positions on I
    m.def(
        "lambda_branch",
        [](double amplitude, double tau, double phi_c, const std::vector<int>& bits, long k, const std::string& b) {
            return lambda_branch(params(amplitude, tau, phi_c, bits), branch_of(b), k, kHalfBit).value;
        },
        py::arg("amplitude"), py::arg("tau"), py::arg("phi_c"), py::arg("bits"), py::arg("k"), py::arg("branch") = "I");
    m.def(
        "lambda_oracle",
        [](double amplitude, double tau, double phi_c, const std::vector<int>& bits, long k, const std::string& b,
           int steps) {
            oracle::QuadratureConfig q;
            q.steps_per_bit = steps;
            return oracle::lambda_baseband(params(amplitude, tau, phi_c, bits), k, branch_of(b), q, kHalfBit);
        },
        py::arg("amplitude"), py::arg("tau"), py::arg("phi_c"), py::arg("bits"), py::arg("k"), py::arg("branch") = "I",
        py::arg("steps") = 4096);
    m.def("lambda_sync", [](double a, int bit) { return lambda_sync(a, TernaryBit(bit)); });

    m.def("chip_table", [] {
        std::vector<std::vector<int>> rows;
        for (const auto& r : ChipTable::ieee802154().rows()) rows.emplace_back(r.begin(), r.end());
        return rows;
    });
    m.def("spread_symbols", [](const std::vector<int>& s) { return spread_symbols(s); });
    m.def("hdd_decode", [](const std::vector<int>& chips) { return decision(hdd_decode(chips)); });
    m.def("sdd_decode", [](const std::vector<double>& chips) { return decision(sdd_decode(chips)); });

    m.def("run_point", [](const ExperimentConfig& c, double tau, double sir_db) { return point(run_point(c, tau, sir_db)); });
    m.def(
        "sweep",
        [](const ExperimentConfig& c, unsigned threads) {
            MetricGrid g;
            {
                py::gil_scoped_release nogil;
                g = sweep(c, threads);
            }
            py::list rows;
            for (const auto& p : g.points) rows.append(point(p));
            return rows;
        },
        py::arg("config"), py::arg("threads") = 0);
    m.def(
        "thresholds",
        [](const ExperimentConfig& c, double level, unsigned threads) {
            MetricGrid g;
            {
                py::gil_scoped_release nogil;
                g = sweep(c, threads);
            }
            std::vector<std::pair<double, std::optional<double>>> out;
            for (const auto& t : threshold_extract(g, level)) out.emplace_back(t.tau, t.sir_db);
            return out;
        },
        py::arg("config"), py::arg("prr_threshold") = 0.9, py::arg("threads") = 0);
    m.def(
        "capture_zone",
        [](const ExperimentConfig& c, double sir_db, const std::vector<double>& taus, const std::vector<double>& phis,
           unsigned threads) {
            std::vector<ZoneCell> cells;
            {
                py::gil_scoped_release nogil;
                cells = capture_zone(c, sir_db, taus, phis, threads);
            }
            std::vector<std::tuple<double, double, double>> out;
            for (const auto& z : cells) out.emplace_back(z.tau, z.phi_c, z.error_rate(c.coding));
            return out;
        },
        py::arg("config"), py::arg("sir_db"), py::arg("tau_grid"), py::arg("phi_grid"), py::arg("threads") = 0);
    m.def(
        "n_interferer_experiment",
        [](const ExperimentConfig& c, int max_n, unsigned threads) {
            std::vector<NInterfererRow> rows;
            {
                py::gil_scoped_release nogil;
                rows = n_interferer_experiment(c, max_n, threads);
            }
            py::list out;
            for (const auto& r : rows) {
                py::dict d;
                d["n"] = r.n;
                d["layout"] = r.layout;
                d["payload_mode"] = r.payload_mode;
                d["prr_mean"] = r.prr_mean;
                d["prr_std"] = r.prr_std;
                out.append(d);
            }
            return out;
        },
        py::arg("config"), py::arg("max_n") = 8, py::arg("threads") = 0);
    m.def("make_grid", &make_grid);

    m.def("preset_names", [] {
        std::vector<std::string> names;
        for (const auto& p : presets()) names.push_back(p.name);
        return names;
    });
    m.def("preset_config", [](const std::string& name) { return find_preset(name).config; });
}
