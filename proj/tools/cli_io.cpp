#include "cli_io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#ifndef COLLIDE_VERSION
#define COLLIDE_VERSION "0.0.0"
#endif

namespace collide::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kConfigKeys = {
    "packets_per_point", "payload_bits",  "payload_mode",          "coding",      "target",
    "tau_grid",          "sir_db_grid",   "phi_mode",              "phi_c",       "n_interferers",
    "interferer_power_split", "master_seed", "noise_std"};

std::vector<double> grid_from_json(const json& j, const char* key) {
    if (j.is_array()) return j.get<std::vector<double>>();
    if (j.is_object()) {
        for (const char* k : {"first", "last", "step"})
            if (!j.contains(k)) throw ConfigError(std::string(key) + " range needs first, last and step");
        return make_grid(j.at("first").get<double>(), j.at("last").get<double>(), j.at("step").get<double>());
    }
    throw ConfigError(std::string(key) + " must be a list or a {first, last, step} object");
}

template <typename F>
auto enum_field(const json& j, const char* key, F parse) {
    try {
        return parse(j.at(key).get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string(key) + ": " + e.what());
    }
}

}  // namespace

ExperimentConfig config_from_json(const json& j, ExperimentConfig c) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [k, v] : j.items())
        if (!kConfigKeys.count(k)) throw ConfigError("unknown config key '" + k + "'");
    try {
        if (j.contains("packets_per_point")) c.packets_per_point = j.at("packets_per_point").get<int>();
        if (j.contains("payload_bits")) c.payload_bits = j.at("payload_bits").get<int>();
        if (j.contains("payload_mode")) c.payload_mode = enum_field(j, "payload_mode", parse_payload_mode);
        if (j.contains("coding")) c.coding = enum_field(j, "coding", parse_coding);
        if (j.contains("target")) c.target = enum_field(j, "target", parse_target);
        if (j.contains("tau_grid")) c.tau_grid = grid_from_json(j.at("tau_grid"), "tau_grid");
        if (j.contains("sir_db_grid")) c.sir_db_grid = grid_from_json(j.at("sir_db_grid"), "sir_db_grid");
        if (j.contains("phi_mode")) {
            const auto mode = j.at("phi_mode").get<std::string>();
            if (mode == "random_uniform") {
                c.fixed_phi.reset();
            } else if (mode == "fixed") {
                if (!j.contains("phi_c")) throw ConfigError("phi_mode fixed needs phi_c");
                c.fixed_phi = j.at("phi_c").get<double>();
            } else {
                throw ConfigError("phi_mode must be random_uniform or fixed");
            }
        } else if (j.contains("phi_c")) {
            c.fixed_phi = j.at("phi_c").get<double>();
        }
        if (j.contains("n_interferers")) c.n_interferers = j.at("n_interferers").get<int>();
        if (j.contains("interferer_power_split"))
            c.power_split = enum_field(j, "interferer_power_split", parse_power_split);
        if (j.contains("master_seed")) c.master_seed = j.at("master_seed").get<std::uint64_t>();
        if (j.contains("noise_std")) c.noise_std = j.at("noise_std").get<double>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return c;
}

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["packets_per_point"] = c.packets_per_point;
    j["payload_bits"] = c.payload_bits;
    j["payload_mode"] = to_string(c.payload_mode);
    j["coding"] = to_string(c.coding);
    j["target"] = to_string(c.target);
    j["tau_grid"] = c.tau_grid;
    j["sir_db_grid"] = c.sir_db_grid;
    j["phi_mode"] = c.fixed_phi ? "fixed" : "random_uniform";
    if (c.fixed_phi) j["phi_c"] = *c.fixed_phi;
    j["n_interferers"] = c.n_interferers;
    j["interferer_power_split"] = to_string(c.power_split);
    j["master_seed"] = c.master_seed;
    j["noise_std"] = c.noise_std;
    return j;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    return config_from_json(j, std::move(base));
}

std::vector<double> parse_range(const std::string& spec, double scale) {
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("bad range '" + spec + "', expected first:last:step");
        }
    }
    if (parts.size() == 1) return {parts[0] * scale};
    if (parts.size() != 3) throw ConfigError("bad range '" + spec + "', expected first:last:step");
    try {
        auto g = make_grid(parts[0] * scale, parts[1] * scale, parts[2] * scale);
        return g;
    } catch (const std::invalid_argument& e) {
        throw ConfigError("bad range '" + spec + "': " + e.what());
    }
}

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw ConfigError("unknown format '" + s + "'");
}

std::string format_double(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string render(const Table& t, Format f, const std::string& manifest_name) {
    if (f == Format::Csv) {
        std::string out;
        for (std::size_t c = 0; c < t.columns.size(); ++c) out += (c ? "," : "") + t.columns[c];
        out += '\n';
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) out += ',';
                std::visit(
                    [&](const auto& v) {
                        using V = std::decay_t<decltype(v)>;
                        if constexpr (std::is_same_v<V, double>) out += format_double(v);
                        else if constexpr (std::is_same_v<V, long>) out += std::to_string(v);
                        else if constexpr (std::is_same_v<V, std::string>) out += v;
                    },
                    row[c]);
            }
            out += '\n';
        }
        return out;
    }
    json j;
    j["manifest"] = manifest_name;
    j["columns"] = t.columns;
    j["rows"] = json::array();
    for (const auto& row : t.rows) {
        json r = json::object();
        for (std::size_t c = 0; c < row.size(); ++c)
            std::visit(
                [&](const auto& v) {
                    using V = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<V, std::monostate>) r[t.columns[c]] = nullptr;
                    else r[t.columns[c]] = v;
                },
                row[c]);
        j["rows"].push_back(std::move(r));
    }
    return j.dump(2) + "\n";
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (unsigned i = 0; i < len; ++i) {
        s += hex[md[i] >> 4];
        s += hex[md[i] & 15];
    }
    return s;
}

OutputRecord write_output(const std::string& path, const std::string& data) {
    OutputRecord r{path.empty() ? "-" : path, sha256_hex(data), data.size()};
    if (path.empty()) {
        std::cout << data;
        return r;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path);
    out << data;
    if (!out) throw ConfigError("failed writing " + path);
    return r;
}

std::string manifest_path(const std::string& out) { return out + ".manifest.json"; }

json Manifest::to_json() const {
    json j;
    j["tool"] = "collide";
    j["version"] = COLLIDE_VERSION;
    j["command"] = command;
    j["preset"] = preset ? json(*preset) : json(nullptr);
    j["config"] = config;
    j["master_seed"] = master_seed;
    j["threads"] = threads;
    j["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    j["outputs"] = json::array();
    for (const auto& o : outputs) j["outputs"].push_back({{"path", o.path}, {"sha256", o.sha256}, {"bytes", o.bytes}});
    for (const auto& [k, v] : extra.items()) j[k] = v;
    return j;
}

void write_manifest(const std::string& out, const Manifest& m) {
    if (out.empty()) return;
    std::ofstream f(manifest_path(out));
    if (!f) throw ConfigError("cannot write " + manifest_path(out));
    f << m.to_json().dump(2) << "\n";
}

}  // namespace collide::cli
