#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "collide/montecarlo.hpp"

namespace collide::cli {

// Bad configuration or invocation; maps to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// JSON config mirroring ExperimentConfig. Grids are lists, or objects
// {"first", "last", "step"}; tau values are in units of T.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});
nlohmann::json config_to_json(const ExperimentConfig& c);
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

// "first:last:step" -> grid; scale multiplies every value.
std::vector<double> parse_range(const std::string& spec, double scale = 1.0);

using Cell = std::variant<std::monostate, double, long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

enum class Format { Csv, Json };
Format parse_format(const std::string& s);

// Shortest round-trip decimal form.
std::string format_double(double v);

std::string render(const Table& t, Format f, const std::string& manifest_name);

struct OutputRecord {
    std::string path;
    std::string sha256;
    std::uintmax_t bytes = 0;
};

std::string sha256_hex(const std::string& data);

// Writes data to path (or stdout when path is empty).
OutputRecord write_output(const std::string& path, const std::string& data);

std::string manifest_path(const std::string& out);

struct Manifest {
    std::string command;
    std::optional<std::string> preset;
    nlohmann::json config;
    std::uint64_t master_seed = 0;
    unsigned threads = 0;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();
    std::vector<OutputRecord> outputs;
    nlohmann::json extra = nlohmann::json::object();

    nlohmann::json to_json() const;
};

void write_manifest(const std::string& out, const Manifest& m);

}  // namespace collide::cli
