#pragma once

#include <string>
#include <vector>

#include "collide/montecarlo.hpp"

namespace collide {

enum class PresetKind { Sweep, Zone, NInterferer };

// Named experiment setups for the collision figures. Sweep presets use
// config.tau_grid x config.sir_db_grid; zone presets use config.tau_grid x
// phi_grid at zone_sir_db; n-interferer presets use max_n.
struct Preset {
    std::string name;
    PresetKind kind = PresetKind::Sweep;
    std::string description;
    ExperimentConfig config;
    double zone_sir_db = -40.0;
    std::vector<double> phi_grid;
    int max_n = 8;
};

const std::vector<Preset>& presets();

// Throws std::invalid_argument for an unknown name.
const Preset& find_preset(const std::string& name);

// n points evenly spaced over [0, 2pi).
std::vector<double> phase_grid(int points);

std::string to_string(PresetKind k);

}  // namespace collide
