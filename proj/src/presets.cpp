#include "collide/presets.hpp"

#include <numbers>
#include <stdexcept>

namespace collide {

namespace {

constexpr const char* kLetters = "abc";
constexpr Coding kCodings[] = {Coding::Uncoded, Coding::Hdd, Coding::Sdd};

Preset sweep_preset(const std::string& name, const std::string& what, Coding coding, PayloadMode mode, Target target,
                    std::vector<double> taus, std::vector<double> sirs) {
    Preset p;
    p.name = name;
    p.kind = PresetKind::Sweep;
    p.description = what + ", " + to_string(coding);
    p.config.coding = coding;
    p.config.payload_mode = mode;
    p.config.target = target;
    p.config.tau_grid = std::move(taus);
    p.config.sir_db_grid = std::move(sirs);
    return p;
}

std::vector<Preset> build() {
    std::vector<Preset> out;
    const auto wide_tau = make_grid(-3.0, 3.0, 0.1);
    const auto wide_sir = make_grid(-50.0, 10.0, 1.0);

    for (int i = 0; i < 3; ++i) {
        const std::string s(1, kLetters[i]);
        const Coding c = kCodings[i];

        // threshold contours need a fine SIR step around the capture threshold
        out.push_back(sweep_preset("fig5" + s, "capture threshold, independent payload", c, PayloadMode::Independent,
                                   Target::Soi, wide_tau, make_grid(-16.0, 8.0, 0.25)));
        out.push_back(sweep_preset("fig6" + s, "capture threshold, identical payload", c, PayloadMode::Identical,
                                   Target::Soi, wide_tau, wide_sir));
        out.push_back(sweep_preset("fig7" + s, "PRR vs SIR, independent payload", c, PayloadMode::Independent,
                                   Target::Soi, {0.0, 0.5, 1.0, 2.0}, wide_sir));

        auto near = make_grid(-0.3, 0.3, 0.1);
        near.insert(near.begin(), {-1.0, -0.5});
        near.insert(near.end(), {0.5, 1.0});
        out.push_back(sweep_preset("fig8" + s, "PRR vs SIR, identical payload", c, PayloadMode::Identical,
                                   Target::Soi, near, wide_sir));

        out.push_back(sweep_preset("fig10" + s, "interferer reception, independent payload", c,
                                   PayloadMode::Independent, Target::Interferer, wide_tau, wide_sir));

        Preset z;
        z.name = "fig11" + s;
        z.kind = PresetKind::Zone;
        z.description = "capture zone at SIR -40 dB, " + to_string(c);
        z.config.coding = c;
        z.config.target = Target::Interferer;
        z.config.tau_grid = make_grid(-2.0, 2.0, 0.1);
        z.config.sir_db_grid = {-40.0};
        z.zone_sir_db = -40.0;
        z.phi_grid = phase_grid(64);
        out.push_back(z);
    }

    Preset n;
    n.name = "fig9";
    n.kind = PresetKind::NInterferer;
    n.description = "one strong vs n weaker interferers, sdd";
    n.config.coding = Coding::Sdd;
    n.config.tau_grid = {0.0};
    n.config.sir_db_grid = {0.0};
    n.max_n = 8;
    out.push_back(n);
    return out;
}

}  // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> all = build();
    return all;
}

const Preset& find_preset(const std::string& name) {
    for (const auto& p : presets())
        if (p.name == name) return p;
    throw std::invalid_argument("unknown preset '" + name + "'");
}

std::vector<double> phase_grid(int points) {
    if (points < 1) throw std::invalid_argument("phase grid needs at least one point");
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = 2.0 * std::numbers::pi * i / points;
    return g;
}

std::string to_string(PresetKind k) {
    switch (k) {
        case PresetKind::Sweep: return "sweep";
        case PresetKind::Zone: return "zone";
        case PresetKind::NInterferer: return "ninterf";
    }
    return "?";
}

}  // namespace collide
