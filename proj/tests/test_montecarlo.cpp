#include <doctest.h>

#include <cmath>
#include <numbers>

#include "collide/montecarlo.hpp"

using namespace collide;

namespace {

constexpr double kPi = std::numbers::pi;

ExperimentConfig small(Coding coding = Coding::Uncoded) {
    ExperimentConfig c;
    c.packets_per_point = 200;
    c.coding = coding;
    c.tau_grid = {0.0, 0.7};
    c.sir_db_grid = {-5.0, 0.0, 5.0};
    c.master_seed = 7;
    return c;
}

bool same(const MetricPoint& a, const MetricPoint& b) {
    return a.tau == b.tau && a.sir_db == b.sir_db && a.prr_mean == b.prr_mean && a.prr_std == b.prr_std &&
           a.ber == b.ber && a.ser == b.ser && a.packets == b.packets;
}

}  // namespace

TEST_CASE("config validation") {
    auto c = small();
    CHECK_NOTHROW(c.validate());

    auto e = c;
    e.tau_grid.clear();
    CHECK_THROWS_WITH_AS(e.validate(), "tau grid is empty", std::invalid_argument);
    e = c;
    e.sir_db_grid.clear();
    CHECK_THROWS_AS(e.validate(), std::invalid_argument);
    e = c;
    e.packets_per_point = 0;
    CHECK_THROWS_AS(e.validate(), std::invalid_argument);
    e = c;
    e.coding = Coding::Sdd;
    e.payload_bits = 63;
    CHECK_THROWS_AS(e.validate(), std::invalid_argument);
    e = c;
    e.target = Target::Interferer;
    e.n_interferers = 0;
    CHECK_THROWS_AS(e.validate(), std::invalid_argument);
    e = c;
    e.noise_std = -1.0;
    CHECK_THROWS_AS(e.validate(), std::invalid_argument);
    e = c;
    e.tau_grid.push_back(std::nan(""));
    CHECK_THROWS_AS(e.validate(), std::invalid_argument);
}

TEST_CASE("sweep is bit-identical across thread counts") {
    for (auto coding : {Coding::Uncoded, Coding::Sdd}) {
        const auto cfg = small(coding);
        const auto a = sweep(cfg, 1);
        const auto b = sweep(cfg, 4);
        const auto c = sweep(cfg, 0);
        REQUIRE(a.points.size() == 6);
        for (std::size_t i = 0; i < a.points.size(); ++i) {
            CHECK(same(a.points[i], b.points[i]));
            CHECK(same(a.points[i], c.points[i]));
        }
        // point results do not depend on the rest of the grid
        CHECK(same(run_point(cfg, 0.7, 0.0), a.at(1, 1)));
    }
}

TEST_CASE("seed changes the draw") {
    auto cfg = small();
    const auto a = run_point(cfg, 0.0, 0.0);
    cfg.master_seed = 8;
    const auto b = run_point(cfg, 0.0, 0.0);
    CHECK_FALSE(same(a, b));
}

TEST_CASE("packet streams are independent of each other") {
    auto a = packet_rng(1, 0.0, 0.0, std::nullopt, 1, 0);
    auto b = packet_rng(1, 0.0, 0.0, std::nullopt, 1, 1);
    auto c = packet_rng(1, -0.0, 0.0, std::nullopt, 1, 0);
    auto d = packet_rng(1, 0.0, 0.0, 0.0, 1, 0);
    const auto va = a();
    CHECK(va != b());
    CHECK(va == c());
    CHECK(va != d());
}

TEST_CASE("run_point trivial cases") {
    auto cfg = small();
    SUBCASE("no interferers") {
        cfg.n_interferers = 0;
        for (auto coding : {Coding::Uncoded, Coding::Hdd, Coding::Sdd}) {
            cfg.coding = coding;
            const auto m = run_point(cfg, 0.0, -30.0);
            CHECK(m.prr_mean == 1.0);
            CHECK(m.ber == 0.0);
            CHECK(m.prr_std == 0.0);
        }
    }
    SUBCASE("SIR +20 dB") {
        for (double tau : {-3.0, -1.3, 0.0, 0.5, 2.0, 3.0}) {
            const auto m = run_point(cfg, tau, 20.0);
            CHECK(m.prr_mean == 1.0);
            CHECK(m.packets == 200);
        }
    }
    SUBCASE("identical payload, aligned, no phase offset") {
        cfg.payload_mode = PayloadMode::Identical;
        cfg.fixed_phi = 0.0;
        for (auto coding : {Coding::Uncoded, Coding::Sdd})
            for (double sir : {-50.0, -10.0, 0.0, 10.0}) {
                cfg.coding = coding;
                const auto m = run_point(cfg, 0.0, sir);
                CHECK(m.ber == 0.0);
                CHECK(m.prr_mean == 1.0);
            }
    }
}

TEST_CASE("rates stay in [0, 1]") {
    for (auto coding : {Coding::Uncoded, Coding::Hdd, Coding::Sdd}) {
        auto cfg = small(coding);
        cfg.packets_per_point = 50;
        cfg.tau_grid = {-2.5, 0.0, 1.1};
        cfg.sir_db_grid = {-40.0, -3.0, 3.0};
        cfg.n_interferers = 3;
        cfg.power_split = PowerSplit::EqualSplit;
        for (const auto& p : sweep(cfg).points) {
            for (double v : {p.prr_mean, p.ber, p.ser}) {
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
            }
            CHECK(p.prr_std >= 0.0);
            CHECK(p.n_interferers == 3);
        }
    }
}

TEST_CASE("uncoded SER equals BER, coded SER bounds BER") {
    auto cfg = small();
    const auto m = run_point(cfg, 0.3, 0.0);
    CHECK(m.ser == m.ber);
    cfg.coding = Coding::Hdd;
    const auto h = run_point(cfg, 0.3, -3.0);
    CHECK(h.ber <= h.ser);
    CHECK(h.ser > 0.0);
}

TEST_CASE("draw_scenario amplitudes follow SIR and the power split") {
    auto cfg = small();
    std::mt19937_64 rng(1);
    auto sc = draw_scenario(cfg, 0.4, -20.0, rng);
    REQUIRE(sc.interferers.size() == 1);
    CHECK(sc.interferers[0].amplitude == doctest::Approx(10.0));
    CHECK(sc.interferers[0].tau == 0.4);
    CHECK(sc.sir_db() == doctest::Approx(-20.0));

    cfg.n_interferers = 4;
    CHECK(draw_scenario(cfg, 0.0, 0.0, rng).interferers.size() == 1);
    cfg.power_split = PowerSplit::EqualSplit;
    sc = draw_scenario(cfg, 0.0, -6.0, rng);
    REQUIRE(sc.interferers.size() == 4);
    CHECK(sc.interferers[2].amplitude == doctest::Approx(db_to_amplitude_ratio(-6.0) / 2.0));
    CHECK(sc.sir_db() == doctest::Approx(-6.0));

    cfg.payload_mode = PayloadMode::Identical;
    sc = draw_scenario(cfg, 0.0, 0.0, rng);
    for (const auto& u : sc.interferers) CHECK(u.payload == sc.soi_payload);
}

TEST_CASE("uncoded PRR rises with SIR") {
    auto cfg = small();
    cfg.packets_per_point = 400;
    cfg.tau_grid = {0.0, 1.5};
    cfg.sir_db_grid = make_grid(-6.0, 6.0, 1.0);
    const auto g = sweep(cfg);
    for (std::size_t t = 0; t < g.tau_grid.size(); ++t) {
        for (std::size_t s = 1; s < g.sir_db_grid.size(); ++s) {
            const double p0 = g.at(t, s - 1).prr_mean, p1 = g.at(t, s).prr_mean;
            const double sigma = std::sqrt(std::max(p0 * (1 - p0), 0.25 / 400.0) / 400.0);
            CHECK(p1 >= p0 - 2.0 * std::sqrt(2.0) * sigma);
        }
    }
}

TEST_CASE("capture zone") {
    auto cfg = small();
    cfg.packets_per_point = 50;
    const auto cells = capture_zone(cfg, -40.0, {0.0, 0.5}, {0.0, kPi / 2, kPi}, 2);
    REQUIRE(cells.size() == 6);
    CHECK(cells[0].tau == 0.0);
    CHECK(cells[0].phi_c == 0.0);
    CHECK(cells[0].ber == 0.0);
    CHECK(cells[1].phi_c == doctest::Approx(kPi / 2));
    CHECK(cells[1].ber > 0.2);
    CHECK(cells[4].tau == 0.5);
    CHECK(cells[0].error_rate(Coding::Uncoded) == cells[0].ber);
    CHECK_THROWS_AS(capture_zone(cfg, -40.0, {}, {0.0}), std::invalid_argument);

    const auto again = capture_zone(cfg, -40.0, {0.0, 0.5}, {0.0, kPi / 2, kPi}, 1);
    for (std::size_t i = 0; i < cells.size(); ++i) CHECK(cells[i].ber == again[i].ber);
}

TEST_CASE("n-interferer experiment layout") {
    auto cfg = small(Coding::Sdd);
    cfg.packets_per_point = 100;
    const auto rows = n_interferer_experiment(cfg, 3, 2);
    REQUIRE(rows.size() == 12);
    for (const auto& r : rows) {
        CHECK(r.n >= 1);
        CHECK(r.n <= 3);
    }
    // n = 1 layouts coincide
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j)
            if (rows[i].n == 1 && rows[j].n == 1 && rows[i].payload_mode == rows[j].payload_mode)
                CHECK(rows[i].prr_mean == rows[j].prr_mean);
    CHECK_THROWS_AS(n_interferer_experiment(cfg, 0), std::invalid_argument);
}

TEST_CASE("threshold_extract") {
    MetricGrid g;
    g.tau_grid = {0.0, 1.0, 2.0};
    g.sir_db_grid = {2.0, 0.0, 1.0};  // unsorted on purpose
    const double prr[3][3] = {{1.0, 0.5, 0.8}, {0.95, 0.1, 0.2}, {0.3, 0.0, 0.1}};
    for (std::size_t t = 0; t < 3; ++t)
        for (std::size_t s = 0; s < 3; ++s) {
            MetricPoint p;
            p.tau = g.tau_grid[t];
            p.sir_db = g.sir_db_grid[s];
            p.prr_mean = prr[t][s];
            g.points.push_back(p);
        }
    const auto th = threshold_extract(g, 0.9);
    REQUIRE(th.size() == 3);
    REQUIRE(th[0].sir_db);
    CHECK(*th[0].sir_db == doctest::Approx(1.5));
    REQUIRE(th[1].sir_db);
    CHECK(*th[1].sir_db == doctest::Approx(1.0 + 0.7 / 0.75));
    CHECK_FALSE(th[2].sir_db);

    // already above threshold at the lowest SIR
    CHECK(*threshold_extract(g, 0.4)[0].sir_db == 0.0);
}

TEST_CASE("make_grid") {
    CHECK(make_grid(-3.0, 3.0, 0.1).size() == 61);
    CHECK(make_grid(-3.0, 3.0, 0.1)[30] == 0.0);
    CHECK(make_grid(-3.0, 3.0, 0.1)[60] == 3.0);
    CHECK(make_grid(1.0, 1.0, 0.5) == std::vector<double>{1.0});
    CHECK_THROWS_AS(make_grid(0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1.0, 0.0, 0.1), std::invalid_argument);
}

TEST_CASE("enum names round-trip") {
    for (auto c : {Coding::Uncoded, Coding::Hdd, Coding::Sdd}) CHECK(parse_coding(to_string(c)) == c);
    for (auto m : {PayloadMode::Independent, PayloadMode::Identical}) CHECK(parse_payload_mode(to_string(m)) == m);
    for (auto t : {Target::Soi, Target::Interferer}) CHECK(parse_target(to_string(t)) == t);
    for (auto s : {PowerSplit::Single, PowerSplit::EqualSplit}) CHECK(parse_power_split(to_string(s)) == s);
    CHECK_THROWS_AS(parse_coding("viterbi"), std::invalid_argument);
}
