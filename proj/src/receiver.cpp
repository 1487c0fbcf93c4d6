#include "collide/receiver.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace collide {

namespace {

using ChipBlock = std::array<double, kChipsPerSymbol>;

SymbolDecision correlate(const ChipBlock& chips, const ChipTable& table) {
    // correlations closer than this are ties; keeps equal-magnitude soft
    // input from splitting ties on rounding
    double scale = 0.0;
    for (double c : chips) scale += std::fabs(c);
    const double eps = 1e-12 * scale;

    SymbolDecision best{0, -1.0, 0.0};
    double second = -1.0;
    const auto& rows = table.bipolar_rows();
    for (int s = 0; s < kSymbolCount; ++s) {
        const auto& row = rows[static_cast<std::size_t>(s)];
        double acc = 0.0;
        for (std::size_t n = 0; n < kChipsPerSymbol; ++n) acc += row[n] * chips[n];
        const double mag = std::fabs(acc);
        if (mag > best.correlation + eps) {
            second = best.correlation;
            best.symbol = s;
            best.correlation = mag;
        } else if (mag > second) {
            second = mag;
        }
    }
    best.runner_up_gap = std::max(0.0, best.correlation - second);
    return best;
}

template <typename T>
ChipBlock to_block(std::span<const T> chips) {
    if (chips.size() != kChipsPerSymbol) throw std::invalid_argument("a symbol needs exactly 32 chips");
    ChipBlock b;
    for (std::size_t n = 0; n < kChipsPerSymbol; ++n) b[n] = static_cast<double>(chips[n]);
    return b;
}

void gather(std::span<const double> soft_i, std::span<const double> soft_q, int symbol, ChipBlock& out) {
    constexpr std::size_t pairs = kChipsPerSymbol / 2;
    const std::size_t base = static_cast<std::size_t>(symbol) * pairs;
    if (base + pairs > soft_i.size() || base + pairs > soft_q.size())
        throw std::out_of_range("symbol index beyond the demodulated span");
    for (std::size_t p = 0; p < pairs; ++p) {
        out[2 * p] = soft_i[base + p];
        out[2 * p + 1] = soft_q[base + p];
    }
}

}  // namespace

SymbolDecision hdd_decode(std::span<const int> chips, const ChipTable& table) {
    return correlate(to_block(chips), table);
}

SymbolDecision sdd_decode(std::span<const double> soft_chips, const ChipTable& table) {
    return correlate(to_block(soft_chips), table);
}

std::vector<double> gather_symbol_chips(std::span<const double> soft_i, std::span<const double> soft_q, int symbol) {
    ChipBlock b;
    gather(soft_i, soft_q, symbol, b);
    return {b.begin(), b.end()};
}

std::vector<int> despread_payload(const IqStream& payload) {
    const auto& i = payload.i_bits();
    const auto& q = payload.q_bits();
    constexpr std::size_t pairs = kChipsPerSymbol / 2;
    if (i.size() != q.size() || i.size() % pairs != 0)
        throw std::invalid_argument("payload is not a whole number of spread symbols");

    // exact chips: match the 32-bit pattern, fall back to correlation
    const auto& table = ChipTable::ieee802154();
    std::array<std::uint32_t, kSymbolCount> masks{};
    for (std::size_t s = 0; s < kSymbolCount; ++s)
        for (std::size_t n = 0; n < kChipsPerSymbol; ++n) masks[s] |= std::uint32_t{table.rows()[s][n]} << n;

    std::vector<int> symbols;
    for (std::size_t s = 0; s < i.size() / pairs; ++s) {
        std::uint32_t m = 0;
        ChipBlock b;
        for (std::size_t p = 0; p < pairs; ++p) {
            b[2 * p] = i[s * pairs + p].value();
            b[2 * p + 1] = q[s * pairs + p].value();
            m |= std::uint32_t{b[2 * p] > 0} << (2 * p);
            m |= std::uint32_t{b[2 * p + 1] > 0} << (2 * p + 1);
        }
        const auto hit = std::find(masks.begin(), masks.end(), m);
        symbols.push_back(hit != masks.end() ? static_cast<int>(hit - masks.begin()) : correlate(b, table).symbol);
    }
    return symbols;
}

PacketResult decode_packet(const Scenario& scenario, Coding coding, std::optional<std::size_t> target,
                           std::mt19937_64& rng) {
    if (target && *target >= scenario.interferers.size()) throw std::out_of_range("interferer index out of range");
    const IqStream& truth = target ? scenario.interferers[*target].payload : scenario.soi_payload;
    const IqStream& grid = scenario.soi_payload;
    const long k0 = grid.origin_index();

    const auto soft_i = soft_bits(scenario, Branch::I, k0, grid.i_bits().size(), rng);
    const auto soft_q = soft_bits(scenario, Branch::Q, k0, grid.q_bits().size(), rng);

    PacketResult r;
    if (!is_coded(coding)) {
        for (std::size_t n = 0; n < soft_i.size() || n < soft_q.size(); ++n) {
            const long k = k0 + static_cast<long>(n);
            if (n < soft_i.size()) {
                const int o = slice(soft_i[n]);
                r.decoded.push_back(o);
                r.bit_errors += o != truth.i(k);
            }
            if (n < soft_q.size()) {
                const int o = slice(soft_q[n]);
                r.decoded.push_back(o);
                r.bit_errors += o != truth.q(k);
            }
        }
        r.bits_compared = static_cast<int>(r.decoded.size());
        r.symbol_errors = r.bit_errors;
        r.symbols_compared = r.bits_compared;
    } else {
        const auto expected = despread_payload(truth);
        for (std::size_t s = 0; s < expected.size(); ++s) {
            ChipBlock chips;
            gather(soft_i, soft_q, static_cast<int>(s), chips);
            if (coding == Coding::Hdd)
                for (auto& c : chips) c = slice(c);
            const int sym = correlate(chips, ChipTable::ieee802154()).symbol;
            r.decoded.push_back(sym);
            const int diff = std::popcount(static_cast<unsigned>(sym ^ expected[s]));
            r.bit_errors += diff;
            r.symbol_errors += diff != 0;
        }
        r.symbols_compared = static_cast<int>(expected.size());
        r.bits_compared = r.symbols_compared * kBitsPerSymbol;
    }
    r.success = r.bit_errors == 0;
    return r;
}

}  // namespace collide
