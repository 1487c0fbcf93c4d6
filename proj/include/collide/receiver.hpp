#pragma once

#include <optional>
#include <random>
#include <span>
#include <vector>

#include "collide/analytic_demod.hpp"
#include "collide/signal_model.hpp"

namespace collide {

struct SymbolDecision {
    int symbol = 0;
    double correlation = 0.0;     // |correlation| of the winner
    double runner_up_gap = 0.0;   // winner minus best other |correlation|
};

// Sign decision; an exact zero goes to +1.
inline int slice(double soft) { return soft < 0.0 ? -1 : 1; }

// argmax over all 16 chipping sequences of |sum_n chip_n * c_n| with bipolar
// c; ties go to the lowest symbol.
SymbolDecision hdd_decode(std::span<const int> chips, const ChipTable& table = ChipTable::ieee802154());
SymbolDecision sdd_decode(std::span<const double> soft_chips, const ChipTable& table = ChipTable::ieee802154());

// Chip n of symbol j sits on I index 16j + n/2 for even n, Q index
// 16j + (n-1)/2 for odd n.
std::vector<double> gather_symbol_chips(std::span<const double> soft_i, std::span<const double> soft_q, int symbol);

// Symbols carried by a spread, noise-free payload.
std::vector<int> despread_payload(const IqStream& payload);

struct PacketResult {
    std::vector<int> decoded;  // bits (uncoded, +-1 in transmit order) or symbols (coded)
    int bit_errors = 0;
    int bits_compared = 0;
    int symbol_errors = 0;
    int symbols_compared = 0;
    bool success = false;
};

// Decodes the SoI's payload span on the SoI's timing grid and compares it
// with the target sender's payload: the SoI when target is empty, otherwise
// interferer *target. For coded reception the bit errors are counted over the
// 4-bit labels of the decoded symbols; for uncoded reception every bit is its
// own symbol.
PacketResult decode_packet(const Scenario& scenario, Coding coding, std::optional<std::size_t> target,
                           std::mt19937_64& rng);

}  // namespace collide
