#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace collide {

// Normalized half-bit duration. All internal times are in units of T; a bit
// lasts 2T. IEEE 802.15.4 at 2.4 GHz has T = 500 ns.
inline constexpr double kHalfBit = 1.0;
inline constexpr double kHalfBitNs802154 = 500.0;

enum class Branch { I, Q };

// Antipodal bit coefficient; 0 marks silence outside a packet.
class TernaryBit {
public:
    constexpr TernaryBit() = default;
    constexpr explicit TernaryBit(int v) : value_(static_cast<std::int8_t>(v)) {
        if (v < -1 || v > 1) throw std::invalid_argument("bit value must be -1, 0 or +1");
    }
    constexpr int value() const { return value_; }
    constexpr bool silent() const { return value_ == 0; }
    constexpr TernaryBit operator-() const { return TernaryBit(-value_); }
    friend constexpr bool operator==(TernaryBit, TernaryBit) = default;

private:
    std::int8_t value_ = 0;
};

// A packet's bit sequence split onto the I and Q branches. Bit k of either
// branch is addressed in absolute bit-interval indices; anything outside the
// stored range reads as silence.
class IqStream {
public:
    IqStream() = default;
    IqStream(std::vector<TernaryBit> i_bits, std::vector<TernaryBit> q_bits, long origin_index = 0);

    const std::vector<TernaryBit>& i_bits() const { return i_; }
    const std::vector<TernaryBit>& q_bits() const { return q_; }
    long origin_index() const { return origin_; }

    int i(long k) const { return at(i_, k); }
    int q(long k) const { return at(q_, k); }
    int bit(Branch b, long k) const { return b == Branch::I ? i(k) : q(k); }

    // Number of transmitted bits (I + Q).
    std::size_t size() const { return i_.size() + q_.size(); }
    bool empty() const { return i_.empty() && q_.empty(); }

    IqStream negated() const;
    friend bool operator==(const IqStream&, const IqStream&) = default;

private:
    int at(const std::vector<TernaryBit>& v, long k) const {
        const long idx = k - origin_;
        if (idx < 0 || idx >= static_cast<long>(v.size())) return 0;
        return v[static_cast<std::size_t>(idx)].value();
    }

    std::vector<TernaryBit> i_;
    std::vector<TernaryBit> q_;
    long origin_ = 0;
};

// Even positions go to I, odd positions to Q.
IqStream multiplex_bits(std::span<const int> bits);
std::vector<int> demultiplex_bits(const IqStream& stream);

inline constexpr int kChipsPerSymbol = 32;
inline constexpr int kBitsPerSymbol = 4;
inline constexpr int kSymbolCount = 16;

// IEEE 802.15.4 2.4 GHz chipping sequences, chips in transmit order
// c_0..c_31. Even chip positions ride on I, odd positions on Q.
class ChipTable {
public:
    using Row = std::array<std::uint8_t, kChipsPerSymbol>;

    static const ChipTable& ieee802154();

    const Row& row(int symbol) const;
    int chip(int symbol, int position) const { return row(symbol)[static_cast<std::size_t>(position)]; }
    // 1 -> +1, 0 -> -1
    int bipolar(int symbol, int position) const { return chip(symbol, position) ? 1 : -1; }
    const std::array<Row, kSymbolCount>& rows() const { return rows_; }
    const std::array<std::array<double, kChipsPerSymbol>, kSymbolCount>& bipolar_rows() const { return bipolar_; }

    explicit ChipTable(const std::array<Row, kSymbolCount>& rows);

private:
    std::array<Row, kSymbolCount> rows_;
    std::array<std::array<double, kChipsPerSymbol>, kSymbolCount> bipolar_{};
};

std::vector<int> spread_symbols(std::span<const int> symbols, const ChipTable& table = ChipTable::ieee802154());

enum class PayloadMode { Independent, Identical };
enum class Coding { Uncoded, Hdd, Sdd };

inline bool is_coded(Coding c) { return c != Coding::Uncoded; }

// Draws a SoI payload and an interferer payload of length_bits information
// bits. Coded payloads carry length_bits/4 symbols spread to 8*length_bits
// chips.
std::pair<IqStream, IqStream> make_payload(PayloadMode mode, bool coded, int length_bits, std::mt19937_64& rng);
IqStream random_payload(bool coded, int length_bits, std::mt19937_64& rng);

struct InterfererParams {
    double amplitude = 1.0;
    double tau = 0.0;    // units of T, positive = arrives later
    double phi_c = 0.0;  // radians, kept in [0, 2pi)
    IqStream payload;

    InterfererParams() = default;
    InterfererParams(double amplitude, double tau, double phi_c, IqStream payload);
};

double normalize_phase(double phi);

struct Scenario {
    double soi_amplitude = 1.0;
    IqStream soi_payload;
    std::vector<InterfererParams> interferers;
    double half_bit_T = kHalfBit;
    double noise_std = 0.0;

    double sir() const;
    double sir_db() const;
};

double db_to_amplitude_ratio(double sir_db);

}  // namespace collide
