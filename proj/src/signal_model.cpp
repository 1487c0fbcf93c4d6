#include "collide/signal_model.hpp"

#include <cmath>
#include <numbers>

namespace collide {

namespace {

constexpr ChipTable::Row parse_row(const char (&s)[kChipsPerSymbol + 1]) {
    ChipTable::Row r{};
    for (std::size_t n = 0; n < r.size(); ++n) r[n] = static_cast<std::uint8_t>(s[n] - '0');
    return r;
}

// Table bit-exact to the IEEE 802.15.4 2.4 GHz PHY.
constexpr std::array<ChipTable::Row, kSymbolCount> kIeee802154Rows = {
    parse_row("11011001110000110101001000101110"),
    parse_row("11101101100111000011010100100010"),
    parse_row("00101110110110011100001101010010"),
    parse_row("00100010111011011001110000110101"),
    parse_row("01010010001011101101100111000011"),
    parse_row("00110101001000101110110110011100"),
    parse_row("11000011010100100010111011011001"),
    parse_row("10011100001101010010001011101101"),
    parse_row("10001100100101100000011101111011"),
    parse_row("10111000110010010110000001110111"),
    parse_row("01111011100011001001011000000111"),
    parse_row("01110111101110001100100101100000"),
    parse_row("00000111011110111000110010010110"),
    parse_row("01100000011101111011100011001001"),
    parse_row("10010110000001110111101110001100"),
    parse_row("11001001011000000111011110111000"),
};

std::vector<TernaryBit> random_bits(std::size_t n, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(0.5);
    std::vector<TernaryBit> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(coin(rng) ? 1 : -1);
    return out;
}

}  // namespace

IqStream::IqStream(std::vector<TernaryBit> i_bits, std::vector<TernaryBit> q_bits, long origin_index)
    : i_(std::move(i_bits)), q_(std::move(q_bits)), origin_(origin_index) {
    const auto ni = static_cast<long>(i_.size());
    const auto nq = static_cast<long>(q_.size());
    if (std::labs(ni - nq) > 1) throw std::invalid_argument("I and Q branch lengths differ by more than one bit");
}

IqStream IqStream::negated() const {
    auto flip = [](const std::vector<TernaryBit>& v) {
        std::vector<TernaryBit> out;
        out.reserve(v.size());
        for (auto b : v) out.push_back(-b);
        return out;
    };
    return IqStream(flip(i_), flip(q_), origin_);
}

IqStream multiplex_bits(std::span<const int> bits) {
    if (bits.empty()) throw std::invalid_argument("empty payload");
    std::vector<TernaryBit> i_bits, q_bits;
    i_bits.reserve((bits.size() + 1) / 2);
    q_bits.reserve(bits.size() / 2);
    for (std::size_t n = 0; n < bits.size(); ++n) {
        if (bits[n] != 1 && bits[n] != -1) throw std::invalid_argument("payload bits must be +1 or -1");
        (n % 2 == 0 ? i_bits : q_bits).emplace_back(bits[n]);
    }
    return IqStream(std::move(i_bits), std::move(q_bits));
}

std::vector<int> demultiplex_bits(const IqStream& stream) {
    std::vector<int> out;
    out.reserve(stream.size());
    const auto& i = stream.i_bits();
    const auto& q = stream.q_bits();
    for (std::size_t n = 0; n < i.size() || n < q.size(); ++n) {
        if (n < i.size()) out.push_back(i[n].value());
        if (n < q.size()) out.push_back(q[n].value());
    }
    return out;
}

ChipTable::ChipTable(const std::array<Row, kSymbolCount>& rows) : rows_(rows) {
    for (std::size_t s = 0; s < rows_.size(); ++s)
        for (std::size_t n = 0; n < kChipsPerSymbol; ++n) bipolar_[s][n] = rows_[s][n] ? 1.0 : -1.0;
}

const ChipTable& ChipTable::ieee802154() {
    static const ChipTable table(kIeee802154Rows);
    return table;
}

const ChipTable::Row& ChipTable::row(int symbol) const {
    if (symbol < 0 || symbol >= kSymbolCount) throw std::out_of_range("symbol must be in [0, 15]");
    return rows_[static_cast<std::size_t>(symbol)];
}

std::vector<int> spread_symbols(std::span<const int> symbols, const ChipTable& table) {
    std::vector<int> chips;
    chips.reserve(symbols.size() * kChipsPerSymbol);
    for (int s : symbols) {
        const auto& r = table.row(s);
        for (auto c : r) chips.push_back(c ? 1 : -1);
    }
    return chips;
}

IqStream random_payload(bool coded, int length_bits, std::mt19937_64& rng) {
    if (length_bits <= 0) throw std::invalid_argument("payload length must be positive");
    if (!coded) {
        auto bits = random_bits(static_cast<std::size_t>(length_bits), rng);
        std::vector<int> raw;
        raw.reserve(bits.size());
        for (auto b : bits) raw.push_back(b.value());
        return multiplex_bits(raw);
    }
    if (length_bits % kBitsPerSymbol != 0)
        throw std::invalid_argument("coded payload length must be a multiple of 4 bits");
    std::uniform_int_distribution<int> sym(0, kSymbolCount - 1);
    std::vector<int> symbols(static_cast<std::size_t>(length_bits / kBitsPerSymbol));
    for (auto& s : symbols) s = sym(rng);
    return multiplex_bits(spread_symbols(symbols));
}

std::pair<IqStream, IqStream> make_payload(PayloadMode mode, bool coded, int length_bits, std::mt19937_64& rng) {
    auto soi = random_payload(coded, length_bits, rng);
    if (mode == PayloadMode::Identical) return {soi, soi};
    auto other = random_payload(coded, length_bits, rng);
    return {std::move(soi), std::move(other)};
}

double normalize_phase(double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(phi, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
}

InterfererParams::InterfererParams(double amplitude_, double tau_, double phi_c_, IqStream payload_)
    : amplitude(amplitude_), tau(tau_), phi_c(normalize_phase(phi_c_)), payload(std::move(payload_)) {
    if (!(amplitude > 0.0)) throw std::invalid_argument("interferer amplitude must be positive");
}

double Scenario::sir() const {
    double interference = 0.0;
    for (const auto& u : interferers) interference += u.amplitude * u.amplitude;
    return soi_amplitude * soi_amplitude / interference;
}

double Scenario::sir_db() const { return 10.0 * std::log10(sir()); }

double db_to_amplitude_ratio(double sir_db) { return std::pow(10.0, -sir_db / 20.0); }

}  // namespace collide
