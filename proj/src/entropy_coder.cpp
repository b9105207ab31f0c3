#include "monocode/entropy_coder.hpp"

#include <algorithm>
#include <cmath>

#include "monocode/error.hpp"

namespace mono {

namespace {

constexpr unsigned kPrecision = 62;
constexpr std::uint64_t kTop = (std::uint64_t{1} << kPrecision) - 1;
constexpr std::uint64_t kHalf = std::uint64_t{1} << (kPrecision - 1);
constexpr std::uint64_t kQuarter = std::uint64_t{1} << (kPrecision - 2);
constexpr std::uint64_t kThreeQuarters = 3 * kQuarter;

// Termination length: enough bits that the zero-padded value lands in [low, high]
// and the total never drops below -log2 of the final interval width.
unsigned termination_bits(std::uint64_t low, std::uint64_t high, std::uint64_t pending) {
    std::uint64_t range = high - low + 1;
    unsigned t = range > kTop ? 0 : range > kHalf ? 1 : 2;
    if (t == 0 && pending > 0) t = 1;
    return t;
}

}  // namespace

FrequencyTable::FrequencyTable(std::vector<std::uint64_t> freqs) : freqs_(std::move(freqs)) {
    if (freqs_.empty()) fail(Errc::invalid_argument, "frequency table is empty");
    cum_.resize(freqs_.size() + 1);
    cum_[0] = 0;
    for (std::size_t i = 0; i < freqs_.size(); ++i) {
        if (freqs_[i] > kMaxFrequencyTotal) fail(Errc::invalid_argument, "frequency exceeds 2^30");
        cum_[i + 1] = cum_[i] + freqs_[i];
        if (cum_[i + 1] > kMaxFrequencyTotal) fail(Errc::invalid_argument, "frequency total exceeds 2^30");
    }
    if (cum_.back() == 0) fail(Errc::invalid_argument, "frequency total is zero");
}

std::size_t FrequencyTable::symbol_for(std::uint64_t target) const {
    auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
    return static_cast<std::size_t>(it - cum_.begin()) - 1;
}

long double FrequencyTable::cost(std::size_t s) const {
    return std::log2(static_cast<long double>(total())) - std::log2(static_cast<long double>(freqs_[s]));
}

ArithmeticEncoder::ArithmeticEncoder(BitWriter& out)
    : out_(out), start_(out.bit_count()), high_(kTop) {}

void ArithmeticEncoder::emit(bool bit) {
    out_.write_bit(bit);
    for (; pending_ > 0; --pending_) out_.write_bit(!bit);
}

void ArithmeticEncoder::encode(std::size_t symbol, const FrequencyTable& table) {
    if (finished_) fail(Errc::invalid_argument, "encoder already finished");
    if (symbol >= table.size() || table.freq(symbol) == 0)
        fail(Errc::model_mismatch, "symbol has zero frequency");
    std::uint64_t r = (high_ - low_ + 1) / table.total();
    high_ = low_ + r * table.cum_high(symbol) - 1;
    low_ = low_ + r * table.cum_low(symbol);
    for (;;) {
        if (high_ < kHalf) {
            emit(false);
        } else if (low_ >= kHalf) {
            emit(true);
            low_ -= kHalf;
            high_ -= kHalf;
        } else if (low_ >= kQuarter && high_ < kThreeQuarters) {
            ++pending_;
            low_ -= kQuarter;
            high_ -= kQuarter;
        } else {
            break;
        }
        low_ <<= 1;
        high_ = (high_ << 1) | 1u;
    }
}

void ArithmeticEncoder::finish() {
    if (finished_) return;
    finished_ = true;
    unsigned t = termination_bits(low_, high_, pending_);
    if (t >= 1) emit(true);
    if (t == 2) out_.write_bit(false);
}

ArithmeticDecoder::ArithmeticDecoder(BitReader& in, std::size_t payload_bits)
    : in_(in), start_(in.position()), payload_bits_(payload_bits), high_(kTop) {
    for (unsigned i = 0; i < kPrecision; ++i) shift_in();
}

void ArithmeticDecoder::shift_in() {
    bool bit = false;
    if (in_.position() - start_ < payload_bits_ && in_.remaining() > 0) bit = in_.read_bit();
    value_ = (value_ << 1) | (bit ? 1u : 0u);
}

std::size_t ArithmeticDecoder::decode(const FrequencyTable& table) {
    std::uint64_t r = (high_ - low_ + 1) / table.total();
    std::uint64_t target = (value_ - low_) / r;
    if (target >= table.total()) fail(Errc::corrupt_stream, "arithmetic code value outside model range");
    std::size_t s = table.symbol_for(target);
    high_ = low_ + r * table.cum_high(s) - 1;
    low_ = low_ + r * table.cum_low(s);
    for (;;) {
        std::uint64_t offset;
        if (high_ < kHalf) {
            offset = 0;
            emitted_ += 1 + pending_;
            pending_ = 0;
        } else if (low_ >= kHalf) {
            offset = kHalf;
            emitted_ += 1 + pending_;
            pending_ = 0;
        } else if (low_ >= kQuarter && high_ < kThreeQuarters) {
            offset = kQuarter;
            ++pending_;
        } else {
            break;
        }
        low_ = (low_ - offset) << 1;
        high_ = ((high_ - offset) << 1) | 1u;
        value_ -= offset;
        shift_in();
    }
    return s;
}

void ArithmeticDecoder::finish() {
    unsigned t = termination_bits(low_, high_, pending_);
    std::size_t expected = emitted_ + (t > 0 ? t + pending_ : 0);
    std::size_t available = std::min(payload_bits_, in_.position() - start_ + in_.remaining());
    if (expected > available) fail(Errc::truncated_stream, "arithmetic payload shorter than its encoding");
    if (expected != payload_bits_) fail(Errc::corrupt_stream, "arithmetic payload length mismatch");
    std::size_t consumed = in_.position() - start_;
    if (consumed < payload_bits_) in_.skip(payload_bits_ - consumed);
}

BitString ac_encode(std::span<const std::size_t> symbols, const FrequencyTable& table) {
    BitWriter w;
    ArithmeticEncoder enc(w);
    for (std::size_t s : symbols) enc.encode(s, table);
    enc.finish();
    return w.take();
}

std::vector<std::size_t> ac_decode(const BitString& bits, const FrequencyTable& table, std::size_t n) {
    BitReader r(bits);
    ArithmeticDecoder dec(r, bits.bit_count);
    std::vector<std::size_t> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(dec.decode(table));
    dec.finish();
    return out;
}

long double ideal_code_length(std::span<const std::size_t> symbols, const FrequencyTable& table) {
    long double bits = 0;
    for (std::size_t s : symbols) {
        if (s >= table.size() || table.freq(s) == 0) fail(Errc::model_mismatch, "symbol has zero frequency");
        bits += table.cost(s);
    }
    return bits;
}

}  // namespace mono
