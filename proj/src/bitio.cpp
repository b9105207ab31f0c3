#include "monocode/bitio.hpp"

#include <bit>

#include "monocode/error.hpp"

namespace mono {

const char* errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::invalid_argument: return "invalid argument";
        case Errc::truncated_stream: return "truncated stream";
        case Errc::corrupt_stream: return "corrupt stream";
        case Errc::bad_magic: return "bad magic";
        case Errc::bad_version: return "unsupported version";
        case Errc::model_mismatch: return "model mismatch";
        case Errc::quantization_infeasible: return "quantization infeasible";
        case Errc::budget_exceeded: return "budget exceeded";
        case Errc::io_error: return "I/O error";
    }
    return "unknown error";
}

std::string BitString::to_string() const {
    std::string s;
    s.reserve(bit_count);
    for (std::size_t i = 0; i < bit_count; ++i) s.push_back(bit(i) ? '1' : '0');
    return s;
}

BitString BitString::from_string(const std::string& bits) {
    BitWriter w;
    for (char c : bits) {
        if (c != '0' && c != '1') fail(Errc::invalid_argument, "bit string must contain only 0/1");
        w.write_bit(c == '1');
    }
    return w.take();
}

void BitWriter::write_bit(bool b) {
    if ((bit_count_ & 7) == 0) bytes_.push_back(0);
    if (b) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bit_count_ & 7));
    ++bit_count_;
}

void BitWriter::write_bits(std::uint64_t value, unsigned width) {
    for (unsigned i = width; i-- > 0;) write_bit((value >> i) & 1u);
}

void BitWriter::append(const BitString& bits) {
    if ((bit_count_ & 7) == 0) {
        bytes_.insert(bytes_.end(), bits.bytes.begin(), bits.bytes.end());
        bit_count_ += bits.bit_count;
        return;
    }
    for (std::size_t i = 0; i < bits.bit_count; ++i) write_bit(bits.bit(i));
}

BitString BitWriter::take() {
    BitString out{std::move(bytes_), bit_count_};
    bytes_.clear();
    bit_count_ = 0;
    return out;
}

BitReader::BitReader(std::span<const std::uint8_t> bytes, std::size_t bit_count, std::size_t start)
    : bytes_(bytes), pos_(start), limit_(bit_count) {
    if (bit_count > bytes.size() * 8 || start > bit_count)
        fail(Errc::invalid_argument, "bit reader bounds exceed buffer");
}

bool BitReader::read_bit() {
    if (pos_ >= limit_) fail(Errc::truncated_stream, "stream exhausted");
    bool b = (bytes_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1u;
    ++pos_;
    return b;
}

bool BitReader::read_bit_or_zero() {
    if (pos_ >= limit_) {
        ++pos_;
        return false;
    }
    return read_bit();
}

std::uint64_t BitReader::read_bits(unsigned width) {
    if (width > 64) fail(Errc::invalid_argument, "width > 64");
    if (remaining() < width) fail(Errc::truncated_stream, "stream exhausted");
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) v = (v << 1) | (read_bit() ? 1u : 0u);
    return v;
}

void BitReader::skip(std::size_t bits) {
    if (remaining() < bits) fail(Errc::truncated_stream, "stream exhausted");
    pos_ += bits;
}

unsigned floor_log2(std::uint64_t v) {
    if (v == 0) fail(Errc::invalid_argument, "log2 of zero");
    return 63u - static_cast<unsigned>(std::countl_zero(v));
}

unsigned ceil_log2(std::uint64_t v) {
    if (v == 0) fail(Errc::invalid_argument, "log2 of zero");
    return v == 1 ? 0u : floor_log2(v - 1) + 1;
}

unsigned bits_for(std::uint64_t v) { return v == 0 ? 0u : floor_log2(v) + 1; }

void write_fixed(BitWriter& w, std::uint64_t value, unsigned width) {
    if (width > 64 || (width < 64 && (value >> width) != 0))
        fail(Errc::invalid_argument, "value does not fit in fixed width");
    w.write_bits(value, width);
}

std::uint64_t read_fixed(BitReader& r, unsigned width) { return r.read_bits(width); }

void elias_gamma_encode(BitWriter& w, std::uint64_t i) {
    if (i == 0) fail(Errc::invalid_argument, "Elias codes need i >= 1");
    unsigned l = floor_log2(i);
    for (unsigned z = 0; z < l; ++z) w.write_bit(false);
    w.write_bits(i, l + 1);
}

void elias_delta_encode(BitWriter& w, std::uint64_t i) {
    if (i == 0) fail(Errc::invalid_argument, "Elias codes need i >= 1");
    unsigned l = floor_log2(i);
    elias_gamma_encode(w, l + 1);
    w.write_bits(i, l);
}

std::uint64_t elias_gamma_decode(BitReader& r) {
    unsigned zeros = 0;
    while (!r.read_bit()) {
        if (++zeros > 63) fail(Errc::corrupt_stream, "gamma prefix too long");
    }
    std::uint64_t v = 1;
    for (unsigned z = 0; z < zeros; ++z) v = (v << 1) | (r.read_bit() ? 1u : 0u);
    return v;
}

std::uint64_t elias_delta_decode(BitReader& r) {
    std::uint64_t len = elias_gamma_decode(r);
    if (len > 64) fail(Errc::corrupt_stream, "delta length field too large");
    std::uint64_t v = 1;
    for (std::uint64_t z = 1; z < len; ++z) v = (v << 1) | (r.read_bit() ? 1u : 0u);
    return v;
}

std::size_t gamma_length(std::uint64_t i) { return 1 + 2 * std::size_t{floor_log2(i)}; }

std::size_t delta_length(std::uint64_t i) {
    unsigned l = floor_log2(i);
    return l + gamma_length(l + 1);
}

BitString elias_gamma(std::uint64_t i) {
    BitWriter w;
    elias_gamma_encode(w, i);
    return w.take();
}

BitString elias_delta(std::uint64_t i) {
    BitWriter w;
    elias_delta_encode(w, i);
    return w.take();
}

}  // namespace mono
