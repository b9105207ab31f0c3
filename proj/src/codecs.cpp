#include "monocode/codecs.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <optional>

#include "monocode/bitio.hpp"
#include "monocode/entropy_coder.hpp"
#include "monocode/error.hpp"
#include "monocode/param_codec.hpp"

namespace mono {

namespace {

constexpr std::uint8_t kMagic[5] = {'M', 'O', 'N', 'O', '1'};
constexpr std::uint8_t kVersion = 1;
constexpr std::size_t kPreambleBytes = 6;
constexpr std::uint64_t kFreqTotal = kMaxFrequencyTotal;
constexpr unsigned kFreqShift = kUnitBits - 30;

std::uint64_t grid_n(std::uint64_t n) { return std::max<std::uint64_t>(n, 2); }

Grid make_grid(const GridSpec& spec, Errc on_failure) {
    try {
        return Grid::build(spec);
    } catch (const Error& e) {
        fail(on_failure, e.what());
    }
}

bool cube_exceeds(std::uint64_t m, std::uint64_t n) {
    if (m >= (std::uint64_t{1} << 21)) return true;
    return m * m * m > n;
}

std::uint64_t freq_of(std::uint64_t units) { return std::max<std::uint64_t>(1, units >> kFreqShift); }

// Pass-1 model: symbols 1..support, then TAIL when tail > 0. theta'_1 takes the remainder.
FrequencyTable head_table(const QuantizedParams& qp, const Grid* g, std::uint64_t tail, std::uint64_t n,
                          Errc on_failure) {
    std::vector<std::uint64_t> f(qp.support + (tail > 0 ? 1 : 0), 0);
    std::uint64_t rest = 0;
    for (std::size_t i = 0; i < qp.indices.size(); ++i) {
        f[i + 1] = freq_of(g->point(qp.indices[i]));
        rest += f[i + 1];
    }
    if (tail > 0) {
        std::uint64_t ft = static_cast<std::uint64_t>(static_cast<unsigned __int128>(tail) * kFreqTotal / n);
        f.back() = std::max<std::uint64_t>(1, ft);
        rest += f.back();
    }
    if (qp.support > 0) {
        if (rest >= kFreqTotal) fail(on_failure, "no frequency left for the leading symbol");
        f[0] = kFreqTotal - rest;
    }
    return FrequencyTable(std::move(f));
}

struct Draft {
    BitWriter w;
    LengthBreakdown bits;
    long double ideal = 0;
    CodecConfig config;
    std::size_t unpadded() const { return bits.total_bits() - bits.padding; }
};

template <class F>
std::size_t measure(BitWriter& w, F&& f) {
    std::size_t start = w.bit_count();
    f();
    return w.bit_count() - start;
}

void begin(Draft& d, std::uint64_t n, const CodecConfig& cfg) {
    d.config = cfg;
    d.bits.length = measure(d.w, [&] { elias_delta_encode(d.w, n); });
    d.bits.mode = measure(d.w, [&] {
        write_fixed(d.w, static_cast<std::uint64_t>(cfg.mode), 2);
        if (cfg.mode == Mode::individual) d.w.write_bit(cfg.monotone);
    });
}

void end(Draft& d, BitString payload) {
    d.bits.payload = payload.bit_count;
    d.bits.payload_length = measure(d.w, [&] { elias_delta_encode(d.w, payload.bit_count + 1); });
    d.w.append(payload);
    d.bits.padding = (8 - d.w.bit_count() % 8) % 8;
}

EncodeResult finish(Draft&& d) {
    EncodeResult r;
    r.config = d.config;
    r.bits = d.bits;
    r.ideal_payload_bits = static_cast<double>(d.ideal);
    r.bytes.assign(std::begin(kMagic), std::end(kMagic));
    r.bytes.push_back(kVersion);
    BitString body = d.w.take();
    r.bytes.insert(r.bytes.end(), body.bytes.begin(), body.bytes.end());
    return r;
}

struct Source {
    std::span<const Symbol> x;
    EmpiricalCounts counts;
};

Source make_source(std::span<const Symbol> x) {
    if (x.empty()) fail(Errc::invalid_argument, "n >= 1 required");
    if (x.size() > kMaxSequenceLength) fail(Errc::invalid_argument, "sequence longer than 2^30 symbols");
    return {x, EmpiricalCounts::from_sequence(x)};
}

BitString code_single(const Source& s, const FrequencyTable& table, long double& ideal) {
    BitWriter w;
    ArithmeticEncoder enc(w);
    for (Symbol v : s.x) {
        enc.encode(v - 1, table);
        ideal += table.cost(v - 1);
    }
    enc.finish();
    return w.take();
}

// SMALL_K and LARGE share everything but the grid and the parameter scheme.
Draft draft_dense(const Source& s, const CodecConfig& cfg) {
    const std::uint64_t n = s.counts.n();
    const Symbol k = s.counts.k_max();
    const bool small = cfg.mode == Mode::small_k;
    if (small && cfg.k_hat < k) fail(Errc::invalid_argument, "symbol exceeds k_hat");
    if (k > kMaxDenseAlphabet || (small && cfg.k_hat > kMaxDenseAlphabet))
        fail(Errc::quantization_infeasible, "alphabet too large for a dense model");
    GridSpec spec = small ? GridSpec{GridMode::small_k, grid_n(n), cfg.k_hat} : GridSpec{GridMode::large, grid_n(n), 1};
    Grid g = make_grid(spec, Errc::quantization_infeasible);
    if (static_cast<unsigned __int128>(k) * g.first_point() > kUnit)
        fail(Errc::quantization_infeasible, "grid cannot host this many parameters");
    auto theta = expand_blocks(pava_blocks(s.counts, k), n);
    QuantizedParams qp = quantize_monotone(theta, g);

    Draft d;
    begin(d, n, cfg);
    if (small) {
        d.bits.alphabet = measure(d.w, [&] { elias_delta_encode(d.w, cfg.k_hat); });
        d.bits.support = measure(d.w, [&] { write_fixed(d.w, qp.support - 1, ceil_log2(cfg.k_hat)); });
        d.bits.params = encode_params_differential(qp, g, d.w);
    } else {
        d.bits.params = encode_params_counts(qp, g, d.w);
    }
    FrequencyTable table = head_table(qp, &g, 0, n, Errc::quantization_infeasible);
    end(d, code_single(s, table, d.ideal));
    return d;
}

GridSpec clustered_grid(Mode mode, std::uint64_t n, std::uint64_t m, bool& counts_scheme) {
    const std::uint64_t gn = grid_n(n);
    if (mode == Mode::fast) {
        counts_scheme = cube_exceeds(m, n);
        return {GridMode::fast, gn, m, 1, 3};
    }
    bool small = m <= (std::uint64_t{1} << 31) && m * m <= n;
    counts_scheme = !small;
    return small ? GridSpec{GridMode::ind_small, gn, m} : GridSpec{GridMode::ind_large, gn, m, 1, 2};
}

// FAST and the monotone INDIVIDUAL branch: head over 1..m, clustered tail listed explicitly.
Draft draft_clustered(const Source& s, const CodecConfig& cfg) {
    const std::uint64_t n = s.counts.n();
    const std::uint64_t m = cfg.m;
    if (m < 2 || m > kMaxSymbol) fail(Errc::invalid_argument, "effective alphabet m must be >= 2");
    const std::uint64_t tail = s.counts.tail_count(m);
    const Symbol support = tail < n ? s.counts.largest_at_most(m) : 0;
    if (support > kMaxDenseAlphabet) fail(Errc::quantization_infeasible, "alphabet too large for a dense model");

    bool counts_scheme = false;
    GridSpec spec = clustered_grid(cfg.mode, n, m, counts_scheme);
    std::optional<Grid> g;
    QuantizedParams qp;
    if (support > 0) {
        g = make_grid(spec, Errc::quantization_infeasible);
        if (static_cast<unsigned __int128>(support) * g->first_point() * n > static_cast<unsigned __int128>(n - tail) * kUnit)
            fail(Errc::quantization_infeasible, "grid cannot host this many parameters");
        auto theta = expand_blocks(pava_blocks(s.counts, support), n);
        qp = quantize_monotone(theta, *g, {n - tail, n});
    }

    Draft d;
    begin(d, n, cfg);
    d.bits.alphabet = measure(d.w, [&] { elias_delta_encode(d.w, m); });
    d.bits.tail_mass = measure(d.w, [&] { write_fixed(d.w, tail, bits_for(n)); });
    if (support > 0) {
        if (counts_scheme) {
            d.bits.params = encode_params_counts(qp, *g, d.w);
        } else {
            d.bits.support = measure(d.w, [&] { write_fixed(d.w, support - 1, ceil_log2(m)); });
            d.bits.params = encode_params_differential(qp, *g, d.w);
        }
    }
    const auto& entries = s.counts.entries();
    auto first_tail = std::upper_bound(entries.begin(), entries.end(), m,
                                       [](Symbol v, const auto& e) { return v < e.first; });
    std::vector<Symbol> tail_symbols;
    std::vector<std::uint64_t> tail_freqs;
    for (auto it = first_tail; it != entries.end(); ++it) {
        tail_symbols.push_back(it->first);
        tail_freqs.push_back(it->second);
    }
    d.bits.tail_distinct = measure(d.w, [&] { write_fixed(d.w, tail_symbols.size(), bits_for(n)); });
    d.bits.tail_list = measure(d.w, [&] {
        for (std::size_t i = 0; i < tail_symbols.size(); ++i) {
            elias_gamma_encode(d.w, tail_symbols[i]);
            write_fixed(d.w, tail_freqs[i] - 1, ceil_log2(n));
        }
    });

    FrequencyTable head = head_table(qp, g ? &*g : nullptr, tail, n, Errc::quantization_infeasible);
    BitWriter pw;
    ArithmeticEncoder enc(pw);
    for (Symbol v : s.x) {
        std::size_t idx = v <= m ? v - 1 : support;
        enc.encode(idx, head);
        d.ideal += head.cost(idx);
    }
    if (tail > 0) {
        FrequencyTable tail_table(tail_freqs);
        for (Symbol v : s.x) {
            if (v <= m) continue;
            std::size_t idx = std::lower_bound(tail_symbols.begin(), tail_symbols.end(), v) - tail_symbols.begin();
            enc.encode(idx, tail_table);
            d.ideal += tail_table.cost(idx);
        }
    }
    enc.finish();
    end(d, pw.take());
    return d;
}

// Nearest SMALL_K grid point to count/n; values below the grid take its first point.
std::uint64_t nearest_index(const Grid& g, std::uint64_t count, std::uint64_t n) {
    std::uint64_t t = static_cast<std::uint64_t>((static_cast<unsigned __int128>(count) << kUnitBits) / n);
    auto lo = g.floor_index(t);
    if (!lo) return 0;
    if (*lo + 1 < g.size() && g.point(*lo + 1) - t < t - g.point(*lo)) return *lo + 1;
    return *lo;
}

Symbol leader_of(const EmpiricalCounts& c) {
    Symbol best = 0;
    std::uint64_t best_count = 0;
    for (auto [s, k] : c.entries())
        if (k > best_count) best = s, best_count = k;
    return best;
}

// Plain INDIVIDUAL branch: each symbol's empirical frequency on a SMALL_K grid, leader takes the rest.
Draft draft_plain(const Source& s, const CodecConfig& cfg) {
    const std::uint64_t n = s.counts.n();
    const Symbol k = s.counts.k_max();
    if (k > kMaxDenseAlphabet) fail(Errc::quantization_infeasible, "alphabet too large for a dense model");
    const Symbol leader = leader_of(s.counts);
    std::optional<Grid> g;
    if (k > 1) g = make_grid({GridMode::small_k, grid_n(n), k}, Errc::quantization_infeasible);

    std::vector<std::uint64_t> codes(k, 0);
    std::vector<std::uint64_t> freqs(k, 0);
    std::uint64_t rest = 0;
    for (auto [sym, cnt] : s.counts.entries()) {
        if (sym == leader) continue;
        std::uint64_t b = nearest_index(*g, cnt, n);
        codes[sym - 1] = b + 1;
        freqs[sym - 1] = freq_of(g->point(b));
        rest += freqs[sym - 1];
    }
    if (rest >= kFreqTotal) fail(Errc::quantization_infeasible, "no frequency left for the leading symbol");
    freqs[leader - 1] = kFreqTotal - rest;

    Draft d;
    begin(d, n, cfg);
    d.bits.alphabet = measure(d.w, [&] { elias_delta_encode(d.w, k); });
    d.bits.support = measure(d.w, [&] { write_fixed(d.w, leader - 1, ceil_log2(k)); });
    d.bits.params = measure(d.w, [&] {
        for (Symbol i = 1; i <= k; ++i)
            if (i != leader) elias_delta_encode(d.w, codes[i - 1] + 1);
    });
    FrequencyTable table(std::move(freqs));
    end(d, code_single(s, table, d.ideal));
    return d;
}

Draft draft(const Source& s, const CodecConfig& cfg) {
    switch (cfg.mode) {
        case Mode::small_k:
        case Mode::large: return draft_dense(s, cfg);
        case Mode::fast: return draft_clustered(s, cfg);
        case Mode::individual: return cfg.monotone ? draft_clustered(s, cfg) : draft_plain(s, cfg);
    }
    fail(Errc::invalid_argument, "unknown mode");
}

std::vector<std::uint64_t> m_candidates(const EmpiricalCounts& c) {
    std::vector<std::uint64_t> ms;
    const Symbol k = c.k_max();
    for (std::uint64_t p = 2; p <= k; p <<= 1) ms.push_back(p);
    ms.push_back(k);
    ms.push_back(c.n() > 1 ? ceil_log2(c.n()) : 1);
    std::erase_if(ms, [](std::uint64_t m) { return m < 2; });
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    if (ms.empty()) ms.push_back(2);
    return ms;
}

bool better(const Draft& a, const Draft& b) {
    if (a.unpadded() != b.unpadded()) return a.unpadded() < b.unpadded();
    if (a.config.mode != b.config.mode) return a.config.mode < b.config.mode;
    if (a.config.monotone != b.config.monotone) return a.config.monotone;
    return std::max(a.config.m, a.config.k_hat) < std::max(b.config.m, b.config.k_hat);
}

std::optional<Draft> best_of(const Source& s, const std::vector<CodecConfig>& configs) {
    std::optional<Draft> best;
    for (const auto& cfg : configs) {
        try {
            Draft d = draft(s, cfg);
            if (!best || better(d, *best)) best = std::move(d);
        } catch (const Error& e) {
            if (e.code() != Errc::quantization_infeasible) throw;
        }
    }
    return best;
}

// Decoding.

std::uint64_t read_bounded(BitReader& r, unsigned width, std::uint64_t max, const char* what) {
    std::uint64_t v = read_fixed(r, width);
    if (v > max) fail(Errc::corrupt_stream, what);
    return v;
}

std::vector<Symbol> decode_body(BitReader& r, DecodeResult& out) {
    const std::uint64_t n = elias_delta_decode(r);
    if (n > kMaxSequenceLength) fail(Errc::corrupt_stream, "sequence length out of range");
    CodecConfig cfg;
    cfg.mode = static_cast<Mode>(read_fixed(r, 2));
    if (cfg.mode == Mode::individual) cfg.monotone = r.read_bit();
    const std::uint64_t gn = grid_n(n);

    std::vector<Symbol> x;
    x.reserve(std::min<std::uint64_t>(n, kMaxDenseAlphabet));
    auto read_payload_length = [&] {
        std::uint64_t bits = elias_delta_decode(r) - 1;
        if (bits > r.remaining()) fail(Errc::truncated_stream, "payload shorter than its declared length");
        return static_cast<std::size_t>(bits);
    };

    const bool clustered = cfg.mode == Mode::fast || (cfg.mode == Mode::individual && cfg.monotone);
    if (cfg.mode == Mode::small_k || cfg.mode == Mode::large) {
        QuantizedParams qp;
        std::optional<Grid> g;
        if (cfg.mode == Mode::small_k) {
            cfg.k_hat = elias_delta_decode(r);
            if (cfg.k_hat > kMaxDenseAlphabet) fail(Errc::corrupt_stream, "alphabet bound out of range");
            std::uint64_t support = read_bounded(r, ceil_log2(cfg.k_hat), cfg.k_hat - 1, "support exceeds k_hat") + 1;
            g = make_grid({GridMode::small_k, gn, cfg.k_hat}, Errc::corrupt_stream);
            qp = decode_params_differential(r, *g, support);
        } else {
            g = make_grid({GridMode::large, gn, 1}, Errc::corrupt_stream);
            qp = decode_params_counts(r, *g, kMaxDenseAlphabet);
        }
        if (qp.leading_scaled(*g) < static_cast<__int128>(qp.indices.empty() ? 0 : g->point(qp.indices[0])))
            fail(Errc::corrupt_stream, "decoded parameters are not monotone");
        FrequencyTable table = head_table(qp, &*g, 0, n, Errc::corrupt_stream);
        std::size_t payload_bits = read_payload_length();
        out.payload_bits = payload_bits;
        ArithmeticDecoder dec(r, payload_bits);
        for (std::uint64_t t = 0; t < n; ++t) x.push_back(dec.decode(table) + 1);
        dec.finish();
    } else if (clustered) {
        cfg.m = elias_delta_decode(r);
        if (cfg.m < 2 || cfg.m > kMaxSymbol) fail(Errc::corrupt_stream, "effective alphabet out of range");
        const std::uint64_t m = cfg.m;
        const std::uint64_t tail = read_bounded(r, bits_for(n), n, "tail count exceeds n");
        bool counts_scheme = false;
        GridSpec spec = clustered_grid(cfg.mode, n, m, counts_scheme);
        std::optional<Grid> g;
        QuantizedParams qp;
        const HeadMass head{n - tail, n};
        if (tail < n) {
            g = make_grid(spec, Errc::corrupt_stream);
            std::uint64_t cap = std::min<std::uint64_t>(m, kMaxDenseAlphabet);
            if (counts_scheme) {
                qp = decode_params_counts(r, *g, cap, head);
            } else {
                std::uint64_t support = read_bounded(r, ceil_log2(m), m - 1, "support exceeds m") + 1;
                if (support > cap) fail(Errc::corrupt_stream, "support out of range");
                qp = decode_params_differential(r, *g, support, head);
            }
            if (qp.leading_scaled(*g) <= 0) fail(Errc::corrupt_stream, "decoded parameters exceed the head mass");
        }
        const std::uint64_t distinct = read_bounded(r, bits_for(n), tail, "distinct tail count exceeds tail");
        if ((distinct == 0) != (tail == 0)) fail(Errc::corrupt_stream, "tail list inconsistent with tail count");
        std::vector<Symbol> tail_symbols;
        std::vector<std::uint64_t> tail_freqs;
        std::uint64_t tail_sum = 0;
        Symbol prev = m;
        for (std::uint64_t i = 0; i < distinct; ++i) {
            Symbol v = elias_gamma_decode(r);
            if (v <= prev || v > kMaxSymbol) fail(Errc::corrupt_stream, "tail symbols not increasing");
            std::uint64_t f = read_fixed(r, ceil_log2(n)) + 1;
            tail_sum += f;
            if (tail_sum > tail) fail(Errc::corrupt_stream, "tail counts exceed tail");
            tail_symbols.push_back(v);
            tail_freqs.push_back(f);
            prev = v;
        }
        if (tail_sum != tail) fail(Errc::corrupt_stream, "tail counts do not sum to the tail");
        FrequencyTable head_model = head_table(qp, g ? &*g : nullptr, tail, n, Errc::corrupt_stream);
        std::size_t payload_bits = read_payload_length();
        out.payload_bits = payload_bits;
        ArithmeticDecoder dec(r, payload_bits);
        const std::size_t tail_index = qp.support;
        std::vector<std::size_t> tail_positions;
        for (std::uint64_t t = 0; t < n; ++t) {
            std::size_t idx = dec.decode(head_model);
            if (idx == tail_index && tail > 0) {
                tail_positions.push_back(x.size());
                x.push_back(0);
            } else {
                x.push_back(idx + 1);
            }
        }
        if (tail_positions.size() != tail) fail(Errc::corrupt_stream, "tail occurrences do not match the tail count");
        if (tail > 0) {
            FrequencyTable tail_model(tail_freqs);
            for (std::size_t pos : tail_positions) x[pos] = tail_symbols[dec.decode(tail_model)];
        }
        dec.finish();
    } else {
        const Symbol k = elias_delta_decode(r);
        if (k > kMaxDenseAlphabet) fail(Errc::corrupt_stream, "alphabet out of range");
        const Symbol leader = read_bounded(r, ceil_log2(k), k - 1, "leader exceeds alphabet") + 1;
        std::optional<Grid> g;
        if (k > 1) g = make_grid({GridMode::small_k, gn, k}, Errc::corrupt_stream);
        std::vector<std::uint64_t> freqs(k, 0);
        std::uint64_t rest = 0;
        for (Symbol i = 1; i <= k; ++i) {
            if (i == leader) continue;
            std::uint64_t code = elias_delta_decode(r) - 1;
            if (code == 0) continue;
            if (code > g->size()) fail(Errc::corrupt_stream, "grid index out of range");
            freqs[i - 1] = freq_of(g->point(code - 1));
            rest += freqs[i - 1];
            if (rest >= kFreqTotal) fail(Errc::corrupt_stream, "frequencies exceed the model total");
        }
        freqs[leader - 1] = kFreqTotal - rest;
        FrequencyTable table(std::move(freqs));
        std::size_t payload_bits = read_payload_length();
        out.payload_bits = payload_bits;
        ArithmeticDecoder dec(r, payload_bits);
        for (std::uint64_t t = 0; t < n; ++t) {
            std::size_t idx = dec.decode(table);
            if (table.freq(idx) == 0) fail(Errc::corrupt_stream, "decoded a symbol outside the model");
            x.push_back(idx + 1);
        }
        dec.finish();
        cfg.k_hat = 0;
    }
    if (n == 0) fail(Errc::corrupt_stream, "empty sequence");
    out.config = cfg;
    return x;
}

}  // namespace

const char* mode_name(Mode m) noexcept {
    switch (m) {
        case Mode::small_k: return "small_k";
        case Mode::large: return "large";
        case Mode::fast: return "fast";
        case Mode::individual: return "individual";
    }
    return "unknown";
}

EncodeResult encode(std::span<const Symbol> x, const CodecConfig& config) {
    Source s = make_source(x);
    return finish(draft(s, config));
}

EncodeResult encode_small(std::span<const Symbol> x, std::uint64_t k_hat) {
    return encode(x, {Mode::small_k, k_hat, 0, true});
}

EncodeResult encode_large(std::span<const Symbol> x) { return encode(x, {Mode::large, 0, 0, true}); }

EncodeResult encode_fast(std::span<const Symbol> x, std::uint64_t m) { return encode(x, {Mode::fast, 0, m, true}); }

EncodeResult encode_individual(std::span<const Symbol> x) { return compress(x, Mode::individual); }

std::vector<CodecConfig> candidate_configs(const EmpiricalCounts& c, Mode only) {
    std::vector<CodecConfig> out;
    const Symbol k = c.k_max();
    switch (only) {
        case Mode::small_k: {
            out.push_back({Mode::small_k, k, 0, true});
            const double cap = std::cbrt(static_cast<double>(c.n()));
            for (std::uint64_t p = 1; p <= kMaxDenseAlphabet && static_cast<double>(p) <= cap; p <<= 1)
                if (p > k) out.push_back({Mode::small_k, p, 0, true});
            break;
        }
        case Mode::large: out.push_back({Mode::large, 0, 0, true}); break;
        case Mode::fast:
            for (std::uint64_t m : m_candidates(c)) out.push_back({Mode::fast, 0, m, true});
            break;
        case Mode::individual:
            for (std::uint64_t m : m_candidates(c)) out.push_back({Mode::individual, 0, m, true});
            out.push_back({Mode::individual, 0, 0, false});
            break;
    }
    return out;
}

std::vector<CodecConfig> candidate_configs(const EmpiricalCounts& c) {
    std::vector<CodecConfig> out;
    for (Mode m : {Mode::small_k, Mode::large, Mode::fast, Mode::individual}) {
        auto part = candidate_configs(c, m);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

CodecConfig choose_config(std::span<const Symbol> x) { return compress(x).config; }

EncodeResult compress(std::span<const Symbol> x) {
    Source s = make_source(x);
    auto best = best_of(s, candidate_configs(s.counts));
    if (!best) fail(Errc::quantization_infeasible, "no feasible configuration");
    return finish(std::move(*best));
}

EncodeResult compress(std::span<const Symbol> x, Mode mode) {
    Source s = make_source(x);
    auto best = best_of(s, candidate_configs(s.counts, mode));
    if (!best) fail(Errc::quantization_infeasible, "no feasible configuration for this mode");
    return finish(std::move(*best));
}

DecodeResult decode_detailed(std::span<const std::uint8_t> container) {
    const std::size_t head = std::min(container.size(), sizeof(kMagic));
    if (std::memcmp(container.data(), kMagic, head) != 0) fail(Errc::bad_magic, "not a MONO1 container");
    if (container.size() < kPreambleBytes) fail(Errc::truncated_stream, "container shorter than its header");
    if (container[5] != kVersion) fail(Errc::bad_version, "unsupported container version");
    auto body = container.subspan(kPreambleBytes);
    BitReader r(body, body.size() * 8);
    DecodeResult out;
    try {
        out.symbols = decode_body(r, out);
    } catch (const Error& e) {
        if (e.code() == Errc::invalid_argument || e.code() == Errc::model_mismatch ||
            e.code() == Errc::quantization_infeasible)
            fail(Errc::corrupt_stream, e.what());
        throw;
    }
    if (r.remaining() >= 8) fail(Errc::corrupt_stream, "trailing bytes after payload");
    while (r.remaining() > 0)
        if (r.read_bit()) fail(Errc::corrupt_stream, "nonzero padding");
    return out;
}

std::vector<Symbol> decode(std::span<const std::uint8_t> container) { return decode_detailed(container).symbols; }

}  // namespace mono
