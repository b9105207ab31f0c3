// monocode: compress integer sequences with monotone-source codes, evaluate bounds, run experiments.
//
// Exit status: 0 success, 2 usage or input error, 3 I/O error.

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "monocode/bounds.hpp"
#include "monocode/codecs.hpp"
#include "monocode/error.hpp"
#include "monocode/lab.hpp"

namespace {

using namespace mono;

constexpr int kUsage = 2;
constexpr int kIo = 3;

struct ExitError {
    int code;
    std::string message;
};

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ExitError{kIo, "cannot open " + path};
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw ExitError{kIo, "cannot read " + path};
    return data;
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ExitError{kIo, "cannot open " + path + " for writing"};
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw ExitError{kIo, "cannot write " + path};
}

bool is_space(std::uint8_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

std::vector<Symbol> parse_text(const std::vector<std::uint8_t>& data) {
    std::vector<Symbol> x;
    std::size_t line = 1, col = 1, i = 0;
    while (i < data.size()) {
        if (is_space(data[i])) {
            if (data[i] == '\n') ++line, col = 0;
            ++i, ++col;
            continue;
        }
        std::size_t start = i, start_col = col;
        while (i < data.size() && !is_space(data[i])) ++i, ++col;
        const char* first = reinterpret_cast<const char*>(data.data() + start);
        const char* last = reinterpret_cast<const char*>(data.data() + i);
        Symbol v = 0;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last || v < 1 || v > kMaxSymbol) {
            throw ExitError{kUsage, "line " + std::to_string(line) + ", column " + std::to_string(start_col) +
                                        ": expected an integer in [1, 2^62], got '" + std::string(first, last) + "'"};
        }
        x.push_back(v);
    }
    return x;
}

std::vector<Symbol> parse_varint(const std::vector<std::uint8_t>& data) {
    std::vector<Symbol> x;
    std::size_t i = 0;
    while (i < data.size()) {
        std::size_t start = i;
        Symbol v = 0;
        unsigned shift = 0;
        while (true) {
            if (i >= data.size() || shift > 63)
                throw ExitError{kUsage, "byte " + std::to_string(start) + ": malformed varint"};
            std::uint8_t b = data[i++];
            v |= static_cast<Symbol>(b & 0x7f) << shift;
            if (!(b & 0x80)) break;
            shift += 7;
        }
        if (v < 1 || v > kMaxSymbol)
            throw ExitError{kUsage, "byte " + std::to_string(start) + ": value outside [1, 2^62]"};
        x.push_back(v);
    }
    return x;
}

std::vector<std::uint8_t> format_symbols(const std::vector<Symbol>& x, bool binary) {
    std::vector<std::uint8_t> out;
    if (binary) {
        for (Symbol v : x) {
            while (v >= 0x80) out.push_back(static_cast<std::uint8_t>(v | 0x80)), v >>= 7;
            out.push_back(static_cast<std::uint8_t>(v));
        }
        return out;
    }
    std::string s;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += std::to_string(x[i]);
        s += (i + 1 == x.size()) ? '\n' : ' ';
    }
    return {s.begin(), s.end()};
}

struct CompressArgs {
    std::string input, output, mode = "auto";
    std::uint64_t k = 0, m = 0;
    bool binary = false;
};

int run_compress(const CompressArgs& a) {
    auto data = read_file(a.input);
    auto x = a.binary ? parse_varint(data) : parse_text(data);
    if (x.empty()) throw ExitError{kUsage, "n >= 1 required"};
    EncodeResult r;
    if (a.mode == "auto") {
        r = compress(x);
    } else if (a.mode == "small") {
        r = a.k ? encode_small(x, a.k) : compress(x, Mode::small_k);
    } else if (a.mode == "large") {
        r = encode_large(x);
    } else if (a.mode == "fast") {
        r = a.m ? encode_fast(x, a.m) : compress(x, Mode::fast);
    } else {
        r = a.m ? encode(x, {Mode::individual, 0, a.m, true}) : compress(x, Mode::individual);
    }
    write_file(a.output, r.bytes);
    const double code = static_cast<double>(r.bits.code_bits());
    std::printf("n %zu\nconfig %s\ntotal_bits %zu\ncode_bits %zu\nideal_payload_bits %.3f\noverhead_bits %.3f\n",
                x.size(), config_label(r.config).c_str(), r.bits.total_bits(), r.bits.code_bits(),
                r.ideal_payload_bits, code - r.ideal_payload_bits);
    return 0;
}

int run_decompress(const std::string& input, const std::string& output, bool binary) {
    auto data = read_file(input);
    auto x = decode(data);
    write_file(output, format_symbols(x, binary));
    std::printf("n %zu\n", x.size());
    return 0;
}

SourceSpec family_spec(const std::string& family, double gamma, double p, std::uint64_t seed) {
    SourceSpec s;
    s.seed = seed;
    s.gamma = gamma;
    s.p = p;
    if (family == "powerlaw") s.family = Family::powerlaw;
    else if (family == "geometric") s.family = Family::geometric;
    else s.family = Family::slowlog;
    return s;
}

struct BenchArgs {
    std::string family = "geometric", csv, mode = "auto";
    double gamma = 1, p = 0.5;
    std::vector<std::uint64_t> n_list{4096};
    std::size_t trials = 30;
    std::uint64_t seed = 1;
};

int run_bench(const BenchArgs& a) {
    SourceSpec spec = family_spec(a.family, a.gamma, a.p, a.seed);
    if (spec.family == Family::slowlog && spec.gamma <= 0)
        std::fprintf(stderr, "warning: slowlog with gamma <= 0 has infinite entropy; redundancy is measured "
                             "against the monotone ML description length\n");
    CodecChoice codec;
    if (a.mode == "small") codec = Mode::small_k;
    else if (a.mode == "large") codec = Mode::large;
    else if (a.mode == "fast") codec = Mode::fast;
    else if (a.mode == "individual") codec = Mode::individual;
    std::vector<ExperimentCell> cells;
    for (auto n : a.n_list) cells.push_back({spec, n, a.trials, codec});
    if (a.csv.empty()) {
        run_experiment(cells, std::cout);
    } else {
        try {
            run_experiment(cells, a.csv);
        } catch (const Error& e) {
            if (e.code() == Errc::io_error) throw ExitError{kIo, e.what()};
            throw;
        }
        std::printf("wrote %zu rows to %s\n", cells.size(), a.csv.c_str());
    }
    return 0;
}

struct BoundsArgs {
    std::string which, family = "powerlaw", input;
    double n = 1 << 20, k = 8, m = 0, eps = 0, gamma = 1, p = 0.5, a = 0;
};

void print_bound(const std::string& name, const BoundValue& b) {
    std::printf("bound %s\nregion %s\nper_symbol %.10g\ntotal %.10g\n", name.c_str(), b.region.c_str(), b.per_symbol,
                b.total);
    for (const auto& [k, v] : b.params) std::printf("param %s %.10g\n", k.c_str(), v);
}

int run_bounds(const BoundsArgs& a) {
    const std::string& w = a.which;
    const double m = a.m > 0 ? a.m : a.k;
    auto tail_source = [&] { return Source(family_spec(a.family, a.gamma, a.p, 1)); };
    if (w == "thm1") print_bound(w, lb_maximin(a.n, a.k, a.eps));
    else if (w == "thm2") print_bound(w, lb_most_sources(a.n, a.k, a.eps));
    else if (w == "thm3") print_bound(w, lb_individual(a.n, a.k));
    else if (w == "thm4") print_bound(w, ub_small_large(a.n, a.k, a.eps));
    else if (w == "thm5") print_bound(w, ub_fast_decay(a.n, m, a.eps));
    else if (w == "thm6") {
        Source s = tail_source();
        print_bound(w, ub_fast_min(a.n, [&](double mm) { return static_cast<double>(s.tail_log_moment(mm)); }, a.eps));
    } else if (w == "thm7") print_bound(w, ub_individual(a.n, a.k, a.eps));
    else if (w == "thm8") {
        std::vector<Symbol> distinct;
        if (!a.input.empty()) {
            auto x = parse_text(read_file(a.input));
            for (const auto& [sym, c] : EmpiricalCounts::from_sequence(x).entries()) distinct.push_back(sym);
        }
        TailLogSum tail = [&](double mm) {
            double s = 0;
            for (Symbol v : distinct)
                if (static_cast<double>(v) > mm) s += std::log2(static_cast<double>(v));
            return s;
        };
        print_bound(w, ub_individual2(a.n, tail, a.eps));
    } else if (w == "cor1") {
        WynerCheck c = wyner_check(family_spec(a.family, a.gamma, a.p, 1));
        std::printf("bound cor1\nlog_moment %.10g\nentropy %.10g\npass %d\n", c.log_moment, c.entropy, c.pass ? 1 : 0);
    } else if (w == "cor2") {
        double norm = a.a > 0 ? a.a : static_cast<double>(Source(family_spec("powerlaw", a.gamma, a.p, 1)).normalizer());
        print_bound(w, ub_powerlaw(a.n, a.gamma, norm, a.eps));
    } else if (w == "cor3") print_bound(w, ub_geometric(a.n, a.p, a.eps));
    else {
        SlowDecayBound s = ub_slow_decay(a.n, a.gamma, a.eps);
        print_bound(w, s.bound);
        std::printf("exponent %.10g\n", s.exponent);
    }
    return 0;
}

int run_nml(unsigned n, unsigned k) {
    NmlResult r = nml_bruteforce_monotone(n, k);
    std::printf("sum %.15Lg\nlog2_sum %.10g\n", r.sum, r.log2_sum);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Universal compression for monotone integer sources"};
    app.require_subcommand(1, 1);

    CompressArgs ca;
    auto* cmp = app.add_subcommand("compress", "Compress whitespace-separated positive integers");
    cmp->add_option("input", ca.input, "Input file")->required();
    cmp->add_option("output", ca.output, "Output container")->required();
    cmp->add_option("--mode", ca.mode, "Codec mode")
        ->check(CLI::IsMember({"auto", "small", "large", "fast", "individual"}));
    cmp->add_option("--k", ca.k, "Alphabet bound for small mode")->check(CLI::PositiveNumber);
    cmp->add_option("--m", ca.m, "Effective alphabet for fast and individual modes")->check(CLI::Range(std::uint64_t{2}, std::uint64_t{kMaxSymbol}));
    cmp->add_flag("--binary", ca.binary, "Input is LEB128 varints");

    std::string din, dout;
    bool dbinary = false;
    auto* dec = app.add_subcommand("decompress", "Restore the integer sequence from a container");
    dec->add_option("input", din, "Input container")->required();
    dec->add_option("output", dout, "Output file")->required();
    dec->add_flag("--binary", dbinary, "Write LEB128 varints instead of text");

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "Measure redundancy on simulated sources and write CSV");
    bench->add_option("--family", ba.family)->check(CLI::IsMember({"powerlaw", "geometric", "slowlog"}));
    bench->add_option("--gamma", ba.gamma);
    bench->add_option("--p", ba.p);
    bench->add_option("--n-list", ba.n_list)->delimiter(',')->check(CLI::PositiveNumber);
    bench->add_option("--trials", ba.trials)->check(CLI::PositiveNumber);
    bench->add_option("--seed", ba.seed);
    bench->add_option("--csv", ba.csv, "Output path (stdout when omitted)");
    bench->add_option("--mode", ba.mode)->check(CLI::IsMember({"auto", "small", "large", "fast", "individual"}));

    BoundsArgs bo;
    auto* bounds = app.add_subcommand("bounds", "Evaluate a redundancy bound");
    bounds->add_option("--which", bo.which)
        ->required()
        ->check(CLI::IsMember({"thm1", "thm2", "thm3", "thm4", "thm5", "thm6", "thm7", "thm8", "cor1", "cor2", "cor3",
                               "cor4"}));
    bounds->add_option("--n", bo.n);
    bounds->add_option("--k", bo.k);
    bounds->add_option("--m", bo.m);
    bounds->add_option("--eps", bo.eps);
    bounds->add_option("--gamma", bo.gamma);
    bounds->add_option("--p", bo.p);
    bounds->add_option("--a", bo.a, "Power-law normalizer (computed when omitted)");
    bounds->add_option("--family", bo.family, "Tail source for thm6 and cor1")
        ->check(CLI::IsMember({"powerlaw", "geometric", "slowlog"}));
    bounds->add_option("--input", bo.input, "Sequence whose tail feeds thm8");

    unsigned nml_n = 2, nml_k = 2;
    auto* nml = app.add_subcommand("nml", "Exact monotone Shtarkov sum by enumeration");
    nml->add_option("--n", nml_n)->required();
    nml->add_option("--k", nml_k)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*cmp) return run_compress(ca);
        if (*dec) return run_decompress(din, dout, dbinary);
        if (*bench) return run_bench(ba);
        if (*bounds) return run_bounds(bo);
        return run_nml(nml_n, nml_k);
    } catch (const ExitError& e) {
        std::fprintf(stderr, "error: %s\n", e.message.c_str());
        return e.code;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.code() == Errc::io_error ? kIo : kUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
}
