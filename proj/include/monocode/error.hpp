#pragma once

#include <stdexcept>
#include <string>

namespace mono {

enum class Errc {
    invalid_argument,
    truncated_stream,
    corrupt_stream,
    bad_magic,
    bad_version,
    model_mismatch,
    quantization_infeasible,
    budget_exceeded,
    io_error,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace mono
