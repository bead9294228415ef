#pragma once

#include <stdexcept>
#include <string>

namespace cjf {

enum class Errc {
    not_primitive,
    cap_exceeded,
    missing_assertion,
    out_of_domain,
    underivable,
    timeout,
    wrong_length,
    inconsistent,
    unsupported,
    overlapping_pairs,
    duplicate_suffix,
    not_conjugate,
    wrong_order,
    invalid_quadruple,
    overlap,
    parse_error,
    io_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace cjf
