#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cjf/bigint.hpp"
#include "cjf/bitvec.hpp"
#include "cjf/error.hpp"

namespace cjf::gf2 {

// p(x) = x^n + ... + 1 as a strictly decreasing exponent list; the constant
// term is mandatory (otherwise x would not be invertible mod p).
class Polynomial {
public:
    static Polynomial from_exponents(std::vector<std::uint32_t> exps);

    // Accepts "x^31+x^3+1" (terms x^k, x, 1 in any order) or "31,3,0".
    static Polynomial parse(std::string_view text);

    std::uint32_t degree() const { return exponents_.front(); }
    const std::vector<std::uint32_t>& exponents() const { return exponents_; }
    bool is_trinomial() const { return exponents_.size() == 3; }

    std::string to_string() const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.exponents_ == b.exponents_;
    }

private:
    std::vector<std::uint32_t> exponents_;  // strictly decreasing, last = 0
};

// Primitive polynomials whose primitivity this project takes as established:
// one per degree 2..24 plus x^31+x^3+1 and x^127+x+1. Degrees <= 24 are
// re-verified exhaustively in the test suite.
std::optional<Polynomial> registry_lookup(std::uint32_t n);
bool registry_contains(const Polynomial& p);

enum class Primitivity { verified, asserted };

struct FieldOptions {
    std::uint32_t degree_cap = 512;
    std::uint32_t primitivity_check_cap = 24;  // exhaustive power-cycle check up to here
    bool assume_primitive = false;
};

using FieldElement = BitVec;  // length n, bit k = coefficient of x^k

// GF(2^n) fixed by a primitive polynomial. Immutable after construction;
// safe to share across threads.
class FieldCtx {
public:
    std::uint32_t n() const { return n_; }
    const BigInt& order() const { return order_; }  // 2^n - 1
    const Polynomial& poly() const { return poly_; }
    Primitivity primitivity() const { return prim_; }

    FieldElement zero() const { return FieldElement(n_); }
    FieldElement one() const;
    FieldElement generator() const;  // the element x (the root a)

    FieldElement mul(const FieldElement& u, const FieldElement& v) const;
    FieldElement mul_by_x(FieldElement u) const;  // shift and reduce
    FieldElement pow(const FieldElement& u, BigInt e) const;

    // exponents of p below n, including 0; these are the taps of the linear
    // recursion g(x_0..x_{n-1}) = x_0 + c_1 x_1 + ... + c_{n-1} x_{n-1}
    std::vector<std::uint32_t> linear_taps() const;

private:
    friend FieldCtx field_new(const Polynomial&, const FieldOptions&);
    Polynomial poly_;
    std::uint32_t n_ = 0;
    BigInt order_;
    Primitivity prim_ = Primitivity::asserted;
    BitVec low_;  // p - x^n, the reduction mask
};

// Errors: not_primitive (exhaustive check failed), cap_exceeded (degree above
// options.degree_cap), missing_assertion (degree above the check cap, not in
// the registry, and assume_primitive not set).
FieldCtx field_new(const Polynomial& poly, const FieldOptions& options = {});

// Z(j) defined by 1 + a^j = a^{Z(j)} on {1, ..., 2^n - 2}. A full table is
// built in one pass over consecutive powers; a partial backend holds only the
// closure of the trinomial identity Z(k) = n under doubling and involution.
class ZechTable {
public:
    enum class Kind { full, partial };
    static constexpr std::uint32_t default_cap = 24;

    static ZechTable build_full(const FieldCtx& ctx, std::uint32_t cap = default_cap);
    static ZechTable trinomial_identities(const FieldCtx& ctx);

    BigInt lookup(const BigInt& j) const;  // out_of_domain / underivable

    Kind kind() const { return kind_; }
    std::uint32_t n() const { return n_; }
    std::uint64_t entry_count() const;
    const Polynomial& poly() const { return poly_; }

    // Cache file: "ZECH" magic, u16 version = 1, u16 n, u16 exponent count,
    // the exponents as u32 each, then 2^n - 2 u32 entries (entry j-1 = Z(j)).
    // All little-endian. Full tables only.
    void save(const std::filesystem::path& path) const;
    static ZechTable load(const std::filesystem::path& path);

private:
    Kind kind_ = Kind::full;
    std::uint32_t n_ = 0;
    Polynomial poly_;
    std::vector<std::uint32_t> full_;       // entry j-1 holds Z(j)
    std::map<BigInt, BigInt> partial_;
};

}  // namespace cjf::gf2
