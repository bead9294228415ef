#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "cjf/bigint.hpp"
#include "cjf/bitvec.hpp"
#include "cjf/error.hpp"
#include "cjf/gf2.hpp"

namespace cjf::fsr {

// Register state (x_0, x_1, ..., x_{n-1}), bit k = x_k.
using StateVector = BitVec;

enum class SequenceKind { raw, modified_debruijn, debruijn };
const char* kind_name(SequenceKind k);

struct BitSequence {
    BitVec bits;
    std::uint32_t order_n = 0;
    SequenceKind kind = SequenceKind::raw;

    std::uint64_t length() const { return bits.size(); }
};

// Non-singular feedback F = x_0 + f(x_1, ..., x_{n-1}) where f is a set of
// linear taps plus "jump" minterms: the feedback bit is flipped exactly when
// (x_1..x_{n-1}) equals one of the stored suffixes. Suffix lookup is a hash
// set, so evaluation stays O(taps) even at n = 127.
class FeedbackFunction {
public:
    FeedbackFunction(std::uint32_t n, std::vector<std::uint32_t> linear_taps,
                     std::vector<BitVec> jump_suffixes,
                     std::optional<gf2::Polynomial> poly = std::nullopt);

    // the linear recursion g of a primitive polynomial
    static FeedbackFunction linear(const gf2::FieldCtx& ctx);

    std::uint32_t n() const { return n_; }
    const std::vector<std::uint32_t>& linear_taps() const { return taps_; }
    const std::vector<BitVec>& jump_suffixes() const { return suffixes_; }
    const std::optional<gf2::Polynomial>& poly() const { return poly_; }
    bool has_jump(const BitVec& suffix) const { return suffix_set_.contains(suffix); }

private:
    std::uint32_t n_;
    std::vector<std::uint32_t> taps_;  // sorted, contains 0
    std::vector<BitVec> suffixes_;     // distinct, each of length n-1
    std::optional<gf2::Polynomial> poly_;
    std::unordered_set<BitVec, BitVecHash> suffix_set_;
};

bool evaluate(const FeedbackFunction& f, const StateVector& s);
StateVector step(const FeedbackFunction& f, const StateVector& s);
BitSequence generate(const FeedbackFunction& f, const StateVector& seed, std::uint64_t count);

inline constexpr std::uint64_t default_step_budget = std::uint64_t(1) << 32;

// Least T >= 1 with state_T = state_0. The step map of a non-singular
// function is a bijection, so the orbit is a pure cycle and direct counting
// in constant memory is exact. Raises timeout past the budget.
BigInt period(const FeedbackFunction& f, const StateVector& seed,
              std::uint64_t step_budget = default_step_budget);

// s_t = coefficient of x^0 in a^t; equals generate(linear(ctx), (1,0,...,0)).
BitSequence msequence(const gf2::FieldCtx& ctx, std::uint64_t count);

SequenceKind verify_kind(const BitSequence& seq);

// Truth table of f over 2^{n-1} entries, index = integer value of
// (x_1..x_{n-1}) with x_1 as least significant bit. Input must be a verified
// de Bruijn sequence; every suffix must occur exactly twice with a consistent
// feedback value or Inconsistent is raised.
BitVec feedback_from_sequence(const BitSequence& seq);

// Truth table of the f part of a feedback function (same indexing).
BitVec truth_table(const FeedbackFunction& f, std::uint32_t cap = 26);

// Position of every n-window of a cyclic sequence whose windows are pairwise
// distinct; index = packed window (bit k = s_{t+k}). Entries for absent
// windows are 0xffffffff. Raises Inconsistent on duplicate windows; capped at
// order 24 (the map has 2^n entries).
std::vector<std::uint32_t> window_position_map(const BitSequence& seq);

// Degree of the algebraic normal form of F. Exact by Mobius transform for
// n <= 20; exactly n-2 for two jump suffixes at any n; otherwise a
// subset-parity search in increasing co-dimension up to codim_cap, raising
// Unsupported when the search does not resolve.
std::uint32_t algebraic_degree(const FeedbackFunction& f, std::uint32_t codim_cap = 4);

// Insert one zero into the unique run of n-1 zeros and rotate so the 0^n
// window leads (Definition 2 reversed).
BitSequence to_debruijn(const BitSequence& modified);

// Unique representative of the cyclic class: de Bruijn sequences start with
// the 0^n window, modified ones with 0^{n-1} followed by 1.
BitSequence canonical_rotation(const BitSequence& seq);

// Canonical JSON object {"n":, "poly":, "linear_taps":, "jump_suffixes":};
// suffixes are hex strings of ceil((n-1)/4) digits, x_1 = least significant
// bit. The parser ignores unknown keys.
std::string to_json(const FeedbackFunction& f);
FeedbackFunction feedback_function_from_json(std::string_view text);

// ASCII form: one line of '0'/'1'. Packed form: 8-byte little-endian bit
// count, then the bits packed LSB-first within each byte.
void write_ascii(std::ostream& os, const BitSequence& seq);
void write_packed(std::ostream& os, const BitSequence& seq);
BitVec read_bits_ascii(std::istream& is);
BitVec read_bits_packed(std::istream& is);

}  // namespace cjf::fsr
