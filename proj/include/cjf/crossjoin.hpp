#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cjf/bigint.hpp"
#include "cjf/fsr.hpp"
#include "cjf/gf2.hpp"

namespace cjf::crossjoin {

// Four positions (exponents) on the m-sequence in the order alpha, beta,
// alpha-hat, beta-hat; zi = Z(i), zj = Z(j). Decimal-string JSON because the
// values exceed 64 bits at n = 127.
struct CrossJoinQuadruple {
    BigInt i, j, zi, zj;

    friend bool operator==(const CrossJoinQuadruple& a, const CrossJoinQuadruple& b) {
        return a.i == b.i && a.j == b.j && a.zi == b.zi && a.zj == b.zj;
    }
};

std::string to_json(const CrossJoinQuadruple& q);
CrossJoinQuadruple quadruple_from_json(std::string_view text);

// S_t = (s_t, ..., s_{t+n-1}) with s_u = coefficient of x^0 in a^u. One
// square-and-multiply exponentiation plus n-1 multiplications by x, so it
// works at n = 127.
fsr::StateVector state_at(const gf2::FieldCtx& ctx, const BigInt& t);

// flip bit 0
fsr::StateVector conjugate(fsr::StateVector s);

// Cyclic-order test: with d1 = (j-i) mod N, d2 = (zi-i) mod N,
// d3 = (zj-i) mod N, require 0 < d1 < d2 < d3.
bool is_crossjoin_quadruple(const BigInt& i, const BigInt& j, const BigInt& zi,
                            const BigInt& zj, const BigInt& period);
bool is_crossjoin_quadruple(const CrossJoinQuadruple& q, const BigInt& period);

// Memoizes state_at per context; one instance per thread of use.
class StateCache {
public:
    explicit StateCache(const gf2::FieldCtx& ctx) : ctx_(ctx) {}
    const fsr::StateVector& at(const BigInt& t);
    const gf2::FieldCtx& ctx() const { return ctx_; }

private:
    const gf2::FieldCtx& ctx_;
    std::map<BigInt, fsr::StateVector> memo_;
};

// Streams every interleaving pair of conjugate pairs once, canonically
// labeled: i is the smallest of the four exponents and i < j < zi < zj.
void for_each_crossjoin_pair(
    const gf2::ZechTable& table,
    const std::function<void(std::uint64_t i, std::uint64_t j, std::uint64_t zi,
                             std::uint64_t zj)>& sink);

// Materialized list, sorted by (i, j); workers partition the conjugate-pair
// range and the merge keeps the order deterministic.
std::vector<CrossJoinQuadruple> find_crossjoin_pairs(const gf2::FieldCtx& ctx,
                                                     const gf2::ZechTable& table,
                                                     unsigned threads = 1);

// F = linear taps of ctx plus the minterms of suffix(S_i) and suffix(S_j) of
// every quadruple. Validates pairwise disjointness of the conjugate pairs as
// exponent sets (OverlappingPairs) and distinctness of the suffixes
// (DuplicateSuffix); the cyclic-order condition is the caller's precondition.
fsr::FeedbackFunction synthesize_nfsr(const gf2::FieldCtx& ctx,
                                      std::span<const CrossJoinQuadruple> quadruples,
                                      StateCache* cache = nullptr);

// c_i = (2^{s i}, 2^{s i + 1}, n 2^{s i} mod N, n 2^{s i + 1} mod N) for a
// trinomial x^n + x + 1, justified by Z(1) = n and the doubling rule alone.
// Every quadruple is validated (InvalidQuadruple) and the 4*count exponents
// must be pairwise distinct (Overlap).
std::vector<CrossJoinQuadruple> disjoint_family(const gf2::FieldCtx& ctx,
                                                std::uint32_t stride, std::uint32_t count);

// Exchanges successors at both conjugate pairs by segment reassembly over
// positions, so it applies to nonlinear de Bruijn sequences too. q holds the
// positions of alpha, beta, alpha-hat, beta-hat in i, j, zi, zj order; state
// conjugacy and cyclic order are verified against the sequence.
fsr::BitSequence cross_join_apply(const fsr::BitSequence& seq, const CrossJoinQuadruple& q);

}  // namespace cjf::crossjoin
