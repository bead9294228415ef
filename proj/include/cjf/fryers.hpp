#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "cjf/bigint.hpp"

namespace cjf::fryers {

// N(l;k) for odd k in {1, ..., 2^{n-1} - 1}; even k are absent because their
// counts vanish identically.
struct SpectrumTable {
    std::uint32_t n = 0;
    std::map<std::uint64_t, BigInt> counts;
};

inline constexpr std::uint32_t order_cap = 64;

// N(l;k) = C(2^{n-1}, k) / 2^{n-1}, streamed for odd k in ascending order.
// The binomial is maintained by the exact product/quotient recurrence; both
// divisions are checked to be exact.
void for_each_count(std::uint32_t n,
                    const std::function<void(std::uint64_t k, const BigInt& count)>& fn);

SpectrumTable fryers_spectrum(std::uint32_t n);

// (2^{n-1} - 1)(2^{n-1} - 2) / 6, the count of cross-join pairs of an
// m-sequence and N(l;3).
BigInt helleseth_klove(std::uint32_t n);

// 2^{2^{n-1} - n}, the number of cyclically non-equivalent de Bruijn
// sequences of order n; the spectrum must sum to this.
BigInt spectrum_sum(std::uint32_t n);

std::string to_tsv(const SpectrumTable& t);
std::string to_json(const SpectrumTable& t);

}  // namespace cjf::fryers
