#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cjf/error.hpp"

namespace cjf {

// Dynamic bit vector packed into 64-bit words, bit k of the vector at
// words[k/64] bit (k%64). Unused tail bits are kept zero so equality and
// hashing can work on whole words.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : words_((n + 63) / 64, 0), size_(n) {}

    static BitVec from_string(std::string_view s) {
        BitVec v(s.size());
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (s[k] == '1')
                v.set(k, true);
            else if (s[k] != '0')
                raise(Errc::parse_error, "bit string may contain only '0'/'1'");
        }
        return v;
    }

    // Hex digits, most significant first; bit 0 of the vector is the least
    // significant bit of the value. nbits fixes the vector length.
    static BitVec from_hex(std::string_view hex, std::size_t nbits) {
        if (hex.size() != (nbits + 3) / 4)
            raise(Errc::parse_error, "hex string has wrong length for " + std::to_string(nbits) + " bits");
        BitVec v(nbits);
        for (std::size_t d = 0; d < hex.size(); ++d) {
            char c = hex[hex.size() - 1 - d];
            unsigned x;
            if (c >= '0' && c <= '9') x = static_cast<unsigned>(c - '0');
            else if (c >= 'a' && c <= 'f') x = static_cast<unsigned>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F') x = static_cast<unsigned>(c - 'A' + 10);
            else raise(Errc::parse_error, "invalid hex digit");
            for (unsigned b = 0; b < 4; ++b) {
                std::size_t k = 4 * d + b;
                if (x >> b & 1u) {
                    if (k >= nbits) raise(Errc::parse_error, "hex value exceeds bit length");
                    v.set(k, true);
                }
            }
        }
        return v;
    }

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool get(std::size_t k) const { return words_[k >> 6] >> (k & 63) & 1u; }

    void set(std::size_t k, bool b) {
        std::uint64_t m = std::uint64_t(1) << (k & 63);
        if (b)
            words_[k >> 6] |= m;
        else
            words_[k >> 6] &= ~m;
    }

    void flip(std::size_t k) { words_[k >> 6] ^= std::uint64_t(1) << (k & 63); }

    void push_back(bool b) {
        if ((size_ & 63) == 0) words_.push_back(0);
        ++size_;
        if (b) set(size_ - 1, true);
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool any() const {
        for (std::uint64_t w : words_)
            if (w) return true;
        return false;
    }

    BitVec& operator^=(const BitVec& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
        return *this;
    }

    friend bool operator==(const BitVec& a, const BitVec& b) {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

    // lexicographic on bit order, used only to make outputs deterministic
    friend bool operator<(const BitVec& a, const BitVec& b) {
        if (a.size_ != b.size_) return a.size_ < b.size_;
        for (std::size_t i = a.words_.size(); i-- > 0;)
            if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
        return false;
    }

    std::span<const std::uint64_t> words() const { return words_; }

    // low 64 bits of the packed value
    std::uint64_t low64() const { return words_.empty() ? 0 : words_[0]; }

    // value of bits [pos, pos+len) as a fresh vector of length len
    BitVec slice(std::size_t pos, std::size_t len) const {
        BitVec r(len);
        for (std::size_t k = 0; k < len; ++k)
            if (get(pos + k)) r.set(k, true);
        return r;
    }

    // x_k <- x_{k+1}; top bit becomes 0, size unchanged
    void shift_down_one() {
        for (std::size_t i = 0; i + 1 < words_.size(); ++i)
            words_[i] = words_[i] >> 1 | words_[i + 1] << 63;
        if (!words_.empty()) words_.back() >>= 1;
    }

    // x_{k+1} <- x_k; the former top bit is dropped, size unchanged
    void shift_up_one() {
        for (std::size_t i = words_.size(); i-- > 1;)
            words_[i] = words_[i] << 1 | words_[i - 1] >> 63;
        if (!words_.empty()) words_[0] <<= 1;
        clear_tail();
    }

    std::string to_string() const {
        std::string s(size_, '0');
        for (std::size_t k = 0; k < size_; ++k)
            if (get(k)) s[k] = '1';
        return s;
    }

    std::string to_hex() const {
        static const char* digit = "0123456789abcdef";
        std::size_t nd = (size_ + 3) / 4;
        std::string s(nd, '0');
        for (std::size_t d = 0; d < nd; ++d) {
            unsigned x = 0;
            for (unsigned b = 0; b < 4; ++b) {
                std::size_t k = 4 * d + b;
                if (k < size_ && get(k)) x |= 1u << b;
            }
            s[nd - 1 - d] = digit[x];
        }
        return s;
    }

    std::size_t hash() const {
        std::uint64_t h = 0xcbf29ce484222325ull ^ size_;
        for (std::uint64_t w : words_) {
            h ^= w;
            h *= 0x100000001b3ull;
        }
        return static_cast<std::size_t>(h);
    }

private:
    void clear_tail() {
        if (std::size_t r = size_ & 63; r != 0 && !words_.empty())
            words_.back() &= (std::uint64_t(1) << r) - 1;
    }

    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

struct BitVecHash {
    std::size_t operator()(const BitVec& v) const { return v.hash(); }
};

}  // namespace cjf
