#include "cjf/fsr.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>

#include "json.hpp"

namespace cjf::fsr {

const char* kind_name(SequenceKind k) {
    switch (k) {
        case SequenceKind::raw: return "raw";
        case SequenceKind::modified_debruijn: return "modified_debruijn";
        case SequenceKind::debruijn: return "debruijn";
    }
    return "?";
}

FeedbackFunction::FeedbackFunction(std::uint32_t n, std::vector<std::uint32_t> linear_taps,
                                   std::vector<BitVec> jump_suffixes,
                                   std::optional<gf2::Polynomial> poly)
    : n_(n), taps_(std::move(linear_taps)), suffixes_(std::move(jump_suffixes)),
      poly_(std::move(poly)) {
    if (n_ < 2) raise(Errc::parse_error, "order must be at least 2");
    std::sort(taps_.begin(), taps_.end());
    taps_.erase(std::unique(taps_.begin(), taps_.end()), taps_.end());
    if (taps_.empty() || taps_.front() != 0)
        raise(Errc::parse_error, "tap 0 is required (non-singular form x_0 + f)");
    if (taps_.back() >= n_) raise(Errc::parse_error, "tap index out of range");
    for (const BitVec& s : suffixes_) {
        if (s.size() != n_ - 1)
            raise(Errc::wrong_length, "jump suffix must have n-1 bits");
        if (!suffix_set_.insert(s).second)
            raise(Errc::duplicate_suffix, "jump suffix listed twice");
    }
}

FeedbackFunction FeedbackFunction::linear(const gf2::FieldCtx& ctx) {
    return FeedbackFunction(ctx.n(), ctx.linear_taps(), {}, ctx.poly());
}

namespace {

// Packed engine for n <= 64: state bits in one word, suffix = state >> 1.
struct Engine64 {
    std::uint32_t n;
    std::uint64_t tap_mask = 0;
    std::vector<std::uint64_t> jumps;  // sorted packed suffixes

    explicit Engine64(const FeedbackFunction& f) : n(f.n()) {
        for (std::uint32_t t : f.linear_taps()) tap_mask |= std::uint64_t(1) << t;
        for (const BitVec& s : f.jump_suffixes()) jumps.push_back(s.low64());
        std::sort(jumps.begin(), jumps.end());
    }

    bool feed(std::uint64_t s) const {
        bool b = std::popcount(s & tap_mask) & 1;
        std::uint64_t suf = s >> 1;
        if (!jumps.empty() && std::binary_search(jumps.begin(), jumps.end(), suf)) b = !b;
        return b;
    }

    std::uint64_t step(std::uint64_t s) const {
        return s >> 1 | std::uint64_t(feed(s)) << (n - 1);
    }
};

std::uint64_t pack_state(const StateVector& s) { return s.low64(); }

StateVector unpack_state(std::uint64_t w, std::uint32_t n) {
    StateVector s(n);
    for (std::uint32_t k = 0; k < n; ++k)
        if (w >> k & 1) s.set(k, true);
    return s;
}

void check_dims(const FeedbackFunction& f, const StateVector& s) {
    if (s.size() != f.n()) raise(Errc::wrong_length, "state length does not match order");
}

}  // namespace

bool evaluate(const FeedbackFunction& f, const StateVector& s) {
    check_dims(f, s);
    bool b = false;
    for (std::uint32_t t : f.linear_taps()) b ^= s.get(t);
    if (!f.jump_suffixes().empty() && f.has_jump(s.slice(1, f.n() - 1))) b = !b;
    return b;
}

StateVector step(const FeedbackFunction& f, const StateVector& s) {
    bool b = evaluate(f, s);
    StateVector r = s;
    r.shift_down_one();
    r.set(f.n() - 1, b);
    return r;
}

BitSequence generate(const FeedbackFunction& f, const StateVector& seed, std::uint64_t count) {
    check_dims(f, seed);
    const std::uint32_t n = f.n();
    BitSequence out;
    out.order_n = n;
    out.bits = BitVec(0);
    if (n <= 64) {
        Engine64 eng(f);
        std::uint64_t s = pack_state(seed);
        for (std::uint64_t t = 0; t < count; ++t) {
            out.bits.push_back(s & 1);
            s = eng.step(s);
        }
    } else {
        StateVector s = seed;
        for (std::uint64_t t = 0; t < count; ++t) {
            out.bits.push_back(s.get(0));
            s = step(f, s);
        }
    }
    return out;
}

BigInt period(const FeedbackFunction& f, const StateVector& seed, std::uint64_t step_budget) {
    check_dims(f, seed);
    if (f.n() <= 64) {
        Engine64 eng(f);
        const std::uint64_t start = pack_state(seed);
        std::uint64_t s = start;
        for (std::uint64_t t = 1; t <= step_budget; ++t) {
            s = eng.step(s);
            if (s == start) return t;
        }
    } else {
        const StateVector start = seed;
        StateVector s = seed;
        for (std::uint64_t t = 1; t <= step_budget; ++t) {
            s = step(f, s);
            if (s == start) return t;
        }
    }
    raise(Errc::timeout, "no return to the seed state within the step budget");
}

BitSequence msequence(const gf2::FieldCtx& ctx, std::uint64_t count) {
    StateVector seed(ctx.n());
    seed.set(0, true);
    return generate(FeedbackFunction::linear(ctx), seed, count);
}

namespace {

constexpr std::uint32_t window_cap = 28;  // presence bitmaps get large beyond this

// rolling n-bit windows of a cyclic sequence, window value bit k = s_{t+k}
template <class Fn>
void for_each_window(const BitVec& bits, std::uint32_t n, Fn&& fn) {
    const std::uint64_t L = bits.size();
    std::uint64_t w = 0;
    for (std::uint32_t k = 0; k < n; ++k) w |= std::uint64_t(bits.get(k % L)) << k;
    for (std::uint64_t t = 0; t < L; ++t) {
        fn(t, w);
        w = w >> 1 | std::uint64_t(bits.get((t + n) % L)) << (n - 1);
    }
}

}  // namespace

SequenceKind verify_kind(const BitSequence& seq) {
    const std::uint32_t n = seq.order_n;
    if (n < 2) raise(Errc::wrong_length, "order must be at least 2");
    if (n > window_cap) raise(Errc::cap_exceeded, "window check capped at order 28");
    const std::uint64_t L = seq.length();
    const std::uint64_t full = std::uint64_t(1) << n;
    if (L != full && L != full - 1)
        raise(Errc::wrong_length, "length must be 2^n or 2^n - 1");

    BitVec present(full);
    bool dup = false, zero_window = false;
    for_each_window(seq.bits, n, [&](std::uint64_t, std::uint64_t w) {
        if (present.get(w)) dup = true;
        present.set(w, true);
        if (w == 0) zero_window = true;
    });
    if (dup) return SequenceKind::raw;
    if (L == full) return SequenceKind::debruijn;
    return zero_window ? SequenceKind::raw : SequenceKind::modified_debruijn;
}

BitVec feedback_from_sequence(const BitSequence& seq) {
    if (seq.kind != SequenceKind::debruijn && verify_kind(seq) != SequenceKind::debruijn)
        raise(Errc::inconsistent, "input is not a de Bruijn sequence");
    const std::uint32_t n = seq.order_n;
    const std::uint64_t L = seq.length();
    BitVec table(L >> 1), seen(L >> 1);
    for_each_window(seq.bits, n, [&](std::uint64_t t, std::uint64_t w) {
        std::uint64_t suffix = w >> 1;
        bool value = seq.bits.get((t + n) % L) ^ (w & 1);
        if (!seen.get(suffix)) {
            seen.set(suffix, true);
            table.set(suffix, value);
        } else if (table.get(suffix) != value) {
            raise(Errc::inconsistent, "suffix has two different feedback values");
        }
    });
    return table;
}

BitVec truth_table(const FeedbackFunction& f, std::uint32_t cap) {
    const std::uint32_t n = f.n();
    if (n > cap) raise(Errc::cap_exceeded, "truth table capped at order " + std::to_string(cap));
    const std::uint64_t m = std::uint64_t(1) << (n - 1);
    std::uint64_t tap_suffix = 0;
    for (std::uint32_t t : f.linear_taps())
        if (t >= 1) tap_suffix |= std::uint64_t(1) << (t - 1);
    BitVec table(m);
    for (std::uint64_t v = 0; v < m; ++v)
        if (std::popcount(v & tap_suffix) & 1) table.set(v, true);
    for (const BitVec& s : f.jump_suffixes()) table.flip(s.low64());
    return table;
}

std::vector<std::uint32_t> window_position_map(const BitSequence& seq) {
    const std::uint32_t n = seq.order_n;
    if (n > 24) raise(Errc::cap_exceeded, "position map capped at order 24");
    std::vector<std::uint32_t> pos(std::size_t(1) << n, 0xffffffffu);
    bool dup = false;
    for_each_window(seq.bits, n, [&](std::uint64_t t, std::uint64_t w) {
        if (pos[w] != 0xffffffffu) dup = true;
        pos[w] = static_cast<std::uint32_t>(t);
    });
    if (dup) raise(Errc::inconsistent, "sequence windows are not distinct");
    return pos;
}

namespace {

std::uint32_t mobius_degree(const BitVec& table, std::uint32_t nvars) {
    const std::size_t size = std::size_t(1) << nvars;
    std::vector<std::uint8_t> a(size);
    for (std::size_t v = 0; v < size; ++v) a[v] = table.get(v);
    for (std::uint32_t i = 0; i < nvars; ++i)
        for (std::size_t v = 0; v < size; ++v)
            if (v >> i & 1) a[v] ^= a[v ^ (std::size_t(1) << i)];
    std::uint32_t deg = 0;
    for (std::size_t v = 0; v < size; ++v)
        if (a[v]) deg = std::max<std::uint32_t>(deg, std::popcount(v));
    return deg;
}

}  // namespace

std::uint32_t algebraic_degree(const FeedbackFunction& f, std::uint32_t codim_cap) {
    const std::uint32_t n = f.n();
    const auto& jumps = f.jump_suffixes();
    if (jumps.empty()) return 1;
    if (n <= 20) return std::max<std::uint32_t>(1, mobius_degree(truth_table(f), n - 1));
    // ANF coefficient of the monomial omitting exactly the variables in T:
    // parity of the number of suffixes with no 1-bit inside T. For two distinct
    // suffixes the parity is odd iff they differ inside T, so co-dimension 1
    // always resolves and the degree is n-2.
    if (jumps.size() == 2) return n - 2;
    const std::uint32_t vars = n - 1;
    for (std::uint32_t c = 0; c <= codim_cap && c <= vars; ++c) {
        std::vector<std::uint32_t> idx(c);
        for (std::uint32_t i = 0; i < c; ++i) idx[i] = i;
        while (true) {
            bool parity = false;
            for (const BitVec& s : jumps) {
                bool hit = false;
                for (std::uint32_t i : idx)
                    if (s.get(i)) { hit = true; break; }
                if (!hit) parity = !parity;
            }
            if (parity) return std::max<std::uint32_t>(1, vars - c);
            // next combination
            std::uint32_t i = c;
            while (i > 0 && idx[i - 1] == vars - c + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::uint32_t j2 = i; j2 < c; ++j2) idx[j2] = idx[j2 - 1] + 1;
        }
    }
    raise(Errc::unsupported,
          "degree not resolved within co-dimension " + std::to_string(codim_cap));
}

namespace {

// start position of the unique all-zero window of the given width, if any
std::optional<std::uint64_t> find_zero_run(const BitVec& bits, std::uint32_t width) {
    const std::uint64_t L = bits.size();
    std::uint32_t zeros = 0;
    for (std::uint64_t t = 0; t < L + width - 1; ++t) {
        if (bits.get(t % L))
            zeros = 0;
        else if (++zeros >= width) {
            std::uint64_t start = (t + 1 - width) % L;
            return start;
        }
    }
    return std::nullopt;
}

}  // namespace

BitSequence to_debruijn(const BitSequence& modified) {
    if (verify_kind(modified) != SequenceKind::modified_debruijn)
        raise(Errc::wrong_length, "expected a modified de Bruijn sequence");
    const std::uint32_t n = modified.order_n;
    const std::uint64_t L = modified.length();
    auto run = find_zero_run(modified.bits, n - 1);
    BitSequence out;
    out.order_n = n;
    out.kind = SequenceKind::debruijn;
    out.bits = BitVec(0);
    for (std::uint32_t k = 0; k < n; ++k) out.bits.push_back(false);
    for (std::uint64_t t = 0; t < L - (n - 1); ++t)
        out.bits.push_back(modified.bits.get((*run + n - 1 + t) % L));
    return out;
}

BitSequence canonical_rotation(const BitSequence& seq) {
    std::optional<std::uint64_t> start;
    if (seq.kind == SequenceKind::debruijn)
        start = find_zero_run(seq.bits, seq.order_n);
    else if (seq.kind == SequenceKind::modified_debruijn)
        start = find_zero_run(seq.bits, seq.order_n - 1);
    else
        raise(Errc::unsupported, "canonical rotation applies to de Bruijn kinds");
    if (!start) raise(Errc::inconsistent, "zero run not found");
    BitSequence out;
    out.order_n = seq.order_n;
    out.kind = seq.kind;
    const std::uint64_t L = seq.length();
    out.bits = BitVec(0);
    for (std::uint64_t t = 0; t < L; ++t) out.bits.push_back(seq.bits.get((*start + t) % L));
    return out;
}

std::string to_json(const FeedbackFunction& f) {
    nlohmann::json j;
    j["n"] = f.n();
    j["poly"] = f.poly() ? f.poly()->to_string() : "";
    j["linear_taps"] = f.linear_taps();
    std::vector<std::string> sufs;
    for (const BitVec& s : f.jump_suffixes()) sufs.push_back(s.to_hex());
    j["jump_suffixes"] = sufs;
    return j.dump();
}

FeedbackFunction feedback_function_from_json(std::string_view text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) raise(Errc::parse_error, "invalid JSON");
    try {
        std::uint32_t n = j.at("n").get<std::uint32_t>();
        if (n < 2) raise(Errc::parse_error, "n must be at least 2");
        std::vector<std::uint32_t> taps = j.at("linear_taps").get<std::vector<std::uint32_t>>();
        std::vector<BitVec> sufs;
        for (const auto& h : j.at("jump_suffixes"))
            sufs.push_back(BitVec::from_hex(h.get<std::string>(), n - 1));
        std::optional<gf2::Polynomial> poly;
        std::string ptext = j.at("poly").get<std::string>();
        if (!ptext.empty()) {
            poly = gf2::Polynomial::parse(ptext);
            if (poly->degree() != n)
                raise(Errc::parse_error, "polynomial degree does not match n");
        }
        return FeedbackFunction(n, std::move(taps), std::move(sufs), std::move(poly));
    } catch (const nlohmann::json::exception& e) {
        raise(Errc::parse_error, std::string("feedback function JSON: ") + e.what());
    }
}

void write_ascii(std::ostream& os, const BitSequence& seq) {
    os << seq.bits.to_string() << '\n';
}

void write_packed(std::ostream& os, const BitSequence& seq) {
    std::uint64_t len = seq.length();
    std::array<char, 8> hdr;
    for (int i = 0; i < 8; ++i) hdr[i] = static_cast<char>(len >> (8 * i) & 0xff);
    os.write(hdr.data(), hdr.size());
    std::uint8_t byte = 0;
    for (std::uint64_t t = 0; t < len; ++t) {
        if (seq.bits.get(t)) byte |= std::uint8_t(1) << (t & 7);
        if ((t & 7) == 7 || t + 1 == len) {
            os.put(static_cast<char>(byte));
            byte = 0;
        }
    }
}

BitVec read_bits_ascii(std::istream& is) {
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) return BitVec::from_string(line);
    }
    raise(Errc::parse_error, "no bit line found");
}

BitVec read_bits_packed(std::istream& is) {
    std::array<unsigned char, 8> hdr;
    is.read(reinterpret_cast<char*>(hdr.data()), hdr.size());
    if (!is) raise(Errc::io_error, "truncated length prefix");
    std::uint64_t len = 0;
    for (int i = 0; i < 8; ++i) len |= std::uint64_t(hdr[i]) << (8 * i);
    if (len > (std::uint64_t(1) << 33)) raise(Errc::cap_exceeded, "sequence too long");
    BitVec bits(len);
    int c = 0;
    for (std::uint64_t t = 0; t < len; ++t) {
        if ((t & 7) == 0) {
            c = is.get();
            if (c == std::char_traits<char>::eof()) raise(Errc::io_error, "truncated bits");
        }
        if (c >> (t & 7) & 1) bits.set(t, true);
    }
    return bits;
}

}  // namespace cjf::fsr
