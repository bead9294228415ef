#include "cjf/gf2.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <random>

namespace cjf::gf2 {

namespace {

std::uint32_t parse_u32(std::string_view s) {
    std::uint32_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        raise(Errc::parse_error, "invalid integer '" + std::string(s) + "'");
    return v;
}

std::string strip_spaces(std::string_view text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    return s;
}

}  // namespace

Polynomial Polynomial::from_exponents(std::vector<std::uint32_t> exps) {
    if (exps.empty()) raise(Errc::parse_error, "polynomial has no terms");
    std::sort(exps.begin(), exps.end(), std::greater<>());
    for (std::size_t i = 0; i + 1 < exps.size(); ++i)
        if (exps[i] == exps[i + 1])
            raise(Errc::parse_error, "repeated exponent " + std::to_string(exps[i]));
    if (exps.back() != 0)
        raise(Errc::parse_error, "constant term required (polynomial must end in +1)");
    if (exps.front() < 2)
        raise(Errc::parse_error, "degree must be at least 2");
    Polynomial p;
    p.exponents_ = std::move(exps);
    return p;
}

Polynomial Polynomial::parse(std::string_view text) {
    std::string s = strip_spaces(text);
    if (s.empty()) raise(Errc::parse_error, "empty polynomial");
    std::vector<std::uint32_t> exps;
    if (s.find('x') != std::string::npos || s.find('X') != std::string::npos) {
        std::size_t pos = 0;
        while (pos <= s.size()) {
            std::size_t plus = s.find('+', pos);
            std::string_view term = std::string_view(s).substr(
                pos, plus == std::string::npos ? s.size() - pos : plus - pos);
            if (term == "1")
                exps.push_back(0);
            else if (term == "x" || term == "X")
                exps.push_back(1);
            else if (term.size() > 2 && (term[0] == 'x' || term[0] == 'X') && term[1] == '^')
                exps.push_back(parse_u32(term.substr(2)));
            else
                raise(Errc::parse_error, "invalid term '" + std::string(term) + "'");
            if (plus == std::string::npos) break;
            pos = plus + 1;
        }
    } else {
        std::size_t pos = 0;
        while (pos <= s.size()) {
            std::size_t comma = s.find(',', pos);
            std::string_view item = std::string_view(s).substr(
                pos, comma == std::string::npos ? s.size() - pos : comma - pos);
            exps.push_back(parse_u32(item));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    return from_exponents(std::move(exps));
}

std::string Polynomial::to_string() const {
    std::string s;
    for (std::uint32_t e : exponents_) {
        if (!s.empty()) s += '+';
        if (e == 0)
            s += '1';
        else if (e == 1)
            s += 'x';
        else
            s += "x^" + std::to_string(e);
    }
    return s;
}

std::optional<Polynomial> registry_lookup(std::uint32_t n) {
    static const std::vector<std::vector<std::uint32_t>> entries = {
        {2, 1, 0},        {3, 1, 0},         {4, 1, 0},        {5, 2, 0},
        {6, 1, 0},        {7, 1, 0},         {8, 4, 3, 2, 0},  {9, 4, 0},
        {10, 3, 0},       {11, 2, 0},        {12, 6, 4, 1, 0}, {13, 4, 3, 1, 0},
        {14, 10, 6, 1, 0},{15, 1, 0},        {16, 12, 3, 1, 0},{17, 3, 0},
        {18, 7, 0},       {19, 5, 2, 1, 0},  {20, 3, 0},       {21, 2, 0},
        {22, 1, 0},       {23, 5, 0},        {24, 7, 2, 1, 0}, {31, 3, 0},
        {127, 1, 0},
    };
    for (const auto& e : entries)
        if (e.front() == n) return Polynomial::from_exponents(e);
    return std::nullopt;
}

bool registry_contains(const Polynomial& p) {
    auto hit = registry_lookup(p.degree());
    return hit && *hit == p;
}

namespace {

// Exhaustive power-cycle test: x is primitive mod p iff x^k != 1 for
// 0 < k < 2^n - 1 and x^{2^n-1} = 1. Since p(0) = 1, x is a unit, so an order
// of exactly 2^n - 1 forces the quotient ring to be a field with x primitive.
bool power_cycle_primitive(const Polynomial& p) {
    std::uint32_t n = p.degree();
    if (n <= 63) {
        std::uint64_t low = 0;
        for (std::uint32_t e : p.exponents())
            if (e < n) low |= std::uint64_t(1) << e;
        const std::uint64_t top = std::uint64_t(1) << n;
        const std::uint64_t period = top - 1;
        std::uint64_t b = 2;  // the element x
        for (std::uint64_t k = 1; k < period; ++k) {
            if (b == 1) return false;
            b <<= 1;
            if (b & top) b ^= top | low;
        }
        return b == 1;
    }
    raise(Errc::cap_exceeded, "primitivity check infeasible for degree " + std::to_string(n));
}

}  // namespace

FieldElement FieldCtx::one() const {
    FieldElement u(n_);
    u.set(0, true);
    return u;
}

FieldElement FieldCtx::generator() const {
    FieldElement u(n_);
    u.set(1, true);
    return u;
}

FieldElement FieldCtx::mul_by_x(FieldElement u) const {
    bool carry = u.get(n_ - 1);
    u.shift_up_one();
    if (carry) u ^= low_;
    return u;
}

FieldElement FieldCtx::mul(const FieldElement& u, const FieldElement& v) const {
    FieldElement acc(n_);
    FieldElement shifted = u;
    for (std::uint32_t k = 0; k < n_; ++k) {
        if (v.get(k)) acc ^= shifted;
        if (k + 1 < n_) shifted = mul_by_x(std::move(shifted));
    }
    return acc;
}

FieldElement FieldCtx::pow(const FieldElement& u, BigInt e) const {
    if (e < 0) raise(Errc::out_of_domain, "negative exponent");
    if (!u.any()) return e == 0 ? one() : zero();  // 0^0 = 1
    e = mod_floor(std::move(e), order_);
    FieldElement r = one();
    if (e == 0) return r;
    for (std::int64_t bit = static_cast<std::int64_t>(boost::multiprecision::msb(e)); bit >= 0; --bit) {
        r = mul(r, r);
        if (boost::multiprecision::bit_test(e, static_cast<unsigned>(bit))) r = mul(r, u);
    }
    return r;
}

std::vector<std::uint32_t> FieldCtx::linear_taps() const {
    std::vector<std::uint32_t> taps;
    for (std::uint32_t e : poly_.exponents())
        if (e < n_) taps.push_back(e);
    std::sort(taps.begin(), taps.end());
    return taps;
}

FieldCtx field_new(const Polynomial& poly, const FieldOptions& options) {
    std::uint32_t n = poly.degree();
    if (n > options.degree_cap)
        raise(Errc::cap_exceeded, "degree " + std::to_string(n) + " above cap " +
                                      std::to_string(options.degree_cap));
    FieldCtx ctx;
    ctx.poly_ = poly;
    ctx.n_ = n;
    ctx.order_ = pow2(n) - 1;
    ctx.low_ = BitVec(n);
    for (std::uint32_t e : poly.exponents())
        if (e < n) ctx.low_.set(e, true);

    if (n <= options.primitivity_check_cap) {
        if (!power_cycle_primitive(poly))
            raise(Errc::not_primitive, poly.to_string() + " is not primitive");
        ctx.prim_ = Primitivity::verified;
    } else if (registry_contains(poly)) {
        ctx.prim_ = Primitivity::verified;
    } else if (options.assume_primitive) {
        ctx.prim_ = Primitivity::asserted;
    } else {
        raise(Errc::missing_assertion,
              "primitivity of " + poly.to_string() +
                  " cannot be verified at this degree; pass assume_primitive");
    }
    return ctx;
}

ZechTable ZechTable::build_full(const FieldCtx& ctx, std::uint32_t cap) {
    const std::uint32_t n = ctx.n();
    if (n > cap)
        raise(Errc::cap_exceeded, "full Zech table capped at degree " + std::to_string(cap));
    if (n > 32) raise(Errc::cap_exceeded, "full Zech table entries are 32-bit");

    const std::uint64_t card = std::uint64_t(1) << n;
    const std::uint64_t period = card - 1;
    std::uint64_t low = 0;
    for (std::uint32_t e : ctx.poly().exponents())
        if (e < n) low |= std::uint64_t(1) << e;

    constexpr std::uint32_t unset = 0xffffffffu;
    std::vector<std::uint32_t> dlog(card, unset);
    std::uint64_t b = 1;
    for (std::uint64_t j = 0; j < period; ++j) {
        if (dlog[b] != unset)
            raise(Errc::not_primitive, "power sequence repeats; polynomial not primitive");
        dlog[b] = static_cast<std::uint32_t>(j);
        b <<= 1;
        if (b & card) b ^= card | low;
    }

    ZechTable t;
    t.kind_ = Kind::full;
    t.n_ = n;
    t.poly_ = ctx.poly();
    t.full_.resize(period - 1);
    b = 1;
    for (std::uint64_t j = 1; j < period; ++j) {
        b <<= 1;
        if (b & card) b ^= card | low;
        t.full_[j - 1] = dlog[b ^ 1];  // 1 + a^j has the constant bit flipped
    }
    return t;
}

ZechTable ZechTable::trinomial_identities(const FieldCtx& ctx) {
    if (!ctx.poly().is_trinomial())
        raise(Errc::underivable,
              "identity backend needs a trinomial, got " + ctx.poly().to_string());
    const BigInt N = ctx.order();
    const std::uint32_t n = ctx.n();
    const std::uint32_t k = ctx.poly().exponents()[1];

    ZechTable t;
    t.kind_ = Kind::partial;
    t.n_ = n;
    t.poly_ = ctx.poly();
    // a^n = a^k + 1 gives Z(k) = n; close under Z(2j) = 2Z(j) and Z(Z(j)) = j.
    // The doubling orbit has length dividing n because 2^n = 1 mod N.
    BigInt j = k, z = n;
    for (std::uint32_t m = 0; m < n; ++m) {
        t.partial_.emplace(j, z);
        t.partial_.emplace(z, j);
        j = mod_floor(j * 2, N);
        z = mod_floor(z * 2, N);
    }
    return t;
}

BigInt ZechTable::lookup(const BigInt& j) const {
    const BigInt N = pow2(n_) - 1;
    if (j < 1 || j >= N)
        raise(Errc::out_of_domain, "Zech logarithm is defined on 1 <= j <= 2^n - 2");
    if (kind_ == Kind::full)
        return full_[static_cast<std::size_t>(j - 1)];
    auto it = partial_.find(j);
    if (it == partial_.end())
        raise(Errc::underivable,
              "j outside the identity closure; a full table (or a discrete logarithm) "
              "would be required");
    return it->second;
}

std::uint64_t ZechTable::entry_count() const {
    return kind_ == Kind::full ? full_.size() : partial_.size();
}

namespace {

void put_u16(std::ostream& os, std::uint16_t v) {
    std::array<char, 2> b{static_cast<char>(v & 0xff), static_cast<char>(v >> 8 & 0xff)};
    os.write(b.data(), b.size());
}

void put_u32(std::ostream& os, std::uint32_t v) {
    std::array<char, 4> b;
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>(v >> (8 * i) & 0xff);
    os.write(b.data(), b.size());
}

std::uint16_t get_u16(std::istream& is) {
    std::array<unsigned char, 2> b;
    is.read(reinterpret_cast<char*>(b.data()), b.size());
    return static_cast<std::uint16_t>(b[0] | b[1] << 8);
}

std::uint32_t get_u32(std::istream& is) {
    std::array<unsigned char, 4> b;
    is.read(reinterpret_cast<char*>(b.data()), b.size());
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
    return v;
}

constexpr char zech_magic[4] = {'Z', 'E', 'C', 'H'};

}  // namespace

void ZechTable::save(const std::filesystem::path& path) const {
    if (kind_ != Kind::full)
        raise(Errc::unsupported, "only full tables have a cache format");
    std::ofstream os(path, std::ios::binary);
    if (!os) raise(Errc::io_error, "cannot open " + path.string() + " for writing");
    os.write(zech_magic, 4);
    put_u16(os, 1);
    put_u16(os, static_cast<std::uint16_t>(n_));
    put_u16(os, static_cast<std::uint16_t>(poly_.exponents().size()));
    for (std::uint32_t e : poly_.exponents()) put_u32(os, e);
    for (std::uint32_t v : full_) put_u32(os, v);
    if (!os) raise(Errc::io_error, "write failed: " + path.string());
}

ZechTable ZechTable::load(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) raise(Errc::io_error, "cannot open " + path.string());
    char magic[4];
    is.read(magic, 4);
    if (!is || !std::equal(magic, magic + 4, zech_magic))
        raise(Errc::io_error, "bad magic in " + path.string());
    if (get_u16(is) != 1) raise(Errc::io_error, "unsupported cache version");
    std::uint32_t n = get_u16(is);
    if (n < 2 || n > 32) raise(Errc::io_error, "implausible degree in cache");
    std::uint32_t nexp = get_u16(is);
    std::vector<std::uint32_t> exps(nexp);
    for (auto& e : exps) e = get_u32(is);
    if (!is) raise(Errc::io_error, "truncated cache header");

    ZechTable t;
    t.kind_ = Kind::full;
    t.n_ = n;
    t.poly_ = Polynomial::from_exponents(exps);
    if (t.poly_.degree() != n) raise(Errc::io_error, "cache polynomial degree mismatch");
    const std::uint64_t period = (std::uint64_t(1) << n) - 1;
    t.full_.resize(period - 1);
    for (auto& v : t.full_) v = get_u32(is);
    if (!is) raise(Errc::io_error, "truncated cache body");
    if (is.peek() != std::char_traits<char>::eof())
        raise(Errc::io_error, "trailing bytes in cache");

    // involution spot check on 100 entries
    std::mt19937 rng(0x5a454348u);
    std::uniform_int_distribution<std::uint64_t> dist(1, period - 1);
    for (int s = 0; s < 100; ++s) {
        std::uint64_t j = dist(rng);
        std::uint64_t z = t.full_[j - 1];
        if (z < 1 || z > period - 1 || t.full_[z - 1] != j)
            raise(Errc::io_error, "cache fails the involution check; corrupt table");
    }
    return t;
}

}  // namespace cjf::gf2
