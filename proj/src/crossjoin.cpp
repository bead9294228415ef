#include "cjf/crossjoin.hpp"

#include <atomic>
#include <set>
#include <thread>
#include <unordered_set>

#include "json.hpp"

namespace cjf::crossjoin {

std::string to_json(const CrossJoinQuadruple& q) {
    nlohmann::json j;
    j["i"] = q.i.str();
    j["j"] = q.j.str();
    j["zi"] = q.zi.str();
    j["zj"] = q.zj.str();
    return j.dump();
}

namespace {

BigInt bigint_from_dec(const std::string& s) {
    try {
        return BigInt(s);
    } catch (const std::exception&) {
        raise(Errc::parse_error, "invalid decimal integer '" + s + "'");
    }
}

}  // namespace

CrossJoinQuadruple quadruple_from_json(std::string_view text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) raise(Errc::parse_error, "invalid JSON");
    try {
        return CrossJoinQuadruple{bigint_from_dec(j.at("i").get<std::string>()),
                                  bigint_from_dec(j.at("j").get<std::string>()),
                                  bigint_from_dec(j.at("zi").get<std::string>()),
                                  bigint_from_dec(j.at("zj").get<std::string>())};
    } catch (const nlohmann::json::exception& e) {
        raise(Errc::parse_error, std::string("quadruple JSON: ") + e.what());
    }
}

fsr::StateVector state_at(const gf2::FieldCtx& ctx, const BigInt& t) {
    if (t < 0 || t >= ctx.order())
        raise(Errc::out_of_domain, "position must satisfy 0 <= t < 2^n - 1");
    const std::uint32_t n = ctx.n();
    gf2::FieldElement u = ctx.pow(ctx.generator(), t);
    fsr::StateVector s(n);
    for (std::uint32_t k = 0; k < n; ++k) {
        if (u.get(0)) s.set(k, true);
        if (k + 1 < n) u = ctx.mul_by_x(std::move(u));
    }
    return s;
}

fsr::StateVector conjugate(fsr::StateVector s) {
    s.flip(0);
    return s;
}

bool is_crossjoin_quadruple(const BigInt& i, const BigInt& j, const BigInt& zi,
                            const BigInt& zj, const BigInt& period) {
    BigInt d1 = mod_floor(j - i, period);
    BigInt d2 = mod_floor(zi - i, period);
    BigInt d3 = mod_floor(zj - i, period);
    return 0 < d1 && d1 < d2 && d2 < d3;
}

bool is_crossjoin_quadruple(const CrossJoinQuadruple& q, const BigInt& period) {
    return is_crossjoin_quadruple(q.i, q.j, q.zi, q.zj, period);
}

const fsr::StateVector& StateCache::at(const BigInt& t) {
    auto it = memo_.find(t);
    if (it == memo_.end()) it = memo_.emplace(t, state_at(ctx_, t)).first;
    return it->second;
}

void for_each_crossjoin_pair(
    const gf2::ZechTable& table,
    const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t)>&
        sink) {
    if (table.kind() != gf2::ZechTable::Kind::full)
        raise(Errc::cap_exceeded, "cross-join enumeration needs a full Zech table");
    const std::uint64_t period = (std::uint64_t(1) << table.n()) - 1;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    pairs.reserve((period - 1) / 2);
    for (std::uint64_t t = 1; t < period; ++t) {
        std::uint64_t z = static_cast<std::uint64_t>(table.lookup(t));
        if (t < z) pairs.emplace_back(t, z);
    }
    // with i the global minimum, {t1,z1} and {t2,z2} interleave iff
    // t1 < t2 < z1 < z2
    for (std::size_t p = 0; p < pairs.size(); ++p)
        for (std::size_t q = p + 1; q < pairs.size(); ++q) {
            if (pairs[q].first >= pairs[p].second) break;  // sorted by first
            if (pairs[q].second > pairs[p].second)
                sink(pairs[p].first, pairs[q].first, pairs[p].second, pairs[q].second);
        }
}

std::vector<CrossJoinQuadruple> find_crossjoin_pairs(const gf2::FieldCtx& ctx,
                                                     const gf2::ZechTable& table,
                                                     unsigned threads) {
    if (table.kind() != gf2::ZechTable::Kind::full)
        raise(Errc::cap_exceeded, "cross-join enumeration needs a full Zech table");
    if (table.n() != ctx.n())
        raise(Errc::inconsistent, "table and field orders differ");
    const std::uint64_t period = (std::uint64_t(1) << table.n()) - 1;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    for (std::uint64_t t = 1; t < period; ++t) {
        std::uint64_t z = static_cast<std::uint64_t>(table.lookup(t));
        if (t < z) pairs.emplace_back(t, z);
    }

    auto scan = [&pairs](std::size_t p, std::vector<CrossJoinQuadruple>& out) {
        for (std::size_t q = p + 1; q < pairs.size(); ++q) {
            if (pairs[q].first >= pairs[p].second) break;
            if (pairs[q].second > pairs[p].second)
                out.push_back(CrossJoinQuadruple{pairs[p].first, pairs[q].first,
                                                 pairs[p].second, pairs[q].second});
        }
    };

    if (threads <= 1 || pairs.size() < 64) {
        std::vector<CrossJoinQuadruple> out;
        for (std::size_t p = 0; p < pairs.size(); ++p) scan(p, out);
        return out;
    }

    // workers pull rows; per-row results are merged in row order afterwards
    std::vector<std::vector<CrossJoinQuadruple>> rows(pairs.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t p = next.fetch_add(1); p < pairs.size(); p = next.fetch_add(1))
                scan(p, rows[p]);
        });
    for (auto& th : pool) th.join();
    std::vector<CrossJoinQuadruple> out;
    for (auto& row : rows)
        out.insert(out.end(), std::make_move_iterator(row.begin()),
                   std::make_move_iterator(row.end()));
    return out;
}

fsr::FeedbackFunction synthesize_nfsr(const gf2::FieldCtx& ctx,
                                      std::span<const CrossJoinQuadruple> quadruples,
                                      StateCache* cache) {
    StateCache local(ctx);
    StateCache& states = cache ? *cache : local;

    std::set<BigInt> exponents;
    for (const CrossJoinQuadruple& q : quadruples)
        for (const BigInt* e : {&q.i, &q.j, &q.zi, &q.zj})
            if (!exponents.insert(*e).second)
                raise(Errc::overlapping_pairs,
                      "conjugate pairs share the exponent " + e->str());

    const std::uint32_t n = ctx.n();
    std::vector<BitVec> suffixes;
    std::unordered_set<BitVec, BitVecHash> seen;
    for (const CrossJoinQuadruple& q : quadruples)
        for (const BigInt* e : {&q.i, &q.j}) {
            BitVec suffix = states.at(*e).slice(1, n - 1);
            if (!seen.insert(suffix).second)
                raise(Errc::duplicate_suffix,
                      "two jump states share the suffix " + suffix.to_hex());
            suffixes.push_back(std::move(suffix));
        }
    return fsr::FeedbackFunction(n, ctx.linear_taps(), std::move(suffixes), ctx.poly());
}

std::vector<CrossJoinQuadruple> disjoint_family(const gf2::FieldCtx& ctx,
                                                std::uint32_t stride, std::uint32_t count) {
    const auto& exps = ctx.poly().exponents();
    if (!(exps.size() == 3 && exps[1] == 1))
        raise(Errc::unsupported,
              "family construction needs a trinomial x^n + x + 1, got " +
                  ctx.poly().to_string());
    if (stride == 0 || count == 0) raise(Errc::parse_error, "stride and count must be positive");

    const BigInt& N = ctx.order();
    const std::uint32_t n = ctx.n();
    std::vector<CrossJoinQuadruple> family;
    std::set<BigInt> exponents;
    for (std::uint32_t idx = 0; idx < count; ++idx) {
        BigInt p = boost::multiprecision::powm(BigInt(2), BigInt(stride) * idx, N);
        CrossJoinQuadruple q;
        q.i = p;
        q.j = mod_floor(p * 2, N);
        q.zi = mod_floor(p * n, N);       // Z(2^m) = 2^m Z(1) = n 2^m by doubling
        q.zj = mod_floor(p * 2 * n, N);
        if (!is_crossjoin_quadruple(q, N))
            raise(Errc::invalid_quadruple,
                  "family member " + std::to_string(idx) +
                      " violates the cyclic-order condition");
        for (const BigInt* e : {&q.i, &q.j, &q.zi, &q.zj})
            if (!exponents.insert(*e).second)
                raise(Errc::overlap, "family members share the exponent " + e->str());
        family.push_back(std::move(q));
    }
    return family;
}

fsr::BitSequence cross_join_apply(const fsr::BitSequence& seq, const CrossJoinQuadruple& q) {
    const std::uint32_t n = seq.order_n;
    if (n > 24) raise(Errc::cap_exceeded, "cross-join application capped at order 24");
    const std::uint64_t length = seq.length();
    for (const BigInt* p : {&q.i, &q.j, &q.zi, &q.zj})
        if (*p < 0 || *p >= length)
            raise(Errc::out_of_domain, "position " + p->str() + " outside the sequence");
    const auto pa = static_cast<std::uint64_t>(q.i);
    const auto pb = static_cast<std::uint64_t>(q.j);
    const auto pah = static_cast<std::uint64_t>(q.zi);
    const auto pbh = static_cast<std::uint64_t>(q.zj);

    // windows must be pairwise distinct for successor exchange to make sense
    (void)fsr::window_position_map(seq);

    auto window = [&](std::uint64_t t) {
        std::uint64_t w = 0;
        for (std::uint32_t k = 0; k < n; ++k)
            w |= std::uint64_t(seq.bits.get((t + k) % length)) << k;
        return w;
    };
    if ((window(pa) ^ window(pah)) != 1)
        raise(Errc::not_conjugate, "states at i and zi are not conjugate");
    if ((window(pb) ^ window(pbh)) != 1)
        raise(Errc::not_conjugate, "states at j and zj are not conjugate");

    const BigInt big_length(length);
    if (!is_crossjoin_quadruple(q, big_length))
        raise(Errc::wrong_order, "positions do not occur in the order alpha, beta, "
                                 "alpha-hat, beta-hat");

    std::vector<std::uint32_t> next(length);
    for (std::uint64_t t = 0; t < length; ++t) next[t] = static_cast<std::uint32_t>((t + 1) % length);
    next[pa] = static_cast<std::uint32_t>((pah + 1) % length);
    next[pah] = static_cast<std::uint32_t>((pa + 1) % length);
    next[pb] = static_cast<std::uint32_t>((pbh + 1) % length);
    next[pbh] = static_cast<std::uint32_t>((pb + 1) % length);

    fsr::BitSequence out;
    out.order_n = n;
    out.kind = seq.kind;
    out.bits = BitVec(0);
    std::uint64_t p = 0;
    for (std::uint64_t t = 0; t < length; ++t) {
        out.bits.push_back(seq.bits.get(p));
        p = next[p];
        if (p == 0 && t + 1 < length)
            raise(Errc::wrong_order, "swap split the cycle");
    }
    return out;
}

}  // namespace cjf::crossjoin
