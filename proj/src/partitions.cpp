#include "klhall/partitions.hpp"

#include <nlohmann/json.hpp>

#include <limits>
#include <sstream>

#include "klhall/words.hpp"

namespace klhall {

using nlohmann::json;

void BMultiset::add(long i, const BigInt& count) {
    if (i < 1) throw std::domain_error("BMultiset: part index must be >= 1");
    if (count < 0) throw std::domain_error("BMultiset: negative multiplicity");
    if (count == 0) return;
    mult[i] += count;
}

BigInt BMultiset::count(long i) const {
    auto it = mult.find(i);
    return it == mult.end() ? BigInt(0) : it->second;
}

long BMultiset::max_index() const { return mult.empty() ? 0 : mult.rbegin()->first; }

BigInt bweight(const BMultiset& nu) {
    BigInt w = 0;
    for (const auto& [i, m] : nu.mult) w += m * b_part(nu.ctx, i);
    return w;
}

Weights weights(const std::vector<BigInt>& parts) {
    Weights w{0, 0, 0};
    for (std::size_t i = 0; i < parts.size(); ++i) {
        w.total += parts[i];
        if ((i + 1) % 2 == 1)
            w.odd += parts[i];
        else
            w.even += parts[i];
    }
    return w;
}

bool is_lecture_hall(const std::vector<BigInt>& parts, const KLContext& ctx, long n) {
    if (static_cast<long>(parts.size()) != n || n < 1) return false;
    for (const BigInt& p : parts)
        if (p < 0) return false;
    for (long i = 1; i < n; ++i)
        if (parts[i - 1] * a_seq(ctx, i + 1) > parts[i] * a_seq(ctx, i)) return false;
    return true;
}

namespace {

// r > s_0^{(ctx)} * s, decided in exact quadratic arithmetic.
bool gap_ok_quad(const KLContext& ctx, const BigInt& r, const BigInt& s) {
    QuadNum lhs = QuadNum::integer(r, ctx.D());
    return (lhs - s_val(ctx, 0) * s).sign() > 0;
}

// The same inequality read through the admissible-word systems
// (eq:klratinf0, eq:1kratinf0, eq:1kratinf1).
bool gap_ok_words(const KLContext& ctx, const BigInt& r, const BigInt& s) {
    if (s == 0) return r >= 1;
    if (r == 0) return false;
    if (ctx.general()) {
        Digits wr = encode_gen(ctx, r);
        Digits ws = shifted(encode_gen(ctx.swapped(), s));
        return cmp_prec(wr, ws) >= 0;
    }
    if (ctx.is_k1()) {
        // r > s_0^{(k,1)} s  <=>  [r]^{(k,1)} >= p_1([s]^{(1,k)})
        Digits wr = encode_gen(KLContext(ctx.k - 2, ctx.k - 2), r);
        PairWord ps = encode_1k(ctx.k, s);
        return cmp_prec(wr, ps.s1) >= 0;
    }
    // (1,k): r > s_0^{(1,k)} s  <=>  p_2([r]^{(1,k)}) >= [s]^{(k,1)}
    PairWord pr = encode_1k(ctx.l, r);
    Digits ws = encode_gen(KLContext(ctx.l - 2, ctx.l - 2), s);
    return cmp_prec(pr.s2, ws) >= 0;
}

}  // namespace

bool is_euler(const std::vector<BigInt>& parts, const KLContext& ctx) {
    long len = static_cast<long>(parts.size());
    if (len < 2 || len % 2 != 0) return false;
    for (const BigInt& p : parts)
        if (p < 0) return false;
    long t = len / 2;
    if (parts[2 * t - 1] != 0) return false;
    bool ok = true;
    for (long i = 1; i <= t - 1 && ok; ++i) {
        // lambda_{2i-1} > s_0^{(k,l)} lambda_{2i}
        bool quad = gap_ok_quad(ctx, parts[2 * i - 2], parts[2 * i - 1]);
        bool word = gap_ok_words(ctx, parts[2 * i - 2], parts[2 * i - 1]);
        if (quad != word)
            throw std::logic_error("is_euler: ratio and word evaluations disagree (odd/even)");
        ok = quad;
        if (!ok) break;
        // lambda_{2i} > s_0^{(l,k)} lambda_{2i+1}
        quad = gap_ok_quad(ctx.swapped(), parts[2 * i - 1], parts[2 * i]);
        word = gap_ok_words(ctx.swapped(), parts[2 * i - 1], parts[2 * i]);
        if (quad != word)
            throw std::logic_error("is_euler: ratio and word evaluations disagree (even/odd)");
        ok = quad;
    }
    return ok;
}

std::vector<BigInt> distinct_to_euler(const std::vector<BigInt>& decreasing_parts) {
    std::vector<BigInt> out = decreasing_parts;
    out.push_back(0);
    if (out.size() % 2 != 0) out.push_back(0);
    return out;
}

BMultiset parse_mult(const KLContext& ctx, const std::string& text) {
    BMultiset nu(ctx);
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("multiset parse: expected i:m pairs");
        long idx = std::stol(item.substr(0, colon));
        BigInt m(item.substr(colon + 1));
        nu.add(idx, m);
    }
    return nu;
}

std::string render_mult(const BMultiset& nu) {
    std::string out;
    for (const auto& [i, m] : nu.mult) {
        if (!out.empty()) out += ",";
        out += std::to_string(i) + ":" + m.str();
    }
    return out;
}

std::string parts_to_string(const std::vector<BigInt>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += " ";
        out += parts[i].str();
    }
    return out;
}

std::vector<BigInt> parse_parts(const std::string& text) {
    std::vector<BigInt> out;
    std::stringstream ss(text);
    std::string tok;
    while (ss >> tok) {
        if (!tok.empty() && tok.back() == ',') tok.pop_back();
        if (tok.empty()) continue;
        out.emplace_back(tok);
    }
    return out;
}

namespace {

json bigint_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return json(static_cast<long long>(v));
    return json(v.str());
}

BigInt bigint_from_json(const json& j) {
    if (j.is_string()) return BigInt(j.get<std::string>());
    return BigInt(j.get<long long>());
}

}  // namespace

std::string multiset_json(const BMultiset& nu) {
    json j;
    j["k"] = nu.ctx.k;
    j["l"] = nu.ctx.l;
    j["mult"] = json::object();
    for (const auto& [i, m] : nu.mult) j["mult"][std::to_string(i)] = bigint_to_json(m);
    return j.dump();
}

std::string partition_json(const KLContext& ctx, const std::vector<BigInt>& parts) {
    json j;
    j["k"] = ctx.k;
    j["l"] = ctx.l;
    j["parts"] = json::array();
    for (const BigInt& p : parts) j["parts"].push_back(bigint_to_json(p));
    return j.dump();
}

BMultiset multiset_from_json(const std::string& text) {
    json j = json::parse(text);
    BMultiset nu(KLContext(j.at("k").get<long>(), j.at("l").get<long>()));
    for (auto it = j.at("mult").begin(); it != j.at("mult").end(); ++it)
        nu.add(std::stol(it.key()), bigint_from_json(it.value()));
    return nu;
}

std::pair<KLContext, std::vector<BigInt>> partition_from_json(const std::string& text) {
    json j = json::parse(text);
    KLContext ctx(j.at("k").get<long>(), j.at("l").get<long>());
    std::vector<BigInt> parts;
    for (const auto& p : j.at("parts")) parts.push_back(bigint_from_json(p));
    return {ctx, parts};
}

}  // namespace klhall
