#include "klhall/words.hpp"

#include <cctype>
#include <functional>
#include <sstream>

namespace klhall {

void trim_zeros(Digits& d) {
    while (!d.empty() && d.back() == 0) d.pop_back();
}

Digits shifted(const Digits& d) {
    Digits r;
    r.reserve(d.size() + 1);
    r.push_back(0);
    r.insert(r.end(), d.begin(), d.end());
    return r;
}

Digits unshifted(const Digits& d) {
    if (d.empty()) throw std::domain_error("unshift: empty word");
    if (d.front() != 0) throw std::domain_error("unshift: leading digit is nonzero");
    return Digits(d.begin() + 1, d.end());
}

Digits truncated_low(const Digits& d, long i) {
    Digits r = d;
    for (long h = 0; h + 1 < i && h < static_cast<long>(r.size()); ++h) r[h] = 0;
    return r;
}

static const BigInt& digit_at(const Digits& d, std::size_t pos0) {
    static const BigInt zero = 0;
    return pos0 < d.size() ? d[pos0] : zero;
}

int cmp_prec(const Digits& a, const Digits& b) {
    std::size_t top = std::max(a.size(), b.size());
    for (std::size_t i = top; i-- > 0;) {
        const BigInt &x = digit_at(a, i), &y = digit_at(b, i);
        if (x != y) return x < y ? -1 : 1;
    }
    return 0;
}

int cmp_ll(const Digits& a, const Digits& b) {
    std::size_t top = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < top; ++i) {
        const BigInt &x = digit_at(a, i), &y = digit_at(b, i);
        if (x != y) return x < y ? -1 : 1;
    }
    return 0;
}

// ---- general (k,l >= 2) -----------------------------------------------------

static long cap_o(const KLContext& ctx, long pos) {
    // o_{2i-1} = l-2, o_{2i} = k-2 (pos is 1-based)
    return pos % 2 == 1 ? ctx.l - 2 : ctx.k - 2;
}

long digit_bound(const KLContext& ctx, long pos) { return cap_o(ctx, pos) + 1; }

bool is_admissible_gen(const KLContext& ctx, const Digits& w) {
    if (!ctx.general()) throw std::domain_error("is_admissible_gen: needs k,l >= 2");
    long len = static_cast<long>(w.size());
    for (long p = 1; p <= len; ++p) {
        const BigInt& c = w[p - 1];
        if (c < 0 || c > digit_bound(ctx, p)) return false;
    }
    // forbidden pattern: c_h = o_h + chi(h in {i,j}), i <= h <= j
    for (long i = 1; i <= len; ++i) {
        if (w[i - 1] != cap_o(ctx, i) + 1) continue;
        for (long h = i + 1; h <= len; ++h) {
            long o = cap_o(ctx, h);
            if (w[h - 1] == o + 1) return false;  // pattern (i, h)
            if (w[h - 1] != o) break;
        }
    }
    return true;
}

Digits encode_gen(const KLContext& ctx, const BigInt& m) {
    if (!ctx.general()) throw std::domain_error("encode_gen: needs k,l >= 2");
    if (m < 0) throw std::domain_error("encode_gen: negative value");
    if (m == 0) return {};
    // minimal n with m < a_n; greedy from the top position down
    long n = 1;
    while (a_seq(ctx, n) <= m) ++n;
    Digits w(static_cast<std::size_t>(n - 1), BigInt(0));
    BigInt rem = m;
    for (long i = n - 1; i >= 1; --i) {
        BigInt ai = a_seq(ctx, i);
        w[i - 1] = floor_div(rem, ai);
        rem -= w[i - 1] * ai;
    }
    trim_zeros(w);
    return w;
}

BigInt decode_gen(const KLContext& ctx, const Digits& w) {
    if (!is_admissible_gen(ctx, w)) throw std::domain_error("decode_gen: inadmissible word");
    BigInt m = 0;
    for (std::size_t i = 0; i < w.size(); ++i) m += w[i] * a_seq(ctx, static_cast<long long>(i) + 1);
    return m;
}

bool is_admissible_gen_fin(const KLContext& ctx, long n, const Digits& w) {
    if (static_cast<long>(w.size()) != n) return false;
    if (n == 0) return true;
    if (w[n - 1] < 0) return false;
    Digits low(w.begin(), w.end() - 1);
    trim_zeros(low);
    return is_admissible_gen(ctx, low);
}

Digits encode_gen_fin(const KLContext& ctx, long n, const BigInt& m) {
    if (m < 0) throw std::domain_error("encode_gen_fin: negative value");
    if (n == 0) {
        if (m != 0) throw std::domain_error("encode_gen_fin: nonzero value at length 0");
        return {};
    }
    BigInt an = a_seq(ctx, n);
    BigInt top = floor_div(m, an);
    Digits w = encode_gen(ctx, m - top * an);
    w.resize(static_cast<std::size_t>(n), BigInt(0));
    w[n - 1] = top;
    return w;
}

BigInt decode_gen_fin(const KLContext& ctx, long n, const Digits& w) {
    if (!is_admissible_gen_fin(ctx, n, w))
        throw std::domain_error("decode_gen_fin: inadmissible word");
    BigInt m = 0;
    for (long i = 1; i <= n; ++i) m += w[i - 1] * a_seq(ctx, i);
    return m;
}

// ---- (k,1) ------------------------------------------------------------------

long k1_digit_count(long n) { return (n + 1) / 2; }

static KLContext reduced_ctx(long k) {
    if (k < 4) throw std::domain_error("(k,1)/(1,k) words need k >= 4");
    return KLContext(k - 2, k - 2);
}

bool is_admissible_k1_fin(long k, long n, const Digits& w) {
    KLContext red = reduced_ctx(k);
    if (static_cast<long>(w.size()) != k1_digit_count(n)) return false;
    if (n == 0) return true;
    if (n % 2 == 0) return is_admissible_gen_fin(red, n / 2, w);
    long t = (n + 1) / 2;
    if (w[t - 1] < 0) return false;
    if (t == 1) return true;
    Digits low(w.begin(), w.begin() + (t - 1));
    if (low[t - 2] == 0) {
        // class ^0: lower word lives strictly below position t-1
        low.pop_back();
        trim_zeros(low);
        return is_admissible_gen(red, low);
    }
    low[t - 2] -= 1;  // class ^1
    trim_zeros(low);
    return is_admissible_gen(red, low);
}

Digits encode_k1_fin(long k, long n, const BigInt& m) {
    KLContext red = reduced_ctx(k);
    if (m < 0) throw std::domain_error("encode_k1_fin: negative value");
    if (n == 0) {
        if (m != 0) throw std::domain_error("encode_k1_fin: nonzero value at length 0");
        return {};
    }
    if (n % 2 == 0) return encode_gen_fin(red, n / 2, m);
    long t = (n + 1) / 2;
    KLContext k1(k, 1);
    BigInt an = a_seq(k1, n);  // a_{2t-1}^{(k,1)} = a_t^{(k-2)} + a_{t-1}^{(k-2)}
    BigInt top = floor_div(m, an);
    BigInt r = m - top * an;
    if (t == 1) return {top};  // [m]^{(k,1)}_1 = (m)
    BigInt A = a_seq(red, t - 1);
    Digits w;
    if (r < A) {
        w = encode_gen_fin(red, t - 1, r);
    } else {
        w = encode_gen_fin(red, t, r - A);
        if (w[t - 1] != 0) throw std::logic_error("encode_k1_fin: top overflow in case 2");
        w.pop_back();
        w[t - 2] += 1;
    }
    w.resize(static_cast<std::size_t>(t), BigInt(0));
    w[t - 1] = top;
    return w;
}

BigInt decode_k1_fin(long k, long n, const Digits& w) {
    KLContext red = reduced_ctx(k);
    if (!is_admissible_k1_fin(k, n, w)) throw std::domain_error("decode_k1_fin: inadmissible word");
    if (n == 0) return 0;
    if (n % 2 == 0) return decode_gen_fin(red, n / 2, w);
    long t = (n + 1) / 2;
    BigInt m = w[t - 1] * a_seq(KLContext(k, 1), n);
    for (long i = 1; i <= t - 1; ++i) m += w[i - 1] * a_seq(red, i);
    return m;
}

// ---- (1,k) pairs -------------------------------------------------------------

PairWord encode_1k(long k, const BigInt& m) {
    if (m < 0) throw std::domain_error("encode_1k: negative value");
    if (m == 0) return {};
    KLContext red = reduced_ctx(k);
    QuadNum x = s_val(KLContext(k, 1), 0);  // s_0^{(k,1)}, in [1/2, 1)
    BigInt a = x.floor_mul(m) + 1;
    return PairWord{encode_gen(red, a), encode_gen(red, m - a)};
}

BigInt decode_1k(long k, const PairWord& w) {
    KLContext red = reduced_ctx(k);
    BigInt m = decode_gen(red, w.s1) + decode_gen(red, w.s2);
    if (!(encode_1k(k, m) == w)) throw std::domain_error("decode_1k: not a canonical (1,k) pair");
    return m;
}

PairWord encode_1k_fin(long k, long n, const BigInt& m) {
    if (m < 0) throw std::domain_error("encode_1k_fin: negative value");
    KLContext k1(k, 1), onek(1, k);
    BigInt a = ceil_div(a_seq(k1, n + 1) * m, a_seq(onek, n));
    return PairWord{encode_k1_fin(k, n + 1, a), encode_k1_fin(k, n - 1, m - a)};
}

BigInt decode_1k_fin(long k, long n, const PairWord& w) {
    BigInt m = decode_k1_fin(k, n + 1, w.s1) + decode_k1_fin(k, n - 1, w.s2);
    if (!(encode_1k_fin(k, n, m) == w))
        throw std::domain_error("decode_1k_fin: not a canonical (1,k) pair");
    return m;
}

std::optional<int> cmp_pair(const PairWord& a, const PairWord& b) {
    int c1 = cmp_prec(a.s1, b.s1), c2 = cmp_prec(a.s2, b.s2);
    if (c1 == c2) return c1;
    if (c1 == 0) return c2;
    if (c2 == 0) return c1;
    return std::nullopt;
}

PairWord pair_shifted(const PairWord& w) { return {shifted(w.s1), shifted(w.s2)}; }

PairWord pair_unshifted(const PairWord& w) { return {unshifted(w.s1), unshifted(w.s2)}; }

// ---- contexts ----------------------------------------------------------------

std::string WordCtx::str() const {
    std::ostringstream os;
    os << "_" << depth << "C^(" << ctx.k << "," << ctx.l << ")";
    if (finite) os << "_" << n;
    return os.str();
}

std::string PairCtx::str() const {
    std::ostringstream os;
    os << "_{+" << d << "}C^(1," << k << ")";
    if (finite) os << "_" << n;
    return os.str();
}

namespace {

// Base system a word context reduces to after stripping its leading zeros.
struct BaseSys {
    WordCtx::Family fam;
    KLContext ctx;  // Gen only
    long k = 0;     // K1 only
    bool finite;
    long n;  // base system length when finite
};

BaseSys base_of(const WordCtx& s) {
    if (s.depth < 1) throw std::domain_error("WordCtx: depth must be >= 1");
    if (s.fam == WordCtx::Family::Gen) {
        KLContext base = (s.depth % 2 == 1) ? s.ctx : s.ctx.swapped();
        long bn = s.finite ? s.n - (s.depth - 1) : 0;
        if (s.finite && bn < 0) throw std::domain_error("WordCtx: depth exceeds length");
        return {s.fam, base, 0, s.finite, bn};
    }
    long bn = s.finite ? s.n - 2 * (s.depth - 1) : 0;
    if (s.finite && bn < 0) throw std::domain_error("WordCtx: depth exceeds length");
    return {s.fam, s.ctx, s.ctx.k, s.finite, bn};
}

Digits strip_depth(const WordCtx& s, const Digits& w) {
    Digits r = w;
    for (long i = 0; i < s.depth - 1; ++i) {
        if (r.empty()) break;  // canonical infinite words may be shorter
        r = unshifted(r);
    }
    return r;
}

long expected_digits(const WordCtx& s) {
    if (!s.finite) return -1;
    if (s.fam == WordCtx::Family::Gen) return s.n;
    return k1_digit_count(s.n);
}

}  // namespace

bool ctx_contains(const WordCtx& s, const Digits& w) {
    for (long i = 0; i < s.depth - 1 && i < static_cast<long>(w.size()); ++i)
        if (w[i] != 0) return false;
    if (s.finite && static_cast<long>(w.size()) != expected_digits(s)) return false;
    BaseSys b = base_of(s);
    Digits core = strip_depth(s, w);
    if (b.fam == WordCtx::Family::Gen) {
        if (!b.finite) {
            Digits t = core;
            trim_zeros(t);
            return is_admissible_gen(b.ctx, t);
        }
        return is_admissible_gen_fin(b.ctx, b.n, core);
    }
    if (!b.finite) {
        Digits t = core;
        trim_zeros(t);
        return is_admissible_gen(reduced_ctx(b.k), t);
    }
    return is_admissible_k1_fin(b.k, b.n, core);
}

BigInt ctx_rank(const WordCtx& s, const Digits& w) {
    if (!ctx_contains(s, w)) throw std::domain_error("ctx_rank: word not in " + s.str());
    BaseSys b = base_of(s);
    Digits core = strip_depth(s, w);
    if (b.fam == WordCtx::Family::Gen) {
        if (!b.finite) {
            trim_zeros(core);
            return decode_gen(b.ctx, core);
        }
        return decode_gen_fin(b.ctx, b.n, core);
    }
    if (!b.finite) {
        trim_zeros(core);
        return decode_gen(reduced_ctx(b.k), core);
    }
    return decode_k1_fin(b.k, b.n, core);
}

Digits ctx_elem(const WordCtx& s, const BigInt& rank) {
    if (rank < 0) throw std::domain_error("ctx_elem: negative rank");
    BaseSys b = base_of(s);
    Digits core;
    if (b.fam == WordCtx::Family::Gen) {
        core = b.finite ? encode_gen_fin(b.ctx, b.n, rank) : encode_gen(b.ctx, rank);
    } else {
        core = b.finite ? encode_k1_fin(b.k, b.n, rank) : encode_gen(reduced_ctx(b.k), rank);
    }
    Digits w(static_cast<std::size_t>(s.depth - 1), BigInt(0));
    w.insert(w.end(), core.begin(), core.end());
    if (s.finite)
        w.resize(static_cast<std::size_t>(expected_digits(s)), BigInt(0));
    else
        trim_zeros(w);
    return w;
}

Digits follower(const BigInt& m, const WordCtx& s, const Digits& w) {
    return ctx_elem(s, ctx_rank(s, w) + m);
}

std::optional<Digits> predecessor(const BigInt& m, const WordCtx& s, const Digits& w) {
    BigInt r = ctx_rank(s, w) - m;
    if (r < 0) return std::nullopt;
    return ctx_elem(s, r);
}

// ---- digit-rule unit successors (oracle route) --------------------------------

namespace {

// Generic scan shared by Lemmas 4.13/4.14/4.16. Positions run from `from`
// (the context depth) up to `last_pattern_pos`; `cont` gives the digit value
// that lets a candidate pattern continue at a position, `top` the value that
// closes it. Case 2 increments position `from`.
Digits digit_step_scan(const Digits& w, long from, long last_pattern_pos,
                       const std::function<long(long)>& cont,
                       const std::function<long(long)>& top, std::size_t out_digits) {
    Digits d = w;
    if (d.size() < out_digits) d.resize(out_digits, BigInt(0));
    long h = from;
    while (h <= last_pattern_pos) {
        const BigInt& c = digit_at(d, static_cast<std::size_t>(h - 1));
        if (c == top(h)) {
            for (long i = from; i <= h; ++i) d[i - 1] = 0;
            if (d.size() < static_cast<std::size_t>(h + 1)) d.resize(static_cast<std::size_t>(h + 1), BigInt(0));
            d[h] += 1;  // position h+1
            return d;
        }
        if (c != cont(h)) break;
        ++h;
    }
    if (d.size() < static_cast<std::size_t>(from)) d.resize(static_cast<std::size_t>(from), BigInt(0));
    d[from - 1] += 1;
    return d;
}

}  // namespace

Digits follower_digit_step(const WordCtx& s, const Digits& w) {
    if (!ctx_contains(s, w)) throw std::domain_error("follower_digit_step: word not in context");
    if (s.fam == WordCtx::Family::Gen || (s.finite && s.n % 2 == 0) || !s.finite) {
        // caps of the ambient word family at absolute positions
        KLContext amb = s.fam == WordCtx::Family::Gen ? s.ctx : reduced_ctx(s.ctx.k);
        long nd;
        long last;
        if (s.fam == WordCtx::Family::Gen) {
            nd = s.finite ? s.n : static_cast<long>(w.size()) + 2;
            last = s.finite ? s.n - 1 : nd;
        } else {
            nd = s.finite ? k1_digit_count(s.n) : static_cast<long>(w.size()) + 2;
            last = s.finite ? nd - 1 : nd;
        }
        Digits d = digit_step_scan(
            w, s.depth, last, [&](long h) { return cap_o(amb, h); },
            [&](long h) { return cap_o(amb, h) + 1; },
            s.finite ? static_cast<std::size_t>(nd) : std::size_t(0));
        if (!s.finite) trim_zeros(d);
        return d;
    }
    // (k,1), odd length 2t-1 (Lemma 4.16): position t-1 carries a +1 bonus.
    KLContext red = reduced_ctx(s.ctx.k);
    long t = k1_digit_count(s.n);
    Digits d = digit_step_scan(
        w, s.depth, t - 1, [&](long h) { return cap_o(red, h); },
        [&](long h) { return cap_o(red, h) + 1 + (h == t - 1 ? 1 : 0); },
        static_cast<std::size_t>(t));
    return d;
}

// ---- pair contexts -------------------------------------------------------------

namespace {

PairCtx check_pair_ctx(const PairCtx& s) {
    if (s.k < 4) throw std::domain_error("PairCtx: k >= 4 required");
    if (s.d < 0) throw std::domain_error("PairCtx: negative shift depth");
    if (s.finite && s.n < 1) throw std::domain_error("PairCtx: length must be >= 1");
    return s;
}

}  // namespace

namespace {

// Components of canonical infinite pairs are trimmed, so a conceptual
// leading zero may be absent; dropping it from an empty word is a no-op.
Digits unshift_lenient(const Digits& d) { return d.empty() ? d : unshifted(d); }

}  // namespace

BigInt pair_rank(const PairCtx& s0, const PairWord& w) {
    PairCtx s = check_pair_ctx(s0);
    PairWord core = w;
    for (long i = 0; i < s.d; ++i) core = PairWord{unshift_lenient(core.s1), unshift_lenient(core.s2)};
    if (!s.finite) {
        trim_zeros(core.s1);
        trim_zeros(core.s2);
        return decode_1k(s.k, core);
    }
    return decode_1k_fin(s.k, s.n, core);
}

PairWord pair_elem(const PairCtx& s0, const BigInt& rank) {
    PairCtx s = check_pair_ctx(s0);
    if (rank < 0) throw std::domain_error("pair_elem: negative rank");
    PairWord core = s.finite ? encode_1k_fin(s.k, s.n, rank) : encode_1k(s.k, rank);
    for (long i = 0; i < s.d; ++i) core = pair_shifted(core);
    if (s.finite) {
        core.s1.resize(static_cast<std::size_t>(k1_digit_count(s.n + 1) + s.d), BigInt(0));
        core.s2.resize(static_cast<std::size_t>(k1_digit_count(s.n - 1) + s.d), BigInt(0));
    } else {
        trim_zeros(core.s1);
        trim_zeros(core.s2);
    }
    return core;
}

PairWord pair_follower(const BigInt& m, const PairCtx& s, const PairWord& w) {
    return pair_elem(s, pair_rank(s, w) + m);
}

std::optional<PairWord> pair_predecessor(const BigInt& m, const PairCtx& s, const PairWord& w) {
    BigInt r = pair_rank(s, w) - m;
    if (r < 0) return std::nullopt;
    return pair_elem(s, r);
}

PairWord pair_follower_digit_step(const PairCtx& s0, const PairWord& w) {
    PairCtx s = check_pair_ctx(s0);
    WordCtx c1 = s.finite ? WordCtx::k1_fin(s.k, s.n + 1 + 2 * s.d, s.d + 1)
                          : WordCtx::k1_inf(s.k, s.d + 1);
    if (s.finite && s.n == 1) {
        // s2 has no free digit at length 1; succession moves s1 alone.
        return PairWord{follower(1, c1, w.s1), w.s2};
    }
    WordCtx c2 = s.finite ? WordCtx::k1_fin(s.k, s.n - 1 + 2 * s.d, s.d + 1)
                          : WordCtx::k1_inf(s.k, s.d + 1);
    Digits bump2 = shifted(follower(1, c2, w.s2));
    Digits s1full = w.s1;
    if (!s.finite) {
        trim_zeros(bump2);
        Digits t = s1full;
        trim_zeros(t);
        s1full = t;
    }
    if (cmp_prec(s1full, bump2) != 0) {
        return PairWord{follower(1, c1, w.s1), w.s2};
    }
    return PairWord{w.s1, follower(1, c2, w.s2)};
}

// ---- rendering / parsing --------------------------------------------------------

std::string render_digits(const Digits& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ",";
        s += w[i].str();
    }
    return s + ")";
}

std::string render_pair(const PairWord& w) {
    return "(" + render_digits(w.s1) + "," + render_digits(w.s2) + ")";
}

namespace {

Digits parse_digits_at(const std::string& text, std::size_t& pos) {
    auto skip_ws = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
    skip_ws();
    if (pos >= text.size() || text[pos] != '(') throw std::invalid_argument("word parse: expected '('");
    ++pos;
    Digits out;
    skip_ws();
    if (pos < text.size() && text[pos] == ')') {
        ++pos;
        return out;
    }
    while (true) {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw std::invalid_argument("word parse: expected digit value");
        out.emplace_back(text.substr(start, pos - start));
        skip_ws();
        if (pos < text.size() && text[pos] == ',') {
            ++pos;
            continue;
        }
        if (pos < text.size() && text[pos] == ')') {
            ++pos;
            return out;
        }
        throw std::invalid_argument("word parse: expected ',' or ')'");
    }
}

}  // namespace

Digits parse_digits(const std::string& text) {
    std::size_t pos = 0;
    Digits d = parse_digits_at(text, pos);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) throw std::invalid_argument("word parse: trailing characters");
    return d;
}

PairWord parse_pair(const std::string& text) {
    std::size_t pos = 0;
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size() || text[pos] != '(') throw std::invalid_argument("pair parse: expected '('");
    ++pos;
    PairWord w;
    w.s1 = parse_digits_at(text, pos);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size() || text[pos] != ',') throw std::invalid_argument("pair parse: expected ','");
    ++pos;
    w.s2 = parse_digits_at(text, pos);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size() || text[pos] != ')') throw std::invalid_argument("pair parse: expected ')'");
    ++pos;
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) throw std::invalid_argument("pair parse: trailing characters");
    return w;
}

}  // namespace klhall
