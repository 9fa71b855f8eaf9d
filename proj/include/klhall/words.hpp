#pragma once

#include <optional>
#include <string>
#include <vector>

#include "klhall/bigint.hpp"
#include "klhall/kl_context.hpp"

namespace klhall {

// Digit strings are stored densely up to the last nonzero digit
// (index 0 holds c_1). Infinite words are canonical: no trailing zeros.
// Finite words carry their digit count explicitly at the call site.
using Digits = std::vector<BigInt>;

void trim_zeros(Digits& d);
Digits shifted(const Digits& d);                  // 0. prefix
Digits unshifted(const Digits& d);                // drop one leading zero (must be 0)
Digits truncated_low(const Digits& d, long i);    // zero the first i-1 digits

// Lexicographic orders of Def 4.2: prec compares the highest differing
// index, ll the lowest. Both treat missing digits as 0.
int cmp_prec(const Digits& a, const Digits& b);
int cmp_ll(const Digits& a, const Digits& b);

// ---- (k,l)-admissible words, k,l >= 2 ------------------------------------

// Digit cap o_i + 1 with o_{2i-1} = l-2, o_{2i} = k-2.
long digit_bound(const KLContext& ctx, long pos);

// Infinite words: digit bounds plus no forbidden pattern
// c_h = o_h + chi(h in {i,j}) for i <= h <= j.
bool is_admissible_gen(const KLContext& ctx, const Digits& w);
Digits encode_gen(const KLContext& ctx, const BigInt& m);
BigInt decode_gen(const KLContext& ctx, const Digits& w);

// Finite words [m]^{(k,l)}_n: n digits, top digit unbounded, lower digits an
// admissible infinite word.
bool is_admissible_gen_fin(const KLContext& ctx, long n, const Digits& w);
Digits encode_gen_fin(const KLContext& ctx, long n, const BigInt& m);
BigInt decode_gen_fin(const KLContext& ctx, long n, const Digits& w);

// ---- (k,1)-admissible words (k >= 4) --------------------------------------
// Infinite and even-length systems coincide with the (k-2)-system:
// [m]^{(k,1)} = [m]^{(k-2)}, [m]^{(k,1)}_{2n} = [m]^{(k-2)}_n. Odd length
// 2n-1 stores n digits with the two-case top rule; ceil(n/2) digits overall.

long k1_digit_count(long n);  // digits held by [.]^{(k,1)}_n
bool is_admissible_k1_fin(long k, long n, const Digits& w);
Digits encode_k1_fin(long k, long n, const BigInt& m);
BigInt decode_k1_fin(long k, long n, const Digits& w);

// ---- (1,k)-admissible word pairs (k >= 4) ----------------------------------

struct PairWord {
    Digits s1, s2;
    bool operator==(const PairWord& o) const { return s1 == o.s1 && s2 == o.s2; }
};

PairWord encode_1k(long k, const BigInt& m);
BigInt decode_1k(long k, const PairWord& w);
PairWord encode_1k_fin(long k, long n, const BigInt& m);
BigInt decode_1k_fin(long k, long n, const PairWord& w);

// Componentwise order (eq:ordcd); nullopt when incomparable.
std::optional<int> cmp_pair(const PairWord& a, const PairWord& b);

PairWord pair_shifted(const PairWord& w);
PairWord pair_unshifted(const PairWord& w);

// ---- Ordered word contexts and the follower machinery ----------------------

// A single-word ordered set: _depth C^{(ctx)} or _depth C^{(ctx)}_n for the
// general family, _depth C^{(k,1)} or _depth C^{(k,1)}_n for (k,1).
struct WordCtx {
    enum class Family { Gen, K1 };
    Family fam = Family::Gen;
    KLContext ctx;   // Gen: the (k,l) of the words; K1: (k,1) with l == 1
    bool finite = false;
    long n = 0;      // system length when finite
    long depth = 1;  // j >= 1: first j-1 digits are zero

    static WordCtx gen_inf(KLContext c, long depth) { return {Family::Gen, c, false, 0, depth}; }
    static WordCtx gen_fin(KLContext c, long n, long depth) { return {Family::Gen, c, true, n, depth}; }
    static WordCtx k1_inf(long k, long depth) { return {Family::K1, KLContext(k, 1), false, 0, depth}; }
    static WordCtx k1_fin(long k, long n, long depth) { return {Family::K1, KLContext(k, 1), true, n, depth}; }

    std::string str() const;
};

// Rank = position in the prec order, i.e. the value of the word with the
// leading zeros stripped, read in the base system the shifts come from.
BigInt ctx_rank(const WordCtx& s, const Digits& w);
Digits ctx_elem(const WordCtx& s, const BigInt& rank);
bool ctx_contains(const WordCtx& s, const Digits& w);

// F(m, S, c): the m-th successor of c in (S, prec). Integer route.
Digits follower(const BigInt& m, const WordCtx& s, const Digits& w);
// m-th predecessor, or nullopt when fewer than m elements precede c.
std::optional<Digits> predecessor(const BigInt& m, const WordCtx& s, const Digits& w);

// Single digit-rule successor step (Lemmas 4.13, 4.14, 4.16); retained as a
// cross-check oracle against the integer route.
Digits follower_digit_step(const WordCtx& s, const Digits& w);

// Pair contexts _{+d}C^{(1,k)} and _{+d}C^{(1,k)}_n.
struct PairCtx {
    long k = 0;
    bool finite = false;
    long n = 0;
    long d = 0;

    static PairCtx inf(long k, long d) { return {k, false, 0, d}; }
    static PairCtx fin(long k, long n, long d) { return {k, true, n, d}; }

    std::string str() const;
};

BigInt pair_rank(const PairCtx& s, const PairWord& w);
PairWord pair_elem(const PairCtx& s, const BigInt& rank);
PairWord pair_follower(const BigInt& m, const PairCtx& s, const PairWord& w);
std::optional<PairWord> pair_predecessor(const BigInt& m, const PairCtx& s, const PairWord& w);
// Unit successor by the component rule of Lemma 4.12 (oracle).
PairWord pair_follower_digit_step(const PairCtx& s, const PairWord& w);

// ---- Rendering / parsing ----------------------------------------------------

std::string render_digits(const Digits& w);                 // "(c1,c2,...,cn)"
std::string render_pair(const PairWord& w);                 // "((..),(..))"
Digits parse_digits(const std::string& text);
PairWord parse_pair(const std::string& text);

}  // namespace klhall
