#pragma once

#include <map>
#include <string>
#include <vector>

#include "klhall/bigint.hpp"
#include "klhall/kl_context.hpp"

namespace klhall {

// Multiplicity vector of b-parts: mult[i] copies of b_i^{(k,l)}, finite support.
struct BMultiset {
    KLContext ctx;
    std::map<long, BigInt> mult;  // part index >= 1 -> multiplicity >= 1

    BMultiset() = default;
    explicit BMultiset(KLContext c) : ctx(c) {}

    void add(long i, const BigInt& count);
    BigInt count(long i) const;
    long max_index() const;  // 0 when empty
    bool empty() const { return mult.empty(); }

    bool operator==(const BMultiset& o) const { return ctx == o.ctx && mult == o.mult; }
};

// Sum of m_i * b_i^{(k,l)}.
BigInt bweight(const BMultiset& nu);
// (|nu|_o, |nu|_e) under the product-side monomial conventions; see enumerate.hpp.

struct Weights {
    BigInt total, odd, even;
};

// |lambda|, |lambda|_o, |lambda|_e (1-based positions).
Weights weights(const std::vector<BigInt>& parts);

// Length-n sequence with lambda_i/a_i non-decreasing.
struct LHPartition {
    KLContext ctx;
    std::vector<BigInt> parts;  // lambda_1 .. lambda_n

    long n() const { return static_cast<long>(parts.size()); }
};

// Even-length sequence in the paper's orientation: lambda_1 largest,
// lambda_{2t} = 0, strict s_0-ratio chain between consecutive parts.
struct EulerPartition {
    KLContext ctx;
    std::vector<BigInt> parts;  // lambda_1 .. lambda_{2t}

    long t() const { return static_cast<long>(parts.size()) / 2; }
};

// Cross-multiplied ratio chain lambda_i * a_{i+1} <= lambda_{i+1} * a_i.
bool is_lecture_hall(const std::vector<BigInt>& parts, const KLContext& ctx, long n);
inline bool is_lecture_hall(const LHPartition& p) { return is_lecture_hall(p.parts, p.ctx, p.n()); }

// Dual evaluation: the exact QuadNum chain of eq:klseqbis and the
// admissible-word criteria evaluated independently; a disagreement is an
// internal bug and throws. Both checks are permanent, not test-only.
bool is_euler(const std::vector<BigInt>& parts, const KLContext& ctx);
inline bool is_euler(const EulerPartition& p) { return is_euler(p.parts, p.ctx); }

// Helper for the (2,2) specialization: turn a strictly-decreasing partition
// into its canonical Euler form by appending one or two zero parts.
std::vector<BigInt> distinct_to_euler(const std::vector<BigInt>& decreasing_parts);

// ---- text / JSON shapes ----

// "1:5,2:4" -> multiplicities
BMultiset parse_mult(const KLContext& ctx, const std::string& text);
std::string render_mult(const BMultiset& nu);

std::string parts_to_string(const std::vector<BigInt>& parts);      // "129 78 27 16 0 0"
std::vector<BigInt> parse_parts(const std::string& text);

std::string multiset_json(const BMultiset& nu);
std::string partition_json(const KLContext& ctx, const std::vector<BigInt>& parts);
BMultiset multiset_from_json(const std::string& text);
std::pair<KLContext, std::vector<BigInt>> partition_from_json(const std::string& text);

}  // namespace klhall
