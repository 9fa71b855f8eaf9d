#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "klhall/insertion.hpp"
#include "klhall/partitions.hpp"

namespace klhall {

// Which theorem side a table belongs to.
enum class Family { Even, Odd, Euler };  // L_{2n}, L_{2n-1}, L^{(k,l)}

// Bivariate (odd-weight, even-weight) -> count, up to total weight W.
struct CountTable {
    long W = 0;
    std::string provenance;  // "enumerated-L" | "enumerated-B" | "series-product"
    std::map<std::pair<long, long>, BigInt> counts;

    void add(const BigInt& odd, const BigInt& even);
    bool same_counts(const CountTable& o) const { return counts == o.counts; }
};

// All multisets over b-parts of weight <= W; n < 0 means the unbounded
// family. Each multiset is produced exactly once.
void enum_b(const KLContext& ctx, long n, long W, const std::function<void(const BMultiset&)>& fn);

// All lecture hall partitions of length n and weight <= W.
void enum_lh(const KLContext& ctx, long n, long W, const std::function<void(const LHPartition&)>& fn);

// All Euler partitions of weight <= W (canonical trailing zero).
void enum_euler(const KLContext& ctx, long W, const std::function<void(const EulerPartition&)>& fn);

// Truncated product sides of the two theorems. For Even/Odd, len is the
// partition length (2n resp. 2n-1); for Euler it is ignored.
CountTable series_table(const KLContext& ctx, Family fam, long len, long W);

// Bi-weight tables from the enumerations. For Family::Odd the multisets
// carry B^{(l,k)} parts and ctx names the target (k,l).
CountTable table_from_b(const KLContext& ctx, Family fam, long len, long W);
CountTable table_from_partitions(const KLContext& ctx, Family fam, long len, long W);

// ---- verification reports ----

struct VerifyRow {
    KLContext ctx;
    std::string check;  // e.g. "counts 2n=4", "bijection inf", "identities"
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyRow> rows;
    bool all_pass() const;
    std::string text() const;
    std::string json() const;
};

// Three-way bivariate agreement (enumerated L = enumerated B = series).
VerifyRow verify_counts(const KLContext& ctx, Family fam, long len, long W);

// Bijection audit at desk scale: weight and bi-weight preservation,
// injectivity, surjectivity onto the enumerated L-set, two-sided inverses.
VerifyRow verify_bijection(const KLContext& ctx, Family fam, long len, long W);

// Equivalence of the insertion and recursive bijections on every enumerated
// multiset of weight <= W plus `samples` seeded random multisets.
VerifyRow verify_equivalence(const KLContext& ctx, Family fam, long len, long W,
                             unsigned long seed, long samples);

// The standard test matrix of contexts.
const std::vector<KLContext>& test_matrix();

}  // namespace klhall
