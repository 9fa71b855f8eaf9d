#pragma once

#include <string>
#include <vector>

#include "klhall/partitions.hpp"

namespace klhall {

// One insertion event: part b_i generated `consumed` copies' worth of part
// movement into the pair (pre -> post) and queued `store_count` copies of
// b_{store_index} for the next pair. `rule` carries the equation tag the
// branch came from, so traces read against the source conditions.
struct InsertionEvent {
    long pair = 0;        // the paper's pair index j
    long part = 0;        // part index i
    std::string rule;     // e.g. "insert1type121"
    bool cond = false;    // branch condition value at the pre-state
    int consumed = 1;     // parts b_i used by this event (1 or 2)
    long store_index = 0; // 0: nothing stored
    BigInt store_count = 0;
    BigInt pre_hi, pre_lo, post_hi, post_lo;
};

struct InsertionTrace {
    std::vector<InsertionEvent> events;
    std::string json() const;
};

// Phi^{(k,l)} : B^{(k,l)} -> L^{(k,l)} (Euler partitions; all regimes).
EulerPartition phi_euler(const BMultiset& nu, InsertionTrace* trace = nullptr);
BMultiset phi_euler_inv(const EulerPartition& lambda);

// Phi^{(k,l)}_{2n} : B^{(k,l)}_{2n} -> L^{(k,l)}_{2n}.
LHPartition phi_even(const BMultiset& nu, long two_n, InsertionTrace* trace = nullptr);
BMultiset phi_even_inv(const LHPartition& lambda);

// Phi^{(k,l)}_{2n-1} : B^{(l,k)}_{2n-1} -> L^{(k,l)}_{2n-1}. The multiset is
// tagged with (l,k); the target context (k,l) is passed separately.
LHPartition phi_odd(const BMultiset& nu, const KLContext& target, long len,
                    InsertionTrace* trace = nullptr);
BMultiset phi_odd_inv(const LHPartition& lambda);

}  // namespace klhall
