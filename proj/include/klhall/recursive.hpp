#pragma once

#include "klhall/partitions.hpp"

namespace klhall {

// One level of the recursive bijection: a partition one shorter plus a
// non-negative multiplicity.
struct PsiResult {
    std::vector<BigInt> nu;
    BigInt m;
};

// Psi^{(k,l)}_n : L^{(k,l)}_n -> L^{(k,l)}_{n-1} x Z_{>=0} and its inverse.
// (The displayed formulas keep the context; the swap happens only in the
// part family fed to the next level.)
PsiResult psi_fin(const LHPartition& lambda);
LHPartition psi_fin_inv(const KLContext& ctx, long n, const std::vector<BigInt>& nu,
                        const BigInt& m);

// Psi^{(k,l)} : L^{(k,l)} -> L^{(l,k)} x Z_{>=0} and its inverse (the target
// context is the (k,l) of the resulting lambda).
PsiResult psi_inf(const EulerPartition& lambda);
EulerPartition psi_inf_inv(const KLContext& ctx, const std::vector<BigInt>& nu, const BigInt& m);

// The recursive bijections obtained by unwinding Psi level by level; built
// with no reference to the insertion maps so the equivalence theorems are a
// genuine cross-check. Signatures mirror phi_even/phi_odd/phi_euler: for odd
// n the multiset carries B^{(l,k)} parts.
LHPartition lambda_rec_fin(const BMultiset& nu, const KLContext& target, long n);
EulerPartition lambda_rec_inf(const BMultiset& nu);

}  // namespace klhall
