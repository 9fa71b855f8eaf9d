#pragma once

#include <mutex>
#include <vector>

#include "klhall/bigint.hpp"
#include "klhall/quadnum.hpp"

namespace klhall {

// A (k,l) parameter pair with kl >= 4. Value-identified; carries the field
// radicand D = kl(kl-4) shared by every s_n of the context.
struct KLContext {
    long k = 0;
    long l = 0;

    KLContext() = default;
    KLContext(long k_, long l_) : k(k_), l(l_) {
        if (k < 1 || l < 1 || k * l < 4)
            throw std::domain_error("KLContext: requires k,l >= 1 and kl >= 4");
    }

    bool operator==(const KLContext& o) const { return k == o.k && l == o.l; }
    bool operator!=(const KLContext& o) const { return !(*this == o); }

    KLContext swapped() const { return KLContext(l, k); }

    bool general() const { return k >= 2 && l >= 2; }  // the k,l >= 2 regime
    bool is_k1() const { return l == 1; }
    bool is_1k() const { return k == 1; }

    BigInt D() const {
        BigInt m = BigInt(k) * l;
        return m * (m - 4);
    }
};

// a_n^{(k,l)} for n in Z: a_0 = 0, a_1 = 1,
// a_{2n} = l*a_{2n-1} - a_{2n-2}, a_{2n+1} = k*a_{2n} - a_{2n-1};
// negative indices via a_{-n} = a_n. Memoized per (k,l).
BigInt a_seq(const KLContext& ctx, long long n);

// b_i^{(k,l)} = a_i^{(k,l)} + a_{i-1}^{(l,k)}, i >= 1.
BigInt b_part(const KLContext& ctx, long long i);

// s_n^{(k,l)}: s_{2n+1} = u^{-2n}, s_{2n} = sqrt(l/k)*u^{-2n+1}, exact over
// D = kl(kl-4). Satisfies the same recurrence as a_n; s_1 = 1 and
// s_0 = (kl + sqrt(D)) / (2k).
QuadNum s_val(const KLContext& ctx, long long n);

// u_{kl}^2 = (kl - 2 + sqrt(D))/2, the unit driving the closed forms.
QuadNum u_squared(const KLContext& ctx);

// Closed-form evaluation of a_n via powers of u^2 (test oracle; the
// production path is the recurrence): with v^n = A + B sqrt(D),
// a_{2n} = 2*l*B and a_{2n+1} = A + kl*B.
BigInt a_closed_form(const KLContext& ctx, long long n);

}  // namespace klhall
