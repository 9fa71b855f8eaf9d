#include "klhall/kl_context.hpp"

#include <map>
#include <utility>

namespace klhall {

BigInt a_seq(const KLContext& ctx, long long n) {
    // The bi-infinite solution of the recurrence is odd: a_{-n} = -a_n
    // (forced by a_1 = k*a_0 - a_{-1} and the closed form).
    bool neg = n < 0;
    if (neg) n = -n;
    BigInt v;
    {
        static std::mutex mu;
        static std::map<std::pair<long, long>, std::vector<BigInt>> caches;
        std::lock_guard<std::mutex> lock(mu);
        auto& a = caches[{ctx.k, ctx.l}];
        if (a.empty()) {
            a.push_back(0);
            a.push_back(1);
        }
        while (static_cast<long long>(a.size()) <= n) {
            long long i = static_cast<long long>(a.size());
            long mult = (i % 2 == 0) ? ctx.l : ctx.k;
            a.push_back(BigInt(mult) * a[i - 1] - a[i - 2]);
        }
        v = a[static_cast<std::size_t>(n)];
    }
    return neg ? BigInt(-v) : v;
}

BigInt b_part(const KLContext& ctx, long long i) {
    if (i < 1) throw std::domain_error("b_part: index must be >= 1");
    return a_seq(ctx, i) + a_seq(ctx.swapped(), i - 1);
}

QuadNum s_val(const KLContext& ctx, long long n) {
    BigInt d = ctx.D();
    // s_0 = (kl + sqrt(D)) / (2k), s_1 = 1; extend by the same recurrence
    // as a_n, forward or backward from {s_0, s_1}.
    QuadNum s0(BigInt(ctx.k) * ctx.l, 1, BigInt(2) * ctx.k, d);
    QuadNum s1 = QuadNum::integer(1, d);
    if (n == 0) return s0;
    if (n == 1) return s1;
    if (n > 1) {
        QuadNum prev = s0, cur = s1;
        for (long long i = 2; i <= n; ++i) {
            long mult = (i % 2 == 0) ? ctx.l : ctx.k;
            QuadNum next = cur * BigInt(mult) - prev;
            prev = std::move(cur);
            cur = std::move(next);
        }
        return cur;
    }
    // n < 0: recover s_i from s_{i+1}, s_{i+2} via s_i = mult(i+2)*s_{i+1} - s_{i+2},
    // where mult(j) is l for even j, k for odd j.
    QuadNum cur = s0, above = s1;
    for (long long i = -1; i >= n; --i) {
        long mult = (i % 2 == 0) ? ctx.l : ctx.k;
        QuadNum next = cur * BigInt(mult) - above;
        above = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

QuadNum u_squared(const KLContext& ctx) {
    BigInt m = BigInt(ctx.k) * ctx.l;
    return QuadNum(m - 2, 1, 2, ctx.D());
}

BigInt a_closed_form(const KLContext& ctx, long long n) {
    bool odd = (n % 2) != 0;
    long long half = odd ? (n - 1) / 2 : n / 2;  // exact: n-1 resp. n is even
    if (ctx.k * ctx.l == 4) {
        // u = 1: the closed form holds as the polynomial limit
        // (u^m - u^-m)/(u - u^-1) -> m, so a_{2m} = l*m and a_{2m+1} = 2m+1.
        return odd ? BigInt(2 * half + 1) : BigInt(ctx.l) * half;
    }
    QuadNum v = u_squared(ctx);
    QuadNum pw = QuadNum::integer(1, ctx.D());
    long long e = half >= 0 ? half : -half;
    for (long long i = 0; i < e; ++i) pw = pw * v;
    if (half < 0) pw = pw.conj();  // v is a unit of norm 1: v^{-1} = conj(v)
    // pw has value A + B sqrt(D) with A = p/r, B = q/r.
    if (!odd) {
        // a_{2m} = 2*l*B
        BigInt num = 2 * BigInt(ctx.l) * pw.q();
        if (num % pw.r() != 0) throw std::logic_error("a_closed_form: non-integer");
        return num / pw.r();
    }
    // a_{2m+1} = A + kl*B
    BigInt num = pw.p() + BigInt(ctx.k) * ctx.l * pw.q();
    if (num % pw.r() != 0) throw std::logic_error("a_closed_form: non-integer");
    return num / pw.r();
}

}  // namespace klhall
