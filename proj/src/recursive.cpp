#include "klhall/recursive.hpp"

#include "klhall/quadnum.hpp"

namespace klhall {

namespace {

// ceil(a_p * x / a_q) and floor(a_p * x / a_q) over one context.
BigInt ceil_ratio(const KLContext& ctx, long p, long q, const BigInt& x) {
    return ceil_div(a_seq(ctx, p) * x, a_seq(ctx, q));
}

BigInt floor_ratio(const KLContext& ctx, long p, long q, const BigInt& x) {
    return floor_div(a_seq(ctx, p) * x, a_seq(ctx, q));
}

void require_nonneg(const BigInt& v, const char* what) {
    if (v < 0) throw std::domain_error(std::string("psi: negative ") + what);
}

}  // namespace

PsiResult psi_fin(const LHPartition& lambda) {
    const KLContext& ctx = lambda.ctx;
    long n = lambda.n();
    if (!is_lecture_hall(lambda)) throw std::domain_error("psi_fin: not in L^{(k,l)}_n");
    const auto& L = lambda.parts;
    PsiResult out;
    if (n == 1) {
        out.m = L[0];
        return out;
    }
    if (n % 2 == 0) {
        long N = n / 2;
        out.m = L[2 * N - 1] - ceil_ratio(ctx, 2 * N, 2 * N - 1, L[2 * N - 2]);
        out.nu.resize(static_cast<std::size_t>(n - 1));
        for (long j = 1; j <= N; ++j) out.nu[2 * j - 2] = L[2 * j - 2];
        for (long j = 1; j < N; ++j)
            out.nu[2 * j - 1] = floor_ratio(ctx, 2 * j, 2 * j + 1, L[2 * j]) +
                                ceil_ratio(ctx, 2 * j, 2 * j - 1, L[2 * j - 2]) - L[2 * j - 1];
    } else {
        long N = (n - 1) / 2;
        out.m = L[2 * N] - ceil_ratio(ctx, 2 * N + 1, 2 * N, L[2 * N - 1]);
        out.nu.resize(static_cast<std::size_t>(n - 1));
        for (long j = 1; j <= N; ++j) out.nu[2 * j - 1] = L[2 * j - 1];
        out.nu[0] = floor_ratio(ctx, 1, 2, L[1]) - L[0];
        for (long j = 2; j <= N; ++j)
            out.nu[2 * j - 2] = floor_ratio(ctx, 2 * j - 1, 2 * j, L[2 * j - 1]) +
                                ceil_ratio(ctx, 2 * j - 1, 2 * j - 2, L[2 * j - 3]) - L[2 * j - 2];
    }
    require_nonneg(out.m, "multiplicity");
    if (!is_lecture_hall(out.nu, ctx, n - 1))
        throw std::domain_error("psi_fin: image left L^{(k,l)}_{n-1}");
    return out;
}

LHPartition psi_fin_inv(const KLContext& ctx, long n, const std::vector<BigInt>& nu,
                        const BigInt& m) {
    if (m < 0) throw std::domain_error("psi_fin_inv: negative multiplicity");
    if (n == 1) {
        if (!nu.empty()) throw std::domain_error("psi_fin_inv: level-1 expects the empty partition");
        return LHPartition{ctx, {m}};
    }
    if (static_cast<long>(nu.size()) != n - 1 || !is_lecture_hall(nu, ctx, n - 1))
        throw std::domain_error("psi_fin_inv: not in L^{(k,l)}_{n-1}");
    std::vector<BigInt> L(static_cast<std::size_t>(n));
    if (n % 2 == 0) {
        long N = n / 2;
        for (long j = 1; j <= N; ++j) L[2 * j - 2] = nu[2 * j - 2];
        for (long j = 1; j < N; ++j)
            L[2 * j - 1] = floor_ratio(ctx, 2 * j, 2 * j + 1, nu[2 * j]) +
                           ceil_ratio(ctx, 2 * j, 2 * j - 1, nu[2 * j - 2]) - nu[2 * j - 1];
        L[2 * N - 1] = m + ceil_ratio(ctx, 2 * N, 2 * N - 1, nu[2 * N - 2]);
    } else {
        long N = (n - 1) / 2;
        for (long j = 1; j <= N; ++j) L[2 * j - 1] = nu[2 * j - 1];
        L[0] = floor_ratio(ctx, 1, 2, nu[1]) - nu[0];
        for (long j = 2; j <= N; ++j)
            L[2 * j - 2] = floor_ratio(ctx, 2 * j - 1, 2 * j, nu[2 * j - 1]) +
                           ceil_ratio(ctx, 2 * j - 1, 2 * j - 2, nu[2 * j - 3]) - nu[2 * j - 2];
        L[2 * N] = m + ceil_ratio(ctx, 2 * N + 1, 2 * N, L[2 * N - 1]);
    }
    LHPartition out{ctx, std::move(L)};
    if (!is_lecture_hall(out)) throw std::domain_error("psi_fin_inv: image left L^{(k,l)}_n");
    return out;
}

PsiResult psi_inf(const EulerPartition& lambda) {
    const KLContext& ctx = lambda.ctx;
    if (!is_euler(lambda)) throw std::domain_error("psi_inf: not in L^{(k,l)}");
    const auto& L = lambda.parts;
    long t = lambda.t();
    PsiResult out;
    if (t == 1) {
        out.nu = {0, 0};
        out.m = L[0];
        return out;
    }
    QuadNum s0 = s_val(ctx, 0), s2 = s_val(ctx, 2);
    out.m = L[0] - s0.floor_mul(L[1]) - 1;
    require_nonneg(out.m, "multiplicity");
    std::vector<BigInt> nu(static_cast<std::size_t>(2 * t - 2));
    for (long j = 1; j <= t - 1; ++j) nu[2 * j - 2] = L[2 * j - 1];
    for (long j = 1; j < t - 1; ++j)
        nu[2 * j - 1] = s2.ceil_mul(L[2 * j - 1]) + s0.floor_mul(L[2 * j + 1]) - L[2 * j];
    nu[2 * t - 3] = s2.ceil_mul(L[2 * t - 4 + 1]) - 1 - L[2 * t - 2];
    if (nu[2 * t - 3] != 0) {
        nu.push_back(0);
        nu.push_back(0);
    }
    for (const BigInt& v : nu) require_nonneg(v, "part");
    out.nu = std::move(nu);
    if (!is_euler(out.nu, ctx.swapped())) throw std::domain_error("psi_inf: image left L^{(l,k)}");
    return out;
}

EulerPartition psi_inf_inv(const KLContext& ctx, const std::vector<BigInt>& nu, const BigInt& m) {
    if (m < 0) throw std::domain_error("psi_inf_inv: negative multiplicity");
    if (!is_euler(nu, ctx.swapped())) throw std::domain_error("psi_inf_inv: not in L^{(l,k)}");
    long t = static_cast<long>(nu.size()) / 2;
    if (t == 1 && nu[0] == 0) return EulerPartition{ctx, {m, 0}};
    QuadNum s0 = s_val(ctx, 0), s2 = s_val(ctx, 2);
    long tp = nu[2 * t - 2] > 0 ? t : t - 1;
    std::vector<BigInt> L(static_cast<std::size_t>(2 * tp + 2));
    for (long j = 1; j <= tp; ++j) L[2 * j - 1] = nu[2 * j - 2];
    L[0] = s0.floor_mul(nu[0]) + 1 + m;
    for (long j = 1; j < tp; ++j)
        L[2 * j] = s2.ceil_mul(nu[2 * j - 2]) + s0.floor_mul(nu[2 * j]) - nu[2 * j - 1];
    L[2 * tp] = s2.ceil_mul(nu[2 * tp - 2]) - 1 - nu[2 * tp - 1];
    L[2 * tp + 1] = 0;
    EulerPartition out{ctx, std::move(L)};
    if (!is_euler(out)) throw std::domain_error("psi_inf_inv: image left L^{(k,l)}");
    return out;
}

LHPartition lambda_rec_fin(const BMultiset& nu, const KLContext& target, long n) {
    const KLContext expect = (n % 2 == 0) ? target : target.swapped();
    if (nu.ctx != expect)
        throw std::domain_error("lambda_rec_fin: multiset context does not match the level");
    if (nu.max_index() > n) throw std::domain_error("lambda_rec_fin: support exceeds n");
    if (n == 1) return LHPartition{target, {nu.count(1)}};
    BMultiset down(expect.swapped());
    for (const auto& [i, c] : nu.mult)
        if (i >= 2) down.add(i - 1, c);
    LHPartition below = lambda_rec_fin(down, target, n - 1);
    return psi_fin_inv(target, n, below.parts, nu.count(1));
}

EulerPartition lambda_rec_inf(const BMultiset& nu) {
    if (nu.max_index() <= 1) return EulerPartition{nu.ctx, {nu.count(1), 0}};
    BMultiset down(nu.ctx.swapped());
    for (const auto& [i, c] : nu.mult)
        if (i >= 2) down.add(i - 1, c);
    EulerPartition below = lambda_rec_inf(down);
    return psi_inf_inv(nu.ctx, below.parts, nu.count(1));
}

}  // namespace klhall
