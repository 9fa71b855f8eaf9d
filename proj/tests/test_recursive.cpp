#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "klhall/insertion.hpp"
#include "klhall/recursive.hpp"

using namespace klhall;

namespace {

BMultiset M(const KLContext& ctx, std::initializer_list<std::pair<long, long>> items) {
    BMultiset nu(ctx);
    for (auto [i, c] : items) nu.add(i, c);
    return nu;
}

std::vector<BigInt> V(std::initializer_list<long> xs) {
    std::vector<BigInt> v;
    for (long x : xs) v.push_back(x);
    return v;
}

void for_multisets(const KLContext& ctx, long max_idx, long max_mult,
                   const std::function<void(const BMultiset&)>& fn) {
    std::vector<long> mult(static_cast<std::size_t>(max_idx) + 1, 0);
    std::function<void(long)> rec = [&](long i) {
        if (i > max_idx) {
            BMultiset nu(ctx);
            for (long u = 1; u <= max_idx; ++u)
                if (mult[u] > 0) nu.add(u, mult[u]);
            fn(nu);
            return;
        }
        for (long c = 0; c <= max_mult; ++c) {
            mult[i] = c;
            rec(i + 1);
        }
        mult[i] = 0;
    };
    rec(1);
}

const std::vector<KLContext> kMatrix = {
    KLContext(2, 2), KLContext(2, 3), KLContext(3, 2), KLContext(4, 1),
    KLContext(1, 4), KLContext(3, 3), KLContext(2, 4), KLContext(4, 2),
    KLContext(5, 1), KLContext(1, 5), KLContext(6, 1), KLContext(1, 6)};

}  // namespace

TEST_CASE("psi_fin worked values") {
    KLContext c23(2, 3);
    PsiResult r = psi_fin(LHPartition{c23, V({1, 4})});
    CHECK(r.nu == V({1}));
    CHECK(r.m == 1);
    PsiResult z = psi_fin(LHPartition{c23, V({0, 0, 0, 0})});
    CHECK(z.nu == V({0, 0, 0}));
    CHECK(z.m == 0);
    PsiResult o = psi_fin(LHPartition{c23, V({0, 1, 3})});
    CHECK(o.nu == V({0, 1}));
    CHECK(o.m == 1);
    CHECK_THROWS_AS(psi_fin(LHPartition{c23, V({5, 1})}), std::domain_error);
}

TEST_CASE("psi_inf worked values") {
    KLContext c23(2, 3);
    PsiResult base = psi_inf(EulerPartition{c23, V({7, 0})});
    CHECK(base.nu == V({0, 0}));
    CHECK(base.m == 7);
    PsiResult zero = psi_inf(EulerPartition{c23, V({0, 0})});
    CHECK(zero.nu == V({0, 0}));
    CHECK(zero.m == 0);
    // Theorem-level replay: the first component is the insertion image of the
    // index-shifted multiset in the swapped context, the second is m_1.
    PsiResult big = psi_inf(EulerPartition{c23, V({183, 75, 33, 13, 1, 0})});
    EulerPartition expect =
        phi_euler(M(KLContext(3, 2), {{1, 4}, {2, 2}, {3, 3}, {4, 1}, {5, 3}}));
    CHECK(big.nu == expect.parts);
    CHECK(big.m == 5);
}

TEST_CASE("psi round trips and weight laws on insertion images") {
    for (const KLContext& ctx : kMatrix) {
        for_multisets(ctx, 5, 2, [&](const BMultiset& nu) {
            EulerPartition lam = phi_euler(nu);
            PsiResult r = psi_inf(lam);
            Weights wl = weights(lam.parts), wn = weights(r.nu);
            CHECK(wl.even == wn.odd);  // lambda_e = nu_o
            CHECK(wl.odd == r.m + BigInt(ctx.l) * wn.odd - wn.even);
            EulerPartition back = psi_inf_inv(ctx, r.nu, r.m);
            CHECK(back.parts == lam.parts);
            // part-count rule: same length iff the last two parts vanish
            if (r.nu != V({0, 0})) {
                bool same_len = r.nu.size() == lam.parts.size();
                bool tail_zero = r.nu[r.nu.size() - 1] == 0 && r.nu[r.nu.size() - 2] == 0;
                CHECK(same_len == tail_zero);
            }
        });
        for (long n = 2; n <= 6; ++n) {
            for_multisets(n % 2 == 0 ? ctx : ctx.swapped(), n, 2, [&](const BMultiset& nu) {
                LHPartition lam = n % 2 == 0 ? phi_even(nu, n) : phi_odd(nu, ctx, n);
                PsiResult r = psi_fin(lam);
                Weights wl = weights(lam.parts), wn = weights(r.nu);
                if (n % 2 == 0) {
                    CHECK(wl.odd == wn.odd);
                    CHECK(wl.even == r.m + BigInt(ctx.l) * wn.odd - wn.even);
                } else {
                    CHECK(wl.even == wn.even);
                    CHECK(wl.odd == r.m + BigInt(ctx.k) * wn.even - wn.odd);
                }
                CHECK(psi_fin_inv(ctx, n, r.nu, r.m).parts == lam.parts);
            });
        }
    }
}

TEST_CASE("recursive bijection equals the insertion bijection") {
    KLContext c23(2, 3), c32(3, 2);
    BMultiset nu = M(c23, {{1, 5}, {2, 4}, {3, 2}, {4, 3}, {5, 1}, {6, 3}});
    CHECK(lambda_rec_fin(nu, c23, 6).parts == V({0, 0, 4, 13, 84, 204}));
    BMultiset nu32 = M(c32, {{1, 5}, {2, 4}, {3, 2}, {4, 3}, {5, 1}, {6, 3}});
    CHECK(lambda_rec_inf(nu32).parts == V({129, 78, 27, 16, 0, 0}));
    CHECK(lambda_rec_inf(BMultiset(c23)).parts == V({0, 0}));
    CHECK(lambda_rec_fin(BMultiset(c23), c23, 4).parts == V({0, 0, 0, 0}));

    for (const KLContext& ctx : kMatrix) {
        for_multisets(ctx, 5, 2, [&](const BMultiset& m) {
            CHECK(lambda_rec_inf(m).parts == phi_euler(m).parts);
        });
        for (long n = 1; n <= 6; ++n) {
            for_multisets(n % 2 == 0 ? ctx : ctx.swapped(), n, 2, [&](const BMultiset& m) {
                LHPartition viaPhi = n % 2 == 0 ? phi_even(m, n) : phi_odd(m, ctx, n);
                CHECK(lambda_rec_fin(m, ctx, n).parts == viaPhi.parts);
            });
        }
    }
}

TEST_CASE("psi composed with the insertion maps shifts the multiset") {
    // eq-level identities: Psi_n(Phi_n(prod b_i^{m_i})) =
    // (Phi_{n-1}(prod b'_{i-1}^{m_i}), m_1) and the infinite analogue.
    for (const KLContext& ctx : {KLContext(2, 3), KLContext(1, 6), KLContext(6, 1), KLContext(3, 3)}) {
        for_multisets(ctx, 4, 2, [&](const BMultiset& nu) {
            PsiResult r = psi_inf(phi_euler(nu));
            BMultiset down(ctx.swapped());
            for (const auto& [i, c] : nu.mult)
                if (i >= 2) down.add(i - 1, c);
            CHECK(r.nu == phi_euler(down).parts);
            CHECK(r.m == nu.count(1));
        });
        for (long n = 2; n <= 5; ++n) {
            for_multisets(n % 2 == 0 ? ctx : ctx.swapped(), n, 2, [&](const BMultiset& nu) {
                LHPartition lam = n % 2 == 0 ? phi_even(nu, n) : phi_odd(nu, ctx, n);
                PsiResult r = psi_fin(lam);
                BMultiset down((n % 2 == 0 ? ctx : ctx.swapped()).swapped());
                for (const auto& [i, c] : nu.mult)
                    if (i >= 2) down.add(i - 1, c);
                LHPartition expect =
                    (n - 1) % 2 == 0 ? phi_even(down, n - 1) : phi_odd(down, ctx, n - 1);
                CHECK(r.nu == expect.parts);
                CHECK(r.m == nu.count(1));
            });
        }
    }
}
