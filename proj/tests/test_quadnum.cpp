#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "klhall/kl_context.hpp"
#include "klhall/quadnum.hpp"

using namespace klhall;

namespace {

// Independent floor((p + q*sqrt(d))/r * m) oracle working at `bits` of
// fixed-point precision; exact for rational values and for perfect-square d.
BigInt floor_mul_interval(const QuadNum& x, const BigInt& m, unsigned bits = 200) {
    BigInt P = x.p() * m, Q = x.q() * m;
    if (Q == 0 || x.d() == 0 || is_square(x.d())) {
        BigInt root = isqrt(x.d());
        return floor_div(P + Q * root, x.r());
    }
    BigInt scale = BigInt(1) << bits;
    BigInt qq = Q * Q * x.d() * scale * scale;
    BigInt lo = isqrt(qq);          // floor(|Q| sqrt(d) * scale)
    BigInt hi = lo + 1;
    if (Q < 0) {
        BigInt t = lo;
        lo = -hi;
        hi = -t;
    }
    BigInt nlo = floor_div(P * scale + lo, x.r() * scale);
    BigInt nhi = floor_div(P * scale + hi, x.r() * scale);
    REQUIRE(nlo == nhi);  // irrational value: interval pins the floor
    return nlo;
}

}  // namespace

TEST_CASE("canonical construction") {
    // s_0^{(2,3)} = (3+sqrt(3))/2 entered as (6+sqrt(12))/4
    QuadNum a(6, 1, 4, 12);
    CHECK(a.p() == 6);
    CHECK(a.q() == 1);
    CHECK(a.r() == 4);
    QuadNum z(0, 0, 1, 12);
    CHECK(z.is_zero());
    QuadNum g(4, 2, 2, 12);
    CHECK(g.p() == 2);
    CHECK(g.q() == 1);
    CHECK(g.r() == 1);
    CHECK_THROWS_AS(QuadNum(1, 1, 0, 12), std::domain_error);
}

TEST_CASE("exact comparison") {
    KLContext c23(2, 3);
    QuadNum s0 = s_val(c23, 0);
    CHECK(s0 > QuadNum::integer(2, c23.D()));
    CHECK(s0 == s0);
    QuadNum s2 = s_val(c23, 2);  // (3 - sqrt(3))/2
    CHECK(s2 < QuadNum::integer(1, c23.D()));
    CHECK(s2.sign() == 1);
    CHECK((s2 - s2).sign() == 0);
}

TEST_CASE("floor and ceil of integer multiples") {
    KLContext c23(2, 3);
    QuadNum s0 = s_val(c23, 0);
    CHECK(s0.floor_mul(30) == 70);  // 71 > s_0 * 30
    CHECK(s0.floor_mul(0) == 0);
    KLContext c61(6, 1);
    CHECK(s_val(c61, 0).floor_mul(18) == 14);  // [18]^{(1,6)} first component = 15
    CHECK(s0.ceil_mul(30) == 71);
    // rational case
    QuadNum r = QuadNum::rational(19, 24, 0);
    CHECK(r.floor_mul(24) == 19);
    CHECK(r.ceil_mul(24) == 19);
    CHECK(r.floor_mul(25) == 19);
    CHECK(r.ceil_mul(25) == 20);
}

TEST_CASE("splits of Lemma 2.2") {
    KLContext c61(6, 1);
    QuadNum x = s_val(c61, 0);  // s_0^{(6,1)}, in [1/2, 1)
    SplitPair p = split_pos(x, 18);
    CHECK(p.a == 15);
    CHECK(p.b == 3);
    SplitPair q = split_neg(x, 0);
    CHECK(q.a == 0);
    CHECK(q.b == 0);
    QuadNum xr = QuadNum::rational(19, 24, c61.D());
    SplitPair t = split_neg(xr, 23);
    CHECK(t.a == 19);
    CHECK(t.b == 4);
}

TEST_CASE("split bijectivity, brute force") {
    // For each x in a small panel and all |m| <= 10^4: the split lands in the
    // stated set, components sum to m, and neighbours are excluded.
    std::vector<QuadNum> panel = {s_val(KLContext(6, 1), 0), s_val(KLContext(5, 1), 0),
                                  s_val(KLContext(4, 1), 0), QuadNum::rational(19, 24, 0)};
    for (const QuadNum& x : panel) {
        for (long m = -10000; m <= 10000; m += 101) {
            SplitPair p = split_pos(x, m >= 1 ? BigInt(m) : BigInt(1));
            CHECK(p.a + p.b == (m >= 1 ? m : 1));
            CHECK(in_split_pos(x, p.a, p.b));
            CHECK_FALSE(in_split_pos(x, p.a + 1, p.b - 1));
            CHECK_FALSE(in_split_pos(x, p.a - 1, p.b + 1));
            if (m >= 0) {
                SplitPair q = split_neg(x, m);
                CHECK(q.a + q.b == m);
                CHECK(in_split_neg(x, q.a, q.b));
                CHECK_FALSE(in_split_neg(x, q.a + 1, q.b - 1));
                CHECK_FALSE(in_split_neg(x, q.a - 1, q.b + 1));
            }
        }
    }
}

TEST_CASE("floor_mul against the interval oracle") {
    std::mt19937_64 rng(20240517);
    std::vector<KLContext> ctxs = {KLContext(2, 3), KLContext(3, 2), KLContext(6, 1),
                                   KLContext(1, 6), KLContext(2, 2), KLContext(4, 1),
                                   KLContext(3, 3), KLContext(1, 5)};
    for (int it = 0; it < 10000; ++it) {
        const KLContext& ctx = ctxs[rng() % ctxs.size()];
        QuadNum x = s_val(ctx, static_cast<long long>(rng() % 13) - 6);
        BigInt m = BigInt(rng() % 1000000) - 500000;
        CHECK(x.floor_mul(m) == floor_mul_interval(x, m));
        BigInt f = x.floor_mul(m);
        BigInt c = x.ceil_mul(m);
        CHECK((c == f || c == f + 1));
    }
}

TEST_CASE("rounding rules of Remark 2.4") {
    // r > a*s <=> r >= floor(a*s) + 1, and r >= a*s <=> r >= ceil(a*s),
    // exhaustively for small r, s.
    for (const KLContext& ctx : {KLContext(2, 3), KLContext(6, 1), KLContext(1, 6)}) {
        QuadNum a = s_val(ctx, 0);
        for (long r = -30; r <= 30; ++r) {
            for (long s = -30; s <= 30; ++s) {
                QuadNum as = a * BigInt(s);
                bool gt = (QuadNum::integer(r, ctx.D()) - as).sign() > 0;
                bool ge = (QuadNum::integer(r, ctx.D()) - as).sign() >= 0;
                CHECK(gt == (r >= a.floor_mul(s) + 1));
                CHECK(ge == (r >= a.ceil_mul(s)));
            }
        }
    }
}
