#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "klhall/enumerate.hpp"

using namespace klhall;

TEST_CASE("b-multiset enumeration counts") {
    // weight-5 multisets over odd parts for (2,2): 5, 3+1+1, 1^5
    long count5 = 0;
    enum_b(KLContext(2, 2), -1, 5, [&](const BMultiset& nu) {
        if (bweight(nu) == 5) ++count5;
    });
    CHECK(count5 == 3);
    long empty = 0;
    enum_b(KLContext(2, 3), -1, 0, [&](const BMultiset& nu) {
        CHECK(nu.empty());
        ++empty;
    });
    CHECK(empty == 1);
    // weight-10 count over parts {1,4,7,17,27,64} restricted to n=6:
    // 1^10, 4+1^6, 4+4+1^2, 7+1^3
    long count10 = 0;
    enum_b(KLContext(2, 3), 6, 10, [&](const BMultiset& nu) {
        if (bweight(nu) == 10) ++count10;
    });
    CHECK(count10 == 4);
    // duplicate-free
    std::set<std::string> seen;
    long total = 0;
    enum_b(KLContext(6, 1), -1, 12, [&](const BMultiset& nu) {
        CHECK(seen.insert(render_mult(nu)).second);
        CHECK(bweight(nu) <= 12);
        ++total;
    });
    CHECK(total == static_cast<long>(seen.size()));
}

TEST_CASE("lecture hall and Euler enumeration") {
    // classic n=3 lecture hall count at weight 5 equals partitions of 5 into
    // odd parts < 6, i.e. 3
    long c = 0;
    enum_lh(KLContext(2, 2), 3, 5, [&](const LHPartition& p) {
        CHECK(is_lecture_hall(p));
        if (weights(p.parts).total == 5) ++c;
    });
    CHECK(c == 3);
    long zeroes = 0;
    enum_lh(KLContext(2, 3), 4, 0, [&](const LHPartition& p) {
        CHECK(weights(p.parts).total == 0);
        ++zeroes;
    });
    CHECK(zeroes == 1);
    long ez = 0;
    enum_euler(KLContext(2, 3), 0, [&](const EulerPartition& p) {
        CHECK(p.parts == std::vector<BigInt>{0, 0});
        ++ez;
    });
    CHECK(ez == 1);
    std::set<std::string> seen;
    enum_euler(KLContext(1, 6), 15, [&](const EulerPartition& p) {
        CHECK(is_euler(p));
        CHECK(weights(p.parts).total <= 15);
        CHECK(seen.insert(parts_to_string(p.parts)).second);
    });
    // naive cross-check against the multiset side at small weight
    CountTable L = table_from_partitions(KLContext(1, 6), Family::Euler, 0, 15);
    CountTable B = table_from_b(KLContext(1, 6), Family::Euler, 0, 15);
    CHECK(L.same_counts(B));
}

TEST_CASE("series coefficients") {
    // factor 1/(1-x y^3) alone contributes the (1,3) coefficient for 2n=2
    CountTable S = series_table(KLContext(2, 3), Family::Even, 2, 6);
    CHECK(S.counts.at({1, 3}) == 1);
    CHECK(S.counts.at({0, 0}) == 1);
    // (2,2) specialization: total-degree-5 coefficient for n=3 sums to 3
    CountTable S22 = series_table(KLContext(2, 2), Family::Odd, 3, 8);
    BigInt deg5 = 0;
    for (const auto& [k, v] : S22.counts)
        if (k.first + k.second == 5) deg5 += v;
    CHECK(deg5 == 3);
}

TEST_CASE("three-way count agreement at small scale") {
    for (const KLContext& ctx : test_matrix()) {
        for (long n = 1; n <= 4; ++n) {
            VerifyRow row = verify_counts(ctx, n % 2 == 0 ? Family::Even : Family::Odd, n, 18);
            INFO(row.check, " ", row.detail);
            CHECK(row.pass);
        }
        VerifyRow inf = verify_counts(ctx, Family::Euler, 0, 18);
        INFO(inf.detail);
        CHECK(inf.pass);
    }
}

TEST_CASE("bijection audit at small scale") {
    for (const KLContext& ctx : test_matrix()) {
        for (long n = 2; n <= 4; ++n) {
            VerifyRow row = verify_bijection(ctx, n % 2 == 0 ? Family::Even : Family::Odd, n, 16);
            INFO(row.check, " ", row.detail);
            CHECK(row.pass);
        }
        VerifyRow inf = verify_bijection(ctx, Family::Euler, 0, 16);
        INFO(inf.detail);
        CHECK(inf.pass);
    }
}

TEST_CASE("equivalence rows") {
    VerifyRow r = verify_equivalence(KLContext(1, 6), Family::Odd, 5, 14, 42, 50);
    INFO(r.detail);
    CHECK(r.pass);
    VerifyRow e = verify_equivalence(KLContext(6, 1), Family::Euler, 0, 14, 42, 50);
    CHECK(e.pass);
}

TEST_CASE("report rendering") {
    VerifyReport rep;
    rep.rows.push_back(verify_counts(KLContext(2, 3), Family::Even, 2, 10));
    CHECK(rep.all_pass());
    CHECK(rep.text().find("PASS") == 0);
    CHECK(rep.json().find("\"pass\":true") != std::string::npos);
}
