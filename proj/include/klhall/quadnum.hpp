#pragma once

#include <compare>
#include <string>

#include "klhall/bigint.hpp"

namespace klhall {

// Exact element (p + q*sqrt(D))/r of the quadratic field Q(sqrt(D)),
// D >= 0 fixed per context. D is kept literally (never reduced by pulling
// out square factors), so all values of one (k,l) context share one D and
// compatibility is a plain integer comparison. Canonical form: r > 0,
// gcd(p,q,r) = 1. Rationals are the q = 0 case; there is no separate type.
//
// All comparisons are decided by integer arithmetic (sign analysis plus one
// squaring); no floating point on any decision path.
class QuadNum {
public:
    QuadNum() : p_(0), q_(0), r_(1), d_(0) {}

    QuadNum(BigInt p, BigInt q, BigInt r, BigInt d);

    static QuadNum integer(BigInt n, BigInt d) {
        return QuadNum(std::move(n), 0, 1, std::move(d));
    }
    static QuadNum rational(BigInt num, BigInt den, BigInt d) {
        return QuadNum(std::move(num), 0, std::move(den), std::move(d));
    }

    const BigInt& p() const { return p_; }
    const BigInt& q() const { return q_; }
    const BigInt& r() const { return r_; }
    const BigInt& d() const { return d_; }

    bool is_rational() const { return q_ == 0; }
    bool is_zero() const { return p_ == 0 && q_ == 0; }

    // Sign of the real value: -1, 0, +1.
    int sign() const;

    QuadNum operator+(const QuadNum& o) const;
    QuadNum operator-(const QuadNum& o) const;
    QuadNum operator-() const;
    QuadNum operator*(const QuadNum& o) const;
    QuadNum operator*(const BigInt& n) const;

    // Conjugate (p - q*sqrt(D))/r.
    QuadNum conj() const;
    // Multiplicative inverse; requires nonzero value.
    QuadNum inverse() const;

    std::strong_ordering cmp(const QuadNum& o) const;
    bool operator==(const QuadNum& o) const { return cmp(o) == std::strong_ordering::equal; }
    bool operator<(const QuadNum& o) const { return cmp(o) == std::strong_ordering::less; }
    bool operator>(const QuadNum& o) const { return cmp(o) == std::strong_ordering::greater; }
    bool operator<=(const QuadNum& o) const { return cmp(o) != std::strong_ordering::greater; }
    bool operator>=(const QuadNum& o) const { return cmp(o) != std::strong_ordering::less; }

    // floor(value * m) and ceil(value * m), exact.
    BigInt floor_mul(const BigInt& m) const;
    BigInt ceil_mul(const BigInt& m) const;

    BigInt floor() const { return floor_mul(1); }
    BigInt ceil() const { return ceil_mul(1); }

    std::string str() const;

private:
    void normalize();
    void check_same_field(const QuadNum& o) const;

    BigInt p_, q_, r_, d_;
};

// Unique pair (a, b) with a + b = m in S_x^+ (kind plus: 0 < (1-x)a - xb <= 1)
// or S_x^- (kind minus: 0 <= (1-x)a - xb < 1), for 1/2 <= x < 1.
struct SplitPair {
    BigInt a;
    BigInt b;
    bool plus;  // true: S_x^+, false: S_x^-
};

// m >= 1: (floor(x*m)+1, ceil((1-x)*m)-1) in S_x^+.
SplitPair split_pos(const QuadNum& x, const BigInt& m);
// m >= 0: (ceil(x*m), floor((1-x)*m)) in S_x^-.
SplitPair split_neg(const QuadNum& x, const BigInt& m);

// Exact membership checks for the split sets (used by tests and internal
// assertions): 0 < (1-x)a - xb <= 1, resp. 0 <= (1-x)a - xb < 1.
bool in_split_pos(const QuadNum& x, const BigInt& a, const BigInt& b);
bool in_split_neg(const QuadNum& x, const BigInt& a, const BigInt& b);

}  // namespace klhall
