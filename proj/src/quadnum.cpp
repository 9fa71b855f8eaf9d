#include "klhall/quadnum.hpp"

#include <utility>

namespace klhall {

QuadNum::QuadNum(BigInt p, BigInt q, BigInt r, BigInt d)
    : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)), d_(std::move(d)) {
    if (r_ == 0) throw std::domain_error("QuadNum: zero denominator");
    if (d_ < 0) throw std::domain_error("QuadNum: negative radicand");
    normalize();
}

void QuadNum::normalize() {
    if (r_ < 0) {
        p_ = -p_;
        q_ = -q_;
        r_ = -r_;
    }
    if (d_ == 0) q_ = 0;  // sqrt(0) contributes nothing
    BigInt g = big_gcd(big_gcd(p_ < 0 ? BigInt(-p_) : p_, q_ < 0 ? BigInt(-q_) : q_), r_);
    if (g > 1) {
        p_ /= g;
        q_ /= g;
        r_ /= g;
    }
}

void QuadNum::check_same_field(const QuadNum& o) const {
    // Zero values carry no radical; allow mixing them into any field.
    if (d_ != o.d_ && q_ != 0 && o.q_ != 0)
        throw std::domain_error("QuadNum: mismatched radicands");
}

// Sign of p + q*sqrt(D) by sign analysis and one squaring.
static int sign_pair(const BigInt& p, const BigInt& q, const BigInt& d) {
    int sp = p == 0 ? 0 : (p > 0 ? 1 : -1);
    if (q == 0 || d == 0) return sp;
    int sq = q > 0 ? 1 : -1;
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    // Opposite signs: |p| vs |q|sqrt(D) via one squaring.
    BigInt pp = p * p, qq = q * q * d;
    if (pp == qq) return 0;
    return pp > qq ? sp : sq;
}

int QuadNum::sign() const { return sign_pair(p_, q_, d_); }

QuadNum QuadNum::operator+(const QuadNum& o) const {
    check_same_field(o);
    BigInt d = q_ != 0 ? d_ : o.d_;
    return QuadNum(p_ * o.r_ + o.p_ * r_, q_ * o.r_ + o.q_ * r_, r_ * o.r_, d);
}

QuadNum QuadNum::operator-(const QuadNum& o) const { return *this + (-o); }

QuadNum QuadNum::operator-() const {
    QuadNum res = *this;
    res.p_ = -res.p_;
    res.q_ = -res.q_;
    return res;
}

QuadNum QuadNum::operator*(const QuadNum& o) const {
    check_same_field(o);
    BigInt d = q_ != 0 ? d_ : o.d_;
    return QuadNum(p_ * o.p_ + q_ * o.q_ * d, p_ * o.q_ + q_ * o.p_, r_ * o.r_, d);
}

QuadNum QuadNum::operator*(const BigInt& n) const {
    return QuadNum(p_ * n, q_ * n, r_, d_);
}

QuadNum QuadNum::conj() const { return QuadNum(p_, -q_, r_, d_); }

QuadNum QuadNum::inverse() const {
    // 1/((p+q sqrt D)/r) = r(p - q sqrt D)/(p^2 - q^2 D)
    BigInt norm = p_ * p_ - q_ * q_ * d_;
    if (norm == 0) throw std::domain_error("QuadNum: inverse of zero-norm value");
    return QuadNum(r_ * p_, -r_ * q_, norm, d_);
}

std::strong_ordering QuadNum::cmp(const QuadNum& o) const {
    check_same_field(o);
    BigInt d = q_ != 0 ? d_ : o.d_;
    // (p1 + q1 sD)/r1 vs (p2 + q2 sD)/r2 with r1, r2 > 0.
    int s = sign_pair(p_ * o.r_ - o.p_ * r_, q_ * o.r_ - o.q_ * r_, d);
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

// floor(q*sqrt(d)) for any sign of q.
static BigInt floor_q_sqrt(const BigInt& q, const BigInt& d) {
    if (q == 0 || d == 0) return 0;
    BigInt sq = isqrt(q * q * d);
    if (q > 0) return sq;
    // floor(-y) = -ceil(y)
    return is_square(q * q * d) ? BigInt(-sq) : BigInt(-(sq + 1));
}

BigInt QuadNum::floor_mul(const BigInt& m) const {
    // floor((P + Q sqrt D)/r) = floor((P + floor(Q sqrt D))/r) for r >= 1.
    BigInt P = p_ * m, Q = q_ * m;
    return floor_div(P + floor_q_sqrt(Q, d_), r_);
}

BigInt QuadNum::ceil_mul(const BigInt& m) const {
    BigInt P = p_ * m, Q = q_ * m;
    // ceil(x) = -floor(-x)
    return -floor_div(-P + floor_q_sqrt(-Q, d_), r_);
}

std::string QuadNum::str() const {
    std::string s = "(" + p_.str();
    if (q_ != 0) s += (q_ > 0 ? "+" : "") + q_.str() + "*sqrt(" + d_.str() + ")";
    s += ")/" + r_.str();
    return s;
}

SplitPair split_pos(const QuadNum& x, const BigInt& m) {
    if (m < 1) throw std::domain_error("split_pos: m must be >= 1");
    BigInt a = x.floor_mul(m) + 1;
    return SplitPair{a, m - a, true};
}

SplitPair split_neg(const QuadNum& x, const BigInt& m) {
    if (m < 0) throw std::domain_error("split_neg: m must be >= 0");
    BigInt a = x.ceil_mul(m);
    return SplitPair{a, m - a, false};
}

bool in_split_pos(const QuadNum& x, const BigInt& a, const BigInt& b) {
    // 0 < (1-x)a - xb <= 1  <=>  0 < a - x(a+b) <= 1
    QuadNum v = QuadNum::integer(a, x.d()) - x * (a + b);
    return v.sign() > 0 && (v - QuadNum::integer(1, x.d())).sign() <= 0;
}

bool in_split_neg(const QuadNum& x, const BigInt& a, const BigInt& b) {
    QuadNum v = QuadNum::integer(a, x.d()) - x * (a + b);
    return v.sign() >= 0 && (v - QuadNum::integer(1, x.d())).sign() < 0;
}

}  // namespace klhall
