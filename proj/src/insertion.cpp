#include "klhall/insertion.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <map>

#include "klhall/quadnum.hpp"
#include "klhall/words.hpp"

namespace klhall {

namespace {

using Counts = std::map<long, BigInt>;  // part index -> multiplicity

BigInt get(const Counts& c, long i) {
    auto it = c.find(i);
    return it == c.end() ? BigInt(0) : it->second;
}

bool any_at_or_above(const Counts& c, long i) {
    for (auto it = c.lower_bound(i); it != c.end(); ++it)
        if (it->second > 0) return true;
    return false;
}

long top_index(const Counts& c) {
    long top = 0;
    for (const auto& [i, v] : c)
        if (v > 0) top = std::max(top, i);
    return top;
}

// Outcome of inserting one batch of part b_i into the current pair (hi, lo).
struct Step {
    BigInt dhi, dlo;       // increments of the pair slots
    int consumed = 1;      // copies of b_i used
    long store_index = 0;  // part queued for the next pair (0: none)
    int store_count = 0;
    const char* rule = "";
    bool cond = false;
};

// ---- branch rules ------------------------------------------------------------
// Every Euler condition is evaluated through the "convenient equivalence":
// compare the post-type-1 pair against s_0 exactly in Q(sqrt(D)). The finite
// maps use the printed integer cross-products.

// Euler map, k,l >= 2 (eq:insert1type1/2).
Step euler_step_gen(const KLContext& ctx, const BigInt& hi, const BigInt& lo, long i,
                    const BigInt& /*remaining*/) {
    KLContext sw = ctx.swapped();
    if (i == 1) return {1, 0, 1, 0, 0, "insert1type2", false};
    BigInt dhi = a_seq(ctx, i) - a_seq(ctx, i - 1);
    BigInt dlo = a_seq(sw, i - 1) - a_seq(sw, i - 2);
    QuadNum lhs = QuadNum::integer(hi + dhi, ctx.D());
    bool cond = (lhs - s_val(ctx, 0) * (lo + dlo)).sign() > 0;
    if (cond) return {dhi, dlo, 1, i - 1, 1, "insert1type1", true};
    return {a_seq(ctx, i), a_seq(sw, i - 1), 1, 0, 0, "insert1type2", false};
}

// Euler map, (k,1) with k >= 4 (eq:insert1type121/221/123/1234).
Step euler_step_k1(const KLContext& ctx, const BigInt& hi, const BigInt& lo, long i,
                   const BigInt& remaining) {
    KLContext sw = ctx.swapped();  // (1,k)
    if (i == 1) return {1, 0, 1, 0, 0, "insert1type1234", false};
    if (i == 2) {
        BigInt dhi = a_seq(ctx, 2) - a_seq(ctx, 1);
        BigInt dlo = a_seq(sw, 1) - a_seq(sw, 0);
        QuadNum lhs = QuadNum::integer(hi + dhi, ctx.D());
        bool cond = (lhs - s_val(ctx, 0) * (lo + dlo)).sign() > 0;
        if (cond) return {dhi, dlo, 1, 1, 1, "insert1type123", true};
        return {a_seq(ctx, 2), a_seq(sw, 1), 1, 0, 0, "insert1type221", false};
    }
    long u = (i + 1) / 2;  // i = 2u or 2u-1, u > 1
    BigInt dhi = a_seq(ctx, 2 * u) - a_seq(ctx, 2 * u - 2);
    BigInt dlo = a_seq(sw, 2 * u - 1) - a_seq(sw, 2 * u - 3);
    QuadNum lhs = QuadNum::integer(hi + dhi, ctx.D());
    bool cond = (lhs - s_val(ctx, 0) * (lo + dlo)).sign() > 0;
    if (i % 2 == 0) {
        if (cond) {
            if (remaining >= 2) return {dhi, dlo, 2, 2 * u - 1, 1, "insert1type121", true};
            return {dhi, dlo, 1, 2 * u - 2, 1, "insert1type121", true};
        }
        return {a_seq(ctx, 2 * u), a_seq(sw, 2 * u - 1), 1, 0, 0, "insert1type221", false};
    }
    if (cond) return {dhi, dlo, 1, 2 * u - 2, 2, "insert1type121", true};
    return {a_seq(ctx, 2 * u), a_seq(sw, 2 * u - 1), 1, 2 * u - 2, 1, "insert1type221", false};
}

// Euler map, (1,k) with k >= 4 (eq:insert1type131/231).
Step euler_step_1k(const KLContext& ctx, const BigInt& hi, const BigInt& lo, long i,
                   const BigInt& remaining) {
    KLContext sw = ctx.swapped();  // (k,1)
    if (i == 1) return {1, 0, 1, 0, 0, "insert1type231", false};
    long u = i / 2;  // i = 2u+1 or 2u, u >= 1
    BigInt dhi = a_seq(ctx, 2 * u + 1) - a_seq(ctx, 2 * u - 1);
    BigInt dlo = a_seq(sw, 2 * u) - a_seq(sw, 2 * u - 2);
    QuadNum lhs = QuadNum::integer(hi + dhi, ctx.D());
    bool cond = (lhs - s_val(ctx, 0) * (lo + dlo)).sign() > 0;
    if (i % 2 == 1) {
        if (cond) {
            if (remaining >= 2) return {dhi, dlo, 2, 2 * u, 1, "insert1type131", true};
            return {dhi, dlo, 1, 2 * u - 1, 1, "insert1type131", true};
        }
        return {a_seq(ctx, 2 * u + 1), a_seq(sw, 2 * u), 1, 0, 0, "insert1type231", false};
    }
    if (cond) return {dhi, dlo, 1, 2 * u - 1, 2, "insert1type131", true};
    return {a_seq(ctx, 2 * u + 1), a_seq(sw, 2 * u), 1, 2 * u - 1, 1, "insert1type231", false};
}

// Even map, k,l >= 2; pair j holds (hi, lo) = (lambda_{2j}, lambda_{2j-1}).
Step even_step_gen(const KLContext& ctx, long j, const BigInt& hi, const BigInt& lo, long i,
                   const BigInt& /*remaining*/) {
    KLContext sw = ctx.swapped();
    if (i == 1) return {1, 0, 1, 0, 0, "insert2type2", false};
    BigInt D = a_seq(ctx, 2 * j - 1) * hi - a_seq(ctx, 2 * j) * lo;
    bool cond = D >= a_seq(ctx, 2 * j - i + 1) - a_seq(ctx, 2 * j - i);
    if (cond)
        return {a_seq(ctx, i) - a_seq(ctx, i - 1), a_seq(sw, i - 1) - a_seq(sw, i - 2),
                1, i - 1, 1, "insert2type1", true};
    return {a_seq(ctx, i), a_seq(sw, i - 1), 1, 0, 0, "insert2type2", false};
}

// Even map, (k,1).
Step even_step_k1(const KLContext& ctx, long j, const BigInt& hi, const BigInt& lo, long i,
                  const BigInt& remaining) {
    KLContext sw = ctx.swapped();
    if (i == 1) return {1, 0, 1, 0, 0, "insert2type1234", false};
    BigInt D = a_seq(ctx, 2 * j - 1) * hi - a_seq(ctx, 2 * j) * lo;
    if (i == 2) {
        bool cond = D >= a_seq(ctx, 2 * j);
        if (cond)
            return {a_seq(ctx, 2) - a_seq(ctx, 1), a_seq(sw, 1) - a_seq(sw, 0),
                    1, 1, 1, "insert2type123", true};
        return {a_seq(ctx, 2), a_seq(sw, 1), 1, 0, 0, "insert2type221", false};
    }
    long u = (i + 1) / 2;
    bool cond = D >= a_seq(ctx, 2 * j + 2 - 2 * u) - a_seq(ctx, 2 * j - 2 * u);
    BigInt dhi = a_seq(ctx, 2 * u) - a_seq(ctx, 2 * u - 2);
    BigInt dlo = a_seq(sw, 2 * u - 1) - a_seq(sw, 2 * u - 3);
    if (i % 2 == 0) {
        if (cond) {
            if (remaining >= 2) return {dhi, dlo, 2, 2 * u - 1, 1, "insert2type121", true};
            return {dhi, dlo, 1, 2 * u - 2, 1, "insert2type121", true};
        }
        return {a_seq(ctx, 2 * u), a_seq(sw, 2 * u - 1), 1, 0, 0, "insert2type221", false};
    }
    if (cond) return {dhi, dlo, 1, 2 * u - 2, 2, "insert2type121", true};
    return {a_seq(ctx, 2 * u), a_seq(sw, 2 * u - 1), 1, 2 * u - 2, 1, "insert2type221", false};
}

// Even map, (1,k); parts with index 1 or 2j are added in one piece.
Step even_step_1k(const KLContext& ctx, long j, const BigInt& hi, const BigInt& lo, long i,
                  const BigInt& remaining) {
    KLContext sw = ctx.swapped();
    if (i == 1 || i == 2 * j)
        return {a_seq(ctx, i), a_seq(sw, i - 1), 1, 0, 0, "insert2type2314", false};
    BigInt D = a_seq(ctx, 2 * j - 1) * hi - a_seq(ctx, 2 * j) * lo;
    long u = i / 2;  // i = 2u+1 or 2u, u >= 1
    bool cond = D >= a_seq(ctx, 2 * j + 1 - 2 * u) - a_seq(ctx, 2 * j - 1 - 2 * u);
    BigInt dhi = a_seq(ctx, 2 * u + 1) - a_seq(ctx, 2 * u - 1);
    BigInt dlo = a_seq(sw, 2 * u) - a_seq(sw, 2 * u - 2);
    if (i % 2 == 1) {
        if (cond) {
            if (remaining >= 2) return {dhi, dlo, 2, 2 * u, 1, "insert2type131", true};
            return {dhi, dlo, 1, 2 * u - 1, 1, "insert2type131", true};
        }
        return {a_seq(ctx, 2 * u + 1), a_seq(sw, 2 * u), 1, 0, 0, "insert2type231", false};
    }
    if (cond) return {dhi, dlo, 1, 2 * u - 1, 2, "insert2type131", true};
    return {a_seq(ctx, 2 * u + 1), a_seq(sw, 2 * u), 1, 2 * u - 1, 1, "insert2type231", false};
}

// Odd map, k,l >= 2; pair j holds (hi, lo) = (lambda_{2j+1}, lambda_{2j});
// parts come from B^{(l,k)}. `ctx` is the target (k,l).
Step odd_step_gen(const KLContext& ctx, long j, const BigInt& hi, const BigInt& lo, long i,
                  const BigInt& /*remaining*/) {
    KLContext sw = ctx.swapped();
    if (i == 1) return {1, 0, 1, 0, 0, "insert3type2", false};
    BigInt D = a_seq(ctx, 2 * j) * hi - a_seq(ctx, 2 * j + 1) * lo;
    bool cond = D >= a_seq(ctx, 2 * j + 2 - i) - a_seq(ctx, 2 * j + 1 - i);
    if (cond)
        return {a_seq(sw, i) - a_seq(sw, i - 1), a_seq(ctx, i - 1) - a_seq(ctx, i - 2),
                1, i - 1, 1, "insert3type1", true};
    return {a_seq(sw, i), a_seq(ctx, i - 1), 1, 0, 0, "insert3type2", false};
}

// Odd map, target (k,1); parts are b^{(1,k)}.
Step odd_step_k1(const KLContext& ctx, long j, const BigInt& hi, const BigInt& lo, long i,
                 const BigInt& remaining) {
    KLContext sw = ctx.swapped();  // (1,k)
    if (i == 1) return {1, 0, 1, 0, 0, "insert3type221", false};
    BigInt D = a_seq(ctx, 2 * j) * hi - a_seq(ctx, 2 * j + 1) * lo;
    long u = i / 2;  // i = 2u+1 or 2u, u >= 1
    bool cond = D >= a_seq(ctx, 2 * j + 2 - 2 * u) - a_seq(ctx, 2 * j - 2 * u);
    BigInt dhi = a_seq(sw, 2 * u + 1) - a_seq(sw, 2 * u - 1);
    BigInt dlo = a_seq(ctx, 2 * u) - a_seq(ctx, 2 * u - 2);
    if (i % 2 == 1) {
        if (cond) {
            if (remaining >= 2) return {dhi, dlo, 2, 2 * u, 1, "insert3type121", true};
            return {dhi, dlo, 1, 2 * u - 1, 1, "insert3type121", true};
        }
        return {a_seq(sw, 2 * u + 1), a_seq(ctx, 2 * u), 1, 0, 0, "insert3type221", false};
    }
    if (cond) return {dhi, dlo, 1, 2 * u - 1, 2, "insert3type121", true};
    return {a_seq(sw, 2 * u + 1), a_seq(ctx, 2 * u), 1, 2 * u - 1, 1, "insert3type221", false};
}

// Odd map, target (1,k); parts are b^{(k,1)}. Parts with index 1 or 2j+1 are
// added in one piece; b_2 branches on whether the post-insertion pair still
// carries the pair's ratio (the printed condition's radix is a misprint; the
// succession facts force a^{(1,k)}-products and threshold a^{(1,k)}_{2j+1}).
Step odd_step_1k(const KLContext& ctx, long j, const BigInt& hi, const BigInt& lo, long i,
                 const BigInt& remaining) {
    KLContext sw = ctx.swapped();  // (k,1)
    if (i == 1 || i == 2 * j + 1)
        return {a_seq(sw, i), a_seq(ctx, i - 1), 1, 0, 0, "insert3type1334", false};
    BigInt D = a_seq(ctx, 2 * j) * hi - a_seq(ctx, 2 * j + 1) * lo;
    if (i == 2) {
        bool cond = D >= a_seq(ctx, 2 * j + 1);
        if (cond)
            return {a_seq(sw, 2) - a_seq(sw, 1), a_seq(ctx, 1) - a_seq(ctx, 0),
                    1, 1, 1, "insert3type133", true};
        return {a_seq(sw, 2), a_seq(ctx, 1), 1, 0, 0, "insert3type231", false};
    }
    long u = (i + 1) / 2;  // i = 2u or 2u-1, u > 1
    bool cond = D >= a_seq(ctx, 2 * j + 3 - 2 * u) - a_seq(ctx, 2 * j + 1 - 2 * u);
    BigInt dhi = a_seq(sw, 2 * u) - a_seq(sw, 2 * u - 2);
    BigInt dlo = a_seq(ctx, 2 * u - 1) - a_seq(ctx, 2 * u - 3);
    if (i % 2 == 0) {
        if (cond) {
            if (remaining >= 2) return {dhi, dlo, 2, 2 * u - 1, 1, "insert3type131", true};
            return {dhi, dlo, 1, 2 * u - 2, 1, "insert3type131", true};
        }
        return {a_seq(sw, 2 * u), a_seq(ctx, 2 * u - 1), 1, 0, 0, "insert3type231", false};
    }
    if (cond) return {dhi, dlo, 1, 2 * u - 2, 2, "insert3type131", true};
    return {a_seq(sw, 2 * u), a_seq(ctx, 2 * u - 1), 1, 2 * u - 2, 1, "insert3type231", false};
}

using StepFn = std::function<Step(long j, const BigInt& hi, const BigInt& lo, long i,
                                  const BigInt& remaining)>;

// Insert the queued parts of one pair, highest index first, recording events
// and collecting the parts stored for the next pair.
Counts run_pair(long pair_j, BigInt& hi, BigInt& lo, Counts parts, const StepFn& step,
                long max_index_cap, InsertionTrace* trace) {
    Counts stored;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        long i = it->first;
        if (it->second == 0) continue;
        if (max_index_cap > 0 && i > max_index_cap)
            throw std::logic_error("insertion: part index exceeds the pair's bound");
        BigInt remaining = it->second;
        while (remaining > 0) {
            Step s = step(pair_j, hi, lo, i, remaining);
            if (trace) {
                InsertionEvent ev;
                ev.pair = pair_j;
                ev.part = i;
                ev.rule = s.rule;
                ev.cond = s.cond;
                ev.consumed = s.consumed;
                ev.store_index = s.store_index;
                ev.store_count = s.store_count;
                ev.pre_hi = hi;
                ev.pre_lo = lo;
                ev.post_hi = hi + s.dhi;
                ev.post_lo = lo + s.dlo;
                trace->events.push_back(std::move(ev));
            }
            hi += s.dhi;
            lo += s.dlo;
            remaining -= s.consumed;
            if (remaining < 0) throw std::logic_error("insertion: consumed more parts than queued");
            if (s.store_index > 0 && s.store_count > 0) stored[s.store_index] += s.store_count;
        }
    }
    return stored;
}

void check_regime(const KLContext& ctx) {
    if ((ctx.is_k1() && ctx.k < 4) || (ctx.is_1k() && ctx.l < 4))
        throw std::domain_error("insertion: (k,1)/(1,k) regimes need k >= 4");
}

}  // namespace

EulerPartition phi_euler(const BMultiset& nu, InsertionTrace* trace) {
    check_regime(nu.ctx);
    const KLContext ctx = nu.ctx;
    StepFn rule;
    if (ctx.general())
        rule = [ctx](long, const BigInt& hi, const BigInt& lo, long i, const BigInt& r) {
            return euler_step_gen(ctx, hi, lo, i, r);
        };
    else if (ctx.is_k1())
        rule = [ctx](long, const BigInt& hi, const BigInt& lo, long i, const BigInt& r) {
            return euler_step_k1(ctx, hi, lo, i, r);
        };
    else
        rule = [ctx](long, const BigInt& hi, const BigInt& lo, long i, const BigInt& r) {
            return euler_step_1k(ctx, hi, lo, i, r);
        };
    std::vector<BigInt> parts;
    Counts queue;
    for (const auto& [i, m] : nu.mult) queue[i] = m;
    long j = 1;
    while (true) {
        BigInt hi = 0, lo = 0;
        bool last = !any_at_or_above(queue, 2);
        Counts stored = run_pair(j, hi, lo, std::move(queue), rule, 0, trace);
        parts.push_back(hi);
        parts.push_back(lo);
        if (last) {
            if (!stored.empty()) throw std::logic_error("phi_euler: store after the final pair");
            break;
        }
        queue = std::move(stored);
        ++j;
    }
    return EulerPartition{nu.ctx, std::move(parts)};
}

LHPartition phi_even(const BMultiset& nu, long two_n, InsertionTrace* trace) {
    check_regime(nu.ctx);
    if (two_n < 2 || two_n % 2 != 0) throw std::domain_error("phi_even: length must be even >= 2");
    long n = two_n / 2;
    if (nu.max_index() > two_n) throw std::domain_error("phi_even: support exceeds 2n");
    const KLContext ctx = nu.ctx;
    StepFn rule;
    if (ctx.general())
        rule = [ctx](long j, const BigInt& hi, const BigInt& lo, long i, const BigInt& r) {
            return even_step_gen(ctx, j, hi, lo, i, r);
        };
    else if (ctx.is_k1())
        rule = [ctx](long j, const BigInt& hi, const BigInt& lo, long i, const BigInt& r) {
            return even_step_k1(ctx, j, hi, lo, i, r);
        };
    else
        rule = [ctx](long j, const BigInt& hi, const BigInt& lo, long i, const BigInt& r) {
            return even_step_1k(ctx, j, hi, lo, i, r);
        };
    std::vector<BigInt> parts(static_cast<std::size_t>(two_n), BigInt(0));
    Counts queue;
    for (const auto& [i, m] : nu.mult) queue[i] = m;
    for (long j = n; j >= 1; --j) {
        BigInt hi = 0, lo = 0;
        Counts stored = run_pair(j, hi, lo, std::move(queue), rule, 2 * j, trace);
        parts[2 * j - 1] = hi;  // lambda_{2j}
        parts[2 * j - 2] = lo;  // lambda_{2j-1}
        queue = std::move(stored);
    }
    if (top_index(queue) > 0) throw std::logic_error("phi_even: parts stored past the first pair");
    return LHPartition{ctx, std::move(parts)};
}

LHPartition phi_odd(const BMultiset& nu, const KLContext& target, long len, InsertionTrace* trace) {
    check_regime(target);
    if (len < 1 || len % 2 != 1) throw std::domain_error("phi_odd: length must be odd >= 1");
    if (nu.ctx != target.swapped())
        throw std::domain_error("phi_odd: multiset must carry parts of B^{(l,k)}");
    if (nu.max_index() > len) throw std::domain_error("phi_odd: support exceeds 2n-1");
    long n = (len + 1) / 2;
    const KLContext ctx = target;
    StepFn rule;
    if (ctx.general())
        rule = [ctx](long j, const BigInt& hi, const BigInt& lo, long i, const BigInt& r) {
            return odd_step_gen(ctx, j, hi, lo, i, r);
        };
    else if (ctx.is_k1())
        rule = [ctx](long j, const BigInt& hi, const BigInt& lo, long i, const BigInt& r) {
            return odd_step_k1(ctx, j, hi, lo, i, r);
        };
    else
        rule = [ctx](long j, const BigInt& hi, const BigInt& lo, long i, const BigInt& r) {
            return odd_step_1k(ctx, j, hi, lo, i, r);
        };
    std::vector<BigInt> parts(static_cast<std::size_t>(len), BigInt(0));
    Counts queue;
    for (const auto& [i, m] : nu.mult) queue[i] = m;
    BigInt fictitious = 0;
    for (long j = n - 1; j >= 0; --j) {
        BigInt hi = 0, lo = 0;
        Counts stored = run_pair(j, hi, lo, std::move(queue), rule, 2 * j + 1, trace);
        parts[2 * j] = hi;  // lambda_{2j+1}
        if (j > 0)
            parts[2 * j - 1] = lo;  // lambda_{2j}
        else
            fictitious = lo;
        queue = std::move(stored);
    }
    if (fictitious != 0) throw std::logic_error("phi_odd: the fictitious part moved");
    if (top_index(queue) > 0) throw std::logic_error("phi_odd: parts stored past the last pair");
    return LHPartition{ctx, std::move(parts)};
}

// ---- inverse maps: the word-level reconstructions ------------------------------

namespace {

void bump(Counts& m, long i, const BigInt& v) {
    if (v < 0) throw std::domain_error("inverse: negative multiplicity recovered");
    if (v > 0) m[i] += v;
}

BigInt need_rank_diff(const BigInt& a, const BigInt& b) {
    BigInt d = a - b;
    if (d < 0) throw std::domain_error("inverse: succession count came out negative");
    return d;
}

Digits pred_or_throw(const BigInt& m, const WordCtx& s, const Digits& w) {
    auto r = predecessor(m, s, w);
    if (!r) throw std::domain_error("inverse: required predecessor does not exist in " + s.str());
    return *r;
}

PairWord pair_pred_or_throw(const BigInt& m, const PairCtx& s, const PairWord& w) {
    auto r = pair_predecessor(m, s, w);
    if (!r) throw std::domain_error("inverse: required predecessor does not exist in " + s.str());
    return *r;
}

bool pair_is_zero(const PairWord& w) {
    for (const BigInt& d : w.s1)
        if (d != 0) return false;
    for (const BigInt& d : w.s2)
        if (d != 0) return false;
    return true;
}

// Euler, k,l >= 2: unwind the state chain of pair j with the stored counts
// of pair j+1; the per-level step counts are the recovered multiplicities.
Counts invert_pair_euler_gen(const KLContext& ctx, const BigInt& hi, const BigInt& lo,
                             const Counts& st) {
    Counts m;
    BigInt v = lo > 0 ? s_val(ctx, 0).floor_mul(lo) + 1 : BigInt(0);
    bump(m, 1, need_rank_diff(hi, v));
    long i = 2;
    long fuel = top_index(st) + 70;
    while (v > 0 || any_at_or_above(st, i - 1)) {
        if (--fuel < 0) throw std::logic_error("invert_pair_euler_gen: no convergence");
        Digits w = encode_gen(ctx, v);
        WordCtx Si = WordCtx::gen_inf(ctx, i);
        WordCtx Snext = WordCtx::gen_inf(ctx, i + 1);
        Digits t = truncated_low(w, i + 1);
        trim_zeros(t);
        Digits wnext = pred_or_throw(get(st, i - 1), Snext, t);
        bump(m, i, need_rank_diff(ctx_rank(Si, w), ctx_rank(Si, wnext)));
        v = decode_gen(ctx, wnext);
        ++i;
        fuel = std::max(fuel, static_cast<long>(w.size()) + 4);
    }
    return m;
}

// Euler, (k,1): the chain alternates (k,1)-word contexts and (1,k)-pair
// contexts through the mu states.
Counts invert_pair_euler_k1(const KLContext& ctx, const BigInt& hi, const BigInt& lo,
                            const Counts& st) {
    long k = ctx.k;
    Counts m;
    BigInt v2 = lo > 0 ? s_val(ctx, 0).floor_mul(lo) + 1 : BigInt(0);
    bump(m, 1, need_rank_diff(hi, v2));
    PairWord P = encode_1k(k, lo);  // [mu^{(2)}]
    long i = 1;
    long fuel = top_index(st) / 2 + static_cast<long>(P.s1.size()) + 70;
    while (!pair_is_zero(P) || any_at_or_above(st, 2 * i - 1)) {
        if (--fuel < 0) throw std::logic_error("invert_pair_euler_k1: no convergence");
        PairCtx Sp = PairCtx::inf(k, i - 1);
        WordCtx Si = WordCtx::k1_inf(k, i);
        Digits w2 = pred_or_throw(get(st, 2 * i - 1), Si, P.s2);
        Digits sw2 = shifted(w2);
        trim_zeros(sw2);
        trim_zeros(w2);
        PairWord Q{sw2, w2};  // [lambda^{(2i+1)}] (tight)
        bump(m, 2 * i, need_rank_diff(pair_rank(Sp, P), pair_rank(Sp, Q)));
        Digits tp2 = truncated_low(w2, i + 1);
        trim_zeros(tp2);
        PairWord M{sw2, tp2};  // [mu^{(2i+1)}]
        PairWord Pnext = pair_pred_or_throw(get(st, 2 * i), PairCtx::inf(k, i), M);
        WordCtx Si1 = WordCtx::k1_inf(k, i + 1);
        bump(m, 2 * i + 1, need_rank_diff(ctx_rank(Si1, sw2), ctx_rank(Si1, Pnext.s1)));
        P = Pnext;
        ++i;
    }
    return m;
}

// Euler, (1,k).
Counts invert_pair_euler_1k(const KLContext& ctx, const BigInt& hi, const BigInt& lo,
                            const Counts& st) {
    long K = ctx.l;
    KLContext red(K - 2, K - 2);
    Counts m;
    Digits w = encode_gen(red, lo);  // [lambda_{2j}^{(2)}] as a (k,1)-word
    Digits sw = shifted(w);
    trim_zeros(sw);
    BigInt v0w = 0;
    for (std::size_t u = 0; u < sw.size(); ++u)
        v0w += sw[u] * a_seq(red, static_cast<long long>(u) + 1);
    bump(m, 1, need_rank_diff(hi, v0w + lo));
    Digits prevE = w;   // even-position word at state 2i-2
    PairWord P{sw, w};  // tight pair of state 2i-2
    long i = 2;
    long fuel = top_index(st) / 2 + static_cast<long>(w.size()) + 70;
    while (!pair_is_zero(P) || any_at_or_above(st, 2 * i - 3)) {
        if (--fuel < 0) throw std::logic_error("invert_pair_euler_1k: no convergence");
        PairCtx Sp = PairCtx::inf(K, i - 1);
        Digits tp2 = truncated_low(P.s2, i);
        trim_zeros(tp2);
        PairWord M{P.s1, tp2};  // [mu^{(2i-2)}]
        PairWord Modd = pair_pred_or_throw(get(st, 2 * i - 3), Sp, M);
        Digits wodd = Modd.s1.empty() ? Digits{} : unshifted(Modd.s1);
        WordCtx Sk = WordCtx::k1_inf(K, i - 1);
        bump(m, 2 * i - 2, need_rank_diff(ctx_rank(Sk, prevE), ctx_rank(Sk, wodd)));
        Digits w2 = pred_or_throw(get(st, 2 * i - 2), WordCtx::k1_inf(K, i), Modd.s2);
        Digits sw2 = shifted(w2);
        trim_zeros(sw2);
        trim_zeros(w2);
        PairWord Q{sw2, w2};
        bump(m, 2 * i - 1, need_rank_diff(pair_rank(Sp, Modd), pair_rank(Sp, Q)));
        prevE = w2;
        P = Q;
        ++i;
    }
    return m;
}

// Even map, k,l >= 2 (pair j; words live in C^{(k,l)}_{2j}).
Counts invert_pair_even_gen(const KLContext& ctx, long j, const BigInt& hi, const BigInt& lo,
                            const Counts& st) {
    Counts m;
    BigInt v = lo > 0 ? ceil_div(a_seq(ctx, 2 * j) * lo, a_seq(ctx.swapped(), 2 * j - 1)) : BigInt(0);
    bump(m, 1, need_rank_diff(hi, v));
    for (long i = 2; i <= 2 * j; ++i) {
        Digits w = encode_gen_fin(ctx, 2 * j, v);
        WordCtx Si = WordCtx::gen_fin(ctx, 2 * j, i);
        WordCtx Snext = WordCtx::gen_fin(ctx, 2 * j, i + 1);
        Digits wnext = pred_or_throw(get(st, i - 1), Snext, truncated_low(w, i + 1));
        bump(m, i, need_rank_diff(ctx_rank(Si, w), ctx_rank(Si, wnext)));
        v = decode_gen_fin(ctx, 2 * j, wnext);
    }
    if (v != 0) throw std::domain_error("inverse: residue above the top index");
    if (any_at_or_above(st, 2 * j)) throw std::domain_error("inverse: stored parts beyond the pair bound");
    return m;
}

// Odd map, k,l >= 2 (pair j; words live in C^{(l,k)}_{2j+1}).
Counts invert_pair_odd_gen(const KLContext& ctx, long j, const BigInt& hi, const BigInt& lo,
                           const Counts& st) {
    KLContext sw = ctx.swapped();
    Counts m;
    BigInt v = (j >= 1 && lo > 0) ? ceil_div(a_seq(sw, 2 * j + 1) * lo, a_seq(ctx, 2 * j)) : BigInt(0);
    bump(m, 1, need_rank_diff(hi, v));
    for (long i = 2; i <= 2 * j + 1; ++i) {
        Digits w = encode_gen_fin(sw, 2 * j + 1, v);
        WordCtx Si = WordCtx::gen_fin(sw, 2 * j + 1, i);
        WordCtx Snext = WordCtx::gen_fin(sw, 2 * j + 1, i + 1);
        Digits wnext = pred_or_throw(get(st, i - 1), Snext, truncated_low(w, i + 1));
        bump(m, i, need_rank_diff(ctx_rank(Si, w), ctx_rank(Si, wnext)));
        v = decode_gen_fin(sw, 2 * j + 1, wnext);
    }
    if (v != 0) throw std::domain_error("inverse: residue above the top index");
    if (any_at_or_above(st, 2 * j + 1)) throw std::domain_error("inverse: stored parts beyond the pair bound");
    return m;
}

// Even map, (k,1) (pair j; the odd position is pair-encoded at length 2j-1).
Counts invert_pair_even_k1(const KLContext& ctx, long j, const BigInt& hi, const BigInt& lo,
                           const Counts& st) {
    long k = ctx.k;
    Counts m;
    bump(m, 1, need_rank_diff(
                   hi, lo > 0 ? ceil_div(a_seq(ctx, 2 * j) * lo, a_seq(ctx.swapped(), 2 * j - 1))
                              : BigInt(0)));
    PairWord M = encode_1k_fin(k, 2 * j - 1, lo);  // [mu^{(2)}]
    for (long i = 1; i <= j; ++i) {
        Digits w = pred_or_throw(get(st, 2 * i - 1), WordCtx::k1_fin(k, 2 * j - 2, i), M.s2);
        PairWord Q{shifted(w), w};  // [lambda^{(2i+1)}] (tight)
        PairCtx Sp = PairCtx::fin(k, 2 * j + 1 - 2 * i, i - 1);
        bump(m, 2 * i, need_rank_diff(pair_rank(Sp, M), pair_rank(Sp, Q)));
        if (i == j) {
            if (pair_rank(Sp, Q) != 0) throw std::domain_error("inverse: residue above the top index");
            break;
        }
        PairWord Modd{shifted(w), truncated_low(w, i + 1)};  // [mu^{(2i+1)}]
        PairWord Mnext = pair_pred_or_throw(get(st, 2 * i), PairCtx::fin(k, 2 * j - 1 - 2 * i, i), Modd);
        WordCtx Si1 = WordCtx::k1_fin(k, 2 * j, i + 1);
        bump(m, 2 * i + 1, need_rank_diff(ctx_rank(Si1, shifted(w)), ctx_rank(Si1, Mnext.s1)));
        M = Mnext;
    }
    if (any_at_or_above(st, 2 * j)) throw std::domain_error("inverse: stored parts beyond the pair bound");
    return m;
}

// Even map, (1,k) (pair j; the even position is pair-encoded at length 2j).
Counts invert_pair_even_1k(const KLContext& ctx, long j, const BigInt& hi, const BigInt& lo,
                           const Counts& st) {
    long K = ctx.l;
    Counts m;
    Digits w1 = encode_k1_fin(K, 2 * j - 1, lo);
    PairWord P{shifted(w1), w1};  // [lambda_{2j}^{(2)}] (tight)
    bump(m, 1, need_rank_diff(hi, pair_rank(PairCtx::fin(K, 2 * j, 0), P)));
    Digits prevW = w1;
    for (long i = 2; i <= j; ++i) {
        PairCtx Sp = PairCtx::fin(K, 2 * j + 2 - 2 * i, i - 1);
        PairWord M{P.s1, truncated_low(P.s2, i)};  // [mu^{(2i-2)}]
        PairWord Modd = pair_pred_or_throw(get(st, 2 * i - 3), Sp, M);
        Digits wodd = unshifted(Modd.s1);
        WordCtx Sk = WordCtx::k1_fin(K, 2 * j - 1, i - 1);
        bump(m, 2 * i - 2, need_rank_diff(ctx_rank(Sk, prevW), ctx_rank(Sk, wodd)));
        Digits w2 = pred_or_throw(get(st, 2 * i - 2), WordCtx::k1_fin(K, 2 * j - 1, i), Modd.s2);
        PairWord Q{shifted(w2), w2};
        bump(m, 2 * i - 1, need_rank_diff(pair_rank(Sp, Modd), pair_rank(Sp, Q)));
        prevW = w2;
        P = Q;
    }
    BigInt top = decode_k1_fin(K, 2 * j + 1, P.s1) + decode_k1_fin(K, 2 * j - 1, P.s2);
    BigInt a2j = a_seq(ctx, 2 * j);
    if (top % a2j != 0) throw std::domain_error("inverse: top residue not a multiple of a_{2j}");
    bump(m, 2 * j, top / a2j);
    if (any_at_or_above(st, 2 * j)) throw std::domain_error("inverse: stored parts beyond the pair bound");
    return m;
}

// Odd map, target (k,1) (pair j; the odd position is pair-encoded at 2j+1).
Counts invert_pair_odd_k1(const KLContext& ctx, long j, const BigInt& hi, const BigInt& lo,
                          const Counts& st) {
    long k = ctx.k;
    Counts m;
    if (j == 0) {
        bump(m, 1, hi);
        if (any_at_or_above(st, 2)) throw std::domain_error("inverse: parts beyond pair 0");
        return m;
    }
    Digits w = encode_k1_fin(k, 2 * j, lo);
    PairWord P{shifted(w), w};  // [lambda_{2j+1}^{(2)}] (tight)
    bump(m, 1, need_rank_diff(hi, pair_rank(PairCtx::fin(k, 2 * j + 1, 0), P)));
    Digits prevW = w;
    for (long i = 1; i <= j; ++i) {
        PairCtx Sp = PairCtx::fin(k, 2 * j + 1 - 2 * i, i);
        PairWord M{P.s1, truncated_low(P.s2, i + 1)};  // [mu^{(2i)}]
        PairWord Mup = pair_pred_or_throw(get(st, 2 * i - 1), Sp, M);
        Digits wodd = unshifted(Mup.s1);
        WordCtx Sk = WordCtx::k1_fin(k, 2 * j, i);
        bump(m, 2 * i, need_rank_diff(ctx_rank(Sk, prevW), ctx_rank(Sk, wodd)));
        Digits w2 = pred_or_throw(get(st, 2 * i), WordCtx::k1_fin(k, 2 * j, i + 1), Mup.s2);
        PairWord Q{shifted(w2), w2};
        bump(m, 2 * i + 1, need_rank_diff(pair_rank(Sp, Mup), pair_rank(Sp, Q)));
        prevW = w2;
        P = Q;
    }
    if (any_at_or_above(st, 2 * j + 1)) throw std::domain_error("inverse: stored parts beyond the pair bound");
    return m;
}

// Odd map, target (1,k) (pair j; the even position is pair-encoded at 2j).
Counts invert_pair_odd_1k(const KLContext& ctx, long j, const BigInt& hi, const BigInt& lo,
                          const Counts& st) {
    long K = ctx.l;
    Counts m;
    if (j == 0) {
        bump(m, 1, hi);
        if (any_at_or_above(st, 2)) throw std::domain_error("inverse: parts beyond pair 0");
        return m;
    }
    PairWord M = encode_1k_fin(K, 2 * j, lo);  // [mu^{(2)}] = [lambda_{2j}^{(2)}]
    bump(m, 1, need_rank_diff(hi, decode_k1_fin(K, 2 * j + 1, M.s1)));
    PairWord Q;
    for (long i = 1; i <= j; ++i) {
        Digits w = pred_or_throw(get(st, 2 * i - 1), WordCtx::k1_fin(K, 2 * j - 1, i), M.s2);
        Q = PairWord{shifted(w), w};  // [lambda_{2j}^{(2i+1)}] (tight)
        PairCtx Sp = PairCtx::fin(K, 2 * j + 2 - 2 * i, i - 1);
        bump(m, 2 * i, need_rank_diff(pair_rank(Sp, M), pair_rank(Sp, Q)));
        if (i == j) break;
        PairWord Modd{shifted(w), truncated_low(w, i + 1)};  // [mu^{(2i+1)}]
        PairWord Mnext = pair_pred_or_throw(get(st, 2 * i), PairCtx::fin(K, 2 * j - 2 * i, i), Modd);
        WordCtx Sk = WordCtx::k1_fin(K, 2 * j + 1, i + 1);
        bump(m, 2 * i + 1, need_rank_diff(ctx_rank(Sk, shifted(w)), ctx_rank(Sk, Mnext.s1)));
        M = Mnext;
    }
    BigInt v = decode_k1_fin(K, 2 * j + 1, Q.s1) + decode_k1_fin(K, 2 * j - 1, Q.s2);
    BigInt a2j = a_seq(ctx, 2 * j);
    if (v % a2j != 0) throw std::domain_error("inverse: top residue not a multiple of a_{2j}");
    bump(m, 2 * j + 1, v / a2j);
    if (any_at_or_above(st, 2 * j + 2)) throw std::domain_error("inverse: stored parts beyond the pair bound");
    return m;
}

}  // namespace

BMultiset phi_euler_inv(const EulerPartition& lambda) {
    check_regime(lambda.ctx);
    if (!is_euler(lambda)) throw std::domain_error("phi_euler_inv: not a (k,l)-Euler partition (eq:klseqbis)");
    long t = lambda.t();
    Counts st;
    for (long j = t; j >= 1; --j) {
        const BigInt& hi = lambda.parts[2 * j - 2];
        const BigInt& lo = lambda.parts[2 * j - 1];
        if (lambda.ctx.general())
            st = invert_pair_euler_gen(lambda.ctx, hi, lo, st);
        else if (lambda.ctx.is_k1())
            st = invert_pair_euler_k1(lambda.ctx, hi, lo, st);
        else
            st = invert_pair_euler_1k(lambda.ctx, hi, lo, st);
    }
    BMultiset nu(lambda.ctx);
    for (const auto& [i, c] : st) nu.add(i, c);
    return nu;
}

BMultiset phi_even_inv(const LHPartition& lambda) {
    check_regime(lambda.ctx);
    long two_n = lambda.n();
    if (two_n < 2 || two_n % 2 != 0) throw std::domain_error("phi_even_inv: length must be even");
    if (!is_lecture_hall(lambda))
        throw std::domain_error("phi_even_inv: not a lecture hall partition (eq:ratioklseq)");
    long n = two_n / 2;
    Counts st;
    for (long j = 1; j <= n; ++j) {
        const BigInt& hi = lambda.parts[2 * j - 1];
        const BigInt& lo = lambda.parts[2 * j - 2];
        if (lambda.ctx.general())
            st = invert_pair_even_gen(lambda.ctx, j, hi, lo, st);
        else if (lambda.ctx.is_k1())
            st = invert_pair_even_k1(lambda.ctx, j, hi, lo, st);
        else
            st = invert_pair_even_1k(lambda.ctx, j, hi, lo, st);
    }
    BMultiset nu(lambda.ctx);
    for (const auto& [i, c] : st) nu.add(i, c);
    return nu;
}

BMultiset phi_odd_inv(const LHPartition& lambda) {
    check_regime(lambda.ctx);
    long len = lambda.n();
    if (len < 1 || len % 2 != 1) throw std::domain_error("phi_odd_inv: length must be odd");
    if (!is_lecture_hall(lambda))
        throw std::domain_error("phi_odd_inv: not a lecture hall partition (eq:ratioklseq)");
    long n = (len + 1) / 2;
    Counts st;
    for (long j = 0; j <= n - 1; ++j) {
        const BigInt& hi = lambda.parts[2 * j];
        BigInt lo = j > 0 ? lambda.parts[2 * j - 1] : BigInt(0);
        if (lambda.ctx.general())
            st = invert_pair_odd_gen(lambda.ctx, j, hi, lo, st);
        else if (lambda.ctx.is_k1())
            st = invert_pair_odd_k1(lambda.ctx, j, hi, lo, st);
        else
            st = invert_pair_odd_1k(lambda.ctx, j, hi, lo, st);
    }
    BMultiset nu(lambda.ctx.swapped());
    for (const auto& [i, c] : st) nu.add(i, c);
    return nu;
}

std::string InsertionTrace::json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const InsertionEvent& e : events) {
        nlohmann::json je;
        je["pair"] = e.pair;
        je["part"] = e.part;
        je["rule"] = e.rule;
        je["cond"] = e.cond;
        je["consumed"] = e.consumed;
        if (e.store_index > 0) {
            je["store_index"] = e.store_index;
            je["store_count"] = e.store_count.str();
        }
        je["pre"] = {e.pre_hi.str(), e.pre_lo.str()};
        je["post"] = {e.post_hi.str(), e.post_lo.str()};
        arr.push_back(std::move(je));
    }
    return arr.dump();
}

}  // namespace klhall
