#include "klhall/enumerate.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "klhall/quadnum.hpp"
#include "klhall/recursive.hpp"

namespace klhall {

void CountTable::add(const BigInt& odd, const BigInt& even) {
    BigInt tot = odd + even;
    if (tot > W) return;
    counts[{static_cast<long>(odd), static_cast<long>(even)}] += 1;
}

void enum_b(const KLContext& ctx, long n, long W, const std::function<void(const BMultiset&)>& fn) {
    if (W < 0) return;
    // part indices usable under the weight budget; b-parts grow without bound
    // along each parity class, so stop after both parities exceed W
    std::vector<long> idx;
    for (long i = 1; n < 0 ? true : i <= n; ++i) {
        BigInt b = b_part(ctx, i);
        if (b <= W) {
            idx.push_back(i);
        } else if (n < 0 && i >= 2 && b_part(ctx, i - 1) > W) {
            break;
        }
        if (n < 0 && i > 2 * W + 4) break;  // safety net; never reached in practice
    }
    BMultiset cur(ctx);
    std::function<void(std::size_t, BigInt)> rec = [&](std::size_t pos, BigInt budget) {
        if (pos == idx.size()) {
            fn(cur);
            return;
        }
        long i = idx[pos];
        BigInt b = b_part(ctx, i);
        rec(pos + 1, budget);  // multiplicity 0
        for (BigInt m = 1; m * b <= budget; ++m) {
            cur.mult[i] = m;
            rec(pos + 1, budget - m * b);
        }
        cur.mult.erase(i);
    };
    rec(0, W);
}

void enum_lh(const KLContext& ctx, long n, long W,
             const std::function<void(const LHPartition&)>& fn) {
    if (W < 0 || n < 1) return;
    std::vector<BigInt> parts(static_cast<std::size_t>(n), BigInt(0));
    // choose from the top part down; lambda_i <= lambda_{i+1} a_i / a_{i+1}
    std::function<void(long, BigInt)> rec = [&](long i, BigInt budget) {
        if (i == 0) {
            fn(LHPartition{ctx, parts});
            return;
        }
        BigInt cap = budget;
        if (i < n) {
            BigInt chain = floor_div(parts[i] * a_seq(ctx, i), a_seq(ctx, i + 1));
            cap = std::min(cap, chain);
        }
        for (BigInt v = 0; v <= cap; ++v) {
            parts[i - 1] = v;
            rec(i - 1, budget - v);
        }
        parts[i - 1] = 0;
    };
    rec(n, W);
}

namespace {

// Largest s >= 0 with r > s_0 * s (the strict Euler gap), or -1 if none.
BigInt euler_gap_cap(const QuadNum& s0, const BigInt& r) {
    if (r <= 0) return -1;
    // s < r / s_0: start from the floor of r/s_0 and correct exactly
    BigInt s = s0.inverse().floor_mul(r);
    while ((QuadNum::integer(r, s0.d()) - s0 * s).sign() <= 0) --s;
    return s;
}

}  // namespace

void enum_euler(const KLContext& ctx, long W, const std::function<void(const EulerPartition&)>& fn) {
    if (W < 0) return;
    QuadNum s0 = s_val(ctx, 0), s0sw = s_val(ctx.swapped(), 0);
    std::vector<BigInt> parts;
    // parts holds lambda_1.. so far; at an odd position we may close the
    // partition with (lambda, 0)
    std::function<void(BigInt)> rec_odd = [&](BigInt budget) {
        // choose lambda_{2i-1} subject to lambda_{2i-2} > s0^{(l,k)} lambda_{2i-1}
        BigInt cap = budget;
        if (!parts.empty()) {
            BigInt gap = euler_gap_cap(s0sw, parts.back());
            cap = std::min(cap, gap);
        }
        for (BigInt v = 0; v <= cap; ++v) {
            // close here: (.., v, 0)
            parts.push_back(v);
            parts.push_back(0);
            fn(EulerPartition{ctx, parts});
            parts.pop_back();
            // or continue with lambda_{2i} >= 1 under v > s0 * lambda_{2i}
            BigInt cap2 = std::min(BigInt(budget - v), euler_gap_cap(s0, v));
            for (BigInt w = 1; w <= cap2; ++w) {
                parts.push_back(w);
                rec_odd(budget - v - w);
                parts.pop_back();
            }
            parts.pop_back();
        }
    };
    rec_odd(W);
}

CountTable series_table(const KLContext& ctx, Family fam, long len, long W) {
    KLContext sw = ctx.swapped();
    std::vector<std::pair<long, long>> monos;  // (odd-exp, even-exp)
    if (fam == Family::Even) {
        if (len % 2 != 0) throw std::domain_error("series_table: even family needs even length");
        for (long i = 1; i <= len; ++i)
            monos.emplace_back(static_cast<long>(a_seq(sw, i - 1)), static_cast<long>(a_seq(ctx, i)));
    } else if (fam == Family::Odd) {
        if (len % 2 != 1) throw std::domain_error("series_table: odd family needs odd length");
        for (long i = 1; i <= len; ++i)
            monos.emplace_back(static_cast<long>(a_seq(sw, i)), static_cast<long>(a_seq(ctx, i - 1)));
    } else {
        for (long i = 1;; ++i) {
            BigInt b = b_part(ctx, i);
            if (b > W) {
                if (i >= 2 && b_part(ctx, i - 1) > W) break;
                if (i > 2 * W + 4) break;
                continue;
            }
            monos.emplace_back(static_cast<long>(a_seq(ctx, i)), static_cast<long>(a_seq(sw, i - 1)));
        }
    }
    // dense triangular array, one geometric factor at a time
    std::vector<std::vector<BigInt>> T(static_cast<std::size_t>(W + 1),
                                       std::vector<BigInt>(static_cast<std::size_t>(W + 1)));
    T[0][0] = 1;
    for (auto [xo, ye] : monos) {
        if (xo + ye > W) continue;
        if (xo == 0 && ye == 0) throw std::logic_error("series_table: degenerate factor");
        for (long o = xo; o <= W; ++o)
            for (long e = ye; o + e <= W; ++e) T[o][e] += T[o - xo][e - ye];
    }
    CountTable out;
    out.W = W;
    out.provenance = "series-product";
    for (long o = 0; o <= W; ++o)
        for (long e = 0; o + e <= W; ++e)
            if (T[o][e] != 0) out.counts[{o, e}] = T[o][e];
    return out;
}

CountTable table_from_b(const KLContext& ctx, Family fam, long len, long W) {
    CountTable out;
    out.W = W;
    out.provenance = "enumerated-B";
    KLContext sw = ctx.swapped();
    if (fam == Family::Even) {
        enum_b(ctx, len, W, [&](const BMultiset& nu) {
            BigInt o = 0, e = 0;
            for (const auto& [i, m] : nu.mult) {
                o += m * a_seq(sw, i - 1);
                e += m * a_seq(ctx, i);
            }
            out.add(o, e);
        });
    } else if (fam == Family::Odd) {
        enum_b(sw, len, W, [&](const BMultiset& nu) {
            BigInt o = 0, e = 0;
            for (const auto& [i, m] : nu.mult) {
                o += m * a_seq(sw, i);
                e += m * a_seq(ctx, i - 1);
            }
            out.add(o, e);
        });
    } else {
        enum_b(ctx, -1, W, [&](const BMultiset& nu) {
            BigInt o = 0, e = 0;
            for (const auto& [i, m] : nu.mult) {
                o += m * a_seq(ctx, i);
                e += m * a_seq(sw, i - 1);
            }
            out.add(o, e);
        });
    }
    return out;
}

CountTable table_from_partitions(const KLContext& ctx, Family fam, long len, long W) {
    CountTable out;
    out.W = W;
    out.provenance = "enumerated-L";
    if (fam == Family::Euler) {
        enum_euler(ctx, W, [&](const EulerPartition& p) {
            Weights w = weights(p.parts);
            out.add(w.odd, w.even);
        });
    } else {
        enum_lh(ctx, len, W, [&](const LHPartition& p) {
            Weights w = weights(p.parts);
            out.add(w.odd, w.even);
        });
    }
    return out;
}

bool VerifyReport::all_pass() const {
    for (const VerifyRow& r : rows)
        if (!r.pass) return false;
    return true;
}

std::string VerifyReport::text() const {
    std::ostringstream os;
    for (const VerifyRow& r : rows) {
        os << (r.pass ? "PASS" : "FAIL") << "  (" << r.ctx.k << "," << r.ctx.l << ")  " << r.check;
        if (!r.detail.empty()) os << "  [" << r.detail << "]";
        os << "\n";
    }
    return os.str();
}

std::string VerifyReport::json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const VerifyRow& r : rows) {
        nlohmann::json jr;
        jr["k"] = r.ctx.k;
        jr["l"] = r.ctx.l;
        jr["check"] = r.check;
        jr["pass"] = r.pass;
        if (!r.detail.empty()) jr["detail"] = r.detail;
        arr.push_back(std::move(jr));
    }
    return arr.dump();
}

namespace {

std::string fam_name(Family fam, long len) {
    switch (fam) {
        case Family::Even:
            return "2n=" + std::to_string(len);
        case Family::Odd:
            return "2n-1=" + std::to_string(len);
        default:
            return "inf";
    }
}

std::string key_string(const std::pair<long, long>& k, const BigInt& a, const BigInt& b) {
    std::ostringstream os;
    os << "(o=" << k.first << ",e=" << k.second << "): " << a.str() << " vs " << b.str();
    return os.str();
}

std::string first_diff(const CountTable& x, const CountTable& y) {
    for (const auto& [k, v] : x.counts) {
        auto it = y.counts.find(k);
        if (it == y.counts.end()) return key_string(k, v, 0) + " (" + x.provenance + "/" + y.provenance + ")";
        if (it->second != v) return key_string(k, v, it->second) + " (" + x.provenance + "/" + y.provenance + ")";
    }
    for (const auto& [k, v] : y.counts)
        if (!x.counts.count(k)) return key_string(k, 0, v) + " (" + x.provenance + "/" + y.provenance + ")";
    return "";
}

}  // namespace

VerifyRow verify_counts(const KLContext& ctx, Family fam, long len, long W) {
    VerifyRow row{ctx, "counts " + fam_name(fam, len) + " W<=" + std::to_string(W), false, ""};
    CountTable L = table_from_partitions(ctx, fam, len, W);
    CountTable B = table_from_b(ctx, fam, len, W);
    CountTable S = series_table(ctx, fam, len, W);
    if (!L.same_counts(B)) {
        row.detail = "L vs B: " + first_diff(L, B);
        return row;
    }
    if (!L.same_counts(S)) {
        row.detail = "L vs series: " + first_diff(L, S);
        return row;
    }
    row.pass = true;
    BigInt tot = 0;
    for (const auto& [k, v] : L.counts) tot += v;
    row.detail = tot.str() + " members";
    return row;
}

namespace {

std::string parts_key(const std::vector<BigInt>& parts) {
    std::string s;
    for (const BigInt& p : parts) s += p.str() + ",";
    return s;
}

}  // namespace

VerifyRow verify_bijection(const KLContext& ctx, Family fam, long len, long W) {
    VerifyRow row{ctx, "bijection " + fam_name(fam, len) + " W<=" + std::to_string(W), false, ""};
    KLContext sw = ctx.swapped();
    std::set<std::string> images;
    bool ok = true;
    std::string why;
    long count = 0;
    auto handle = [&](const BMultiset& nu) {
        if (!ok) return;
        ++count;
        std::vector<BigInt> parts;
        BMultiset back(ctx);
        if (fam == Family::Euler) {
            EulerPartition p = phi_euler(nu);
            parts = p.parts;
            if (!is_euler(p)) {
                ok = false;
                why = "image not Euler-admissible";
                return;
            }
            back = phi_euler_inv(p);
        } else if (fam == Family::Even) {
            LHPartition p = phi_even(nu, len);
            parts = p.parts;
            if (!is_lecture_hall(p)) {
                ok = false;
                why = "image not lecture-hall";
                return;
            }
            back = phi_even_inv(p);
        } else {
            LHPartition p = phi_odd(nu, ctx, len);
            parts = p.parts;
            if (!is_lecture_hall(p)) {
                ok = false;
                why = "image not lecture-hall";
                return;
            }
            back = phi_odd_inv(p);
        }
        if (!(back == nu)) {
            ok = false;
            why = "inverse round trip failed at " + render_mult(nu);
            return;
        }
        if (weights(parts).total != bweight(nu)) {
            ok = false;
            why = "weight not preserved at " + render_mult(nu);
            return;
        }
        if (!images.insert(parts_key(parts)).second) {
            ok = false;
            why = "not injective at " + render_mult(nu);
        }
    };
    if (fam == Family::Odd)
        enum_b(sw, len, W, handle);
    else
        enum_b(ctx, fam == Family::Euler ? -1 : len, W, handle);
    if (!ok) {
        row.detail = why;
        return row;
    }
    // surjectivity onto the enumerated partition set
    long lcount = 0;
    auto check_surj = [&](const std::vector<BigInt>& parts) {
        if (!ok) return;
        ++lcount;
        if (!images.count(parts_key(parts))) {
            ok = false;
            why = "not surjective: missing " + parts_to_string(parts);
        }
    };
    if (fam == Family::Euler)
        enum_euler(ctx, W, [&](const EulerPartition& p) { check_surj(p.parts); });
    else
        enum_lh(ctx, len, W, [&](const LHPartition& p) { check_surj(p.parts); });
    if (!ok) {
        row.detail = why;
        return row;
    }
    if (lcount != count) {
        row.detail = "cardinality mismatch";
        return row;
    }
    row.pass = true;
    row.detail = std::to_string(count) + " members";
    return row;
}

VerifyRow verify_equivalence(const KLContext& ctx, Family fam, long len, long W,
                             unsigned long seed, long samples) {
    VerifyRow row{ctx, "equivalence " + fam_name(fam, len) + " W<=" + std::to_string(W), false, ""};
    KLContext sw = ctx.swapped();
    bool ok = true;
    std::string why;
    long count = 0;
    auto check = [&](const BMultiset& nu) {
        if (!ok) return;
        ++count;
        if (fam == Family::Euler) {
            if (!(lambda_rec_inf(nu).parts == phi_euler(nu).parts)) {
                ok = false;
                why = "Phi != Lambda at " + render_mult(nu);
            }
        } else {
            LHPartition viaPhi = fam == Family::Even ? phi_even(nu, len) : phi_odd(nu, ctx, len);
            if (!(lambda_rec_fin(nu, ctx, len).parts == viaPhi.parts)) {
                ok = false;
                why = "Phi != Lambda at " + render_mult(nu);
            }
        }
    };
    const KLContext bctx = fam == Family::Odd ? sw : ctx;
    enum_b(bctx, fam == Family::Euler ? -1 : len, W, check);
    std::mt19937_64 rng(seed);
    long maxidx = fam == Family::Euler ? 8 : len;
    for (long s = 0; s < samples && ok; ++s) {
        BMultiset nu(bctx);
        for (long i = 1; i <= maxidx; ++i) {
            long c = static_cast<long>(rng() % 6);  // multiplicities 0..5
            if (c > 0) nu.add(i, c);
        }
        check(nu);
    }
    if (!ok) {
        row.detail = why;
        return row;
    }
    row.pass = true;
    row.detail = std::to_string(count) + " enumerated + " + std::to_string(samples) + " random";
    return row;
}

const std::vector<KLContext>& test_matrix() {
    static const std::vector<KLContext> m = {
        KLContext(2, 2), KLContext(2, 3), KLContext(3, 2), KLContext(4, 1),
        KLContext(1, 4), KLContext(3, 3), KLContext(2, 4), KLContext(4, 2),
        KLContext(5, 1), KLContext(1, 5), KLContext(6, 1), KLContext(1, 6)};
    return m;
}

}  // namespace klhall
