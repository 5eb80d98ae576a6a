#include "betalab/param_cylinders.hpp"

#include <algorithm>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "betalab/errors.hpp"

namespace betalab {
namespace {

using Rat = boost::multiprecision::cpp_rational;

Rat to_rat(const Dyadic& d) {
    if (d.exponent() >= 0) return Rat(d.mantissa() << d.exponent());
    return Rat(d.mantissa(), bigint(1) << -d.exponent());
}

// beta^k x - w1 beta^(k-1) - ... - wk - c as ascending rational coefficients.
using Poly = std::vector<Rat>;

Poly word_poly(const Word& w, size_t k, const Dyadic& x, long c) {
    Poly p(k + 1);
    p[k] = to_rat(x);
    for (size_t j = 1; j <= k; ++j) p[k - j] = -Rat(static_cast<long>(w.digits[j - 1]));
    p[0] -= c;
    return p;
}

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_rem(Poly a, const Poly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        Rat q = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i + 1 < b.size(); ++i) a[shift + i] -= q * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_rem(std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

int sign_at(const Poly& p, const Dyadic& v) {
    Rat b = to_rat(v);
    Rat acc = 0;
    for (size_t i = p.size(); i-- > 0;) acc = acc * b + p[i];
    return acc.sign();
}

// Whether a and b share a root inside enc. Valid when a has exactly one real
// root there, so a detected common root must be that one.
bool shares_root_in(const Poly& a, const Poly& b, const Enclosure& enc) {
    Poly g = poly_gcd(a, b);
    if (g.size() <= 1) return false;
    int s1 = sign_at(g, enc.lo);
    int s2 = sign_at(g, enc.hi);
    return s1 == 0 || s2 == 0 || (s1 < 0) != (s2 < 0);
}

Dyadic digit_sum(const Word& w) {
    bigint s = 0;
    for (Digit d : w.digits) s += d;
    return Dyadic(s, 0);
}

// Power-of-two top with f_{w1..wk}(top) > target; exists since f -> +infinity.
Dyadic bracket_top(const Word& pk, const Dyadic& x, const Dyadic& target) {
    Dyadic hi(2);
    for (int i = 0; i < 400; ++i) {
        if (eval_fw(pk, x, hi) > target) return hi;
        hi = hi.mul_pow2(1);
    }
    throw no_sign_change("bracket_top: target not exceeded below 2^400");
}

// Unique root >= 1 of f_{w1..wk} = target. The sign of f - target equals the
// sign of x - value(prefix with last digit raised), which is monotone in beta,
// so plain bisection brackets the single crossing.
Enclosure prefix_root(const Word& w, size_t k, const Dyadic& x,
                      const Dyadic& target, const Tolerance& tol) {
    Word pk = prefix(w, k);
    auto g = [&](const Dyadic& b) { return eval_fw(pk, x, b); };
    Dyadic top = bracket_top(pk, x, target);
    return solve_increasing(g, Dyadic(1), top, target, tol);
}

bool is_boundary_pattern(const Word& w, const Dyadic& x) {
    if (x == Dyadic(1)) {
        if (w.digits[0] != 1) return false;
        for (size_t i = 1; i < w.size(); ++i)
            if (w.digits[i] != 0) return false;
        return true;
    }
    return w.all_zero();
}

}  // namespace

LowerBeta lower_beta(const Word& w, const Dyadic& x, const Tolerance& tol) {
    if (w.empty()) throw error("lower_beta: empty word");
    if (x.sign() <= 0 || x > Dyadic(1)) throw error("lower_beta: x must lie in (0, 1]");
    const size_t n = w.size();

    if (is_boundary_pattern(w, x)) {
        // realized on a right neighborhood of 1; find a witness base
        Tolerance t = tol;
        for (;;) {
            if (expand(x, Dyadic(1) + t.eps(), n).digits == w)
                return {true, Enclosure(Dyadic(1))};
            t = t.escalated();
        }
    }

    Dyadic s1 = digit_sum(w);
    if (s1 == x)
        throw not_in_omega("word value meets x only at base 1, which is excluded");
    if (s1 < x)
        throw not_in_omega("word value stays below x at every base");

    Tolerance t = tol;
    Enclosure root = prefix_root(w, n, x, Dyadic(0), t);
    Dyadic below_pt = root.lo - t.eps();
    while (below_pt <= Dyadic(1)) {
        t = t.escalated();
        root = prefix_root(w, n, x, Dyadic(0), t);
        below_pt = root.lo - t.eps();
    }
    // vet the word on both sides of the root; a failure below certifies that
    // some earlier digit already jumped, so w is never an expansion prefix
    if (compare_words(expand(x, below_pt, n).digits, w) != Ord::Less)
        throw not_in_omega("expansion just below the root does not precede the word");
    if (compare_words(expand(x, root.hi + t.eps(), n).digits, w) == Ord::Less)
        throw not_in_omega("expansion just above the root precedes the word");
    return {false, root};
}

Enclosure upper_beta(const Word& w, const Dyadic& x, const Tolerance& tol) {
    LowerBeta lb = lower_beta(w, x, tol);
    const size_t n = w.size();

    Enclosure m = prefix_root(w, 1, x, Dyadic(1), tol);
    for (size_t k = 2; k <= n; ++k) {
        Enclosure e = prefix_root(w, k, x, Dyadic(1), tol);
        m.lo = std::min(m.lo, e.lo);
        m.hi = std::min(m.hi, e.hi);
    }

    if (!lb.is_one) {
        // the sup must exceed the lower root or the cylinder is empty
        Poly p0 = word_poly(w, n, x, 0);
        for (size_t k = 1; k <= n; ++k) {
            Word pk = prefix(w, k);
            Poly qk;
            Tolerance t = tol;
            Enclosure enc0 = lb.beta;
            for (;;) {
                Dyadic qlo = eval_fw(pk, x, enc0.lo) - Dyadic(1);
                Dyadic qhi = eval_fw(pk, x, enc0.hi) - Dyadic(1);
                if (qlo > Dyadic(0))
                    throw not_in_omega("a shorter prefix jumps below the root: empty cylinder");
                if (eval_fw(w, x, enc0.lo).is_zero()) {
                    // the lower root is exact; compare the jump point directly
                    if (qlo.is_zero())
                        throw not_in_omega("a prefix jump lands on the root: empty cylinder");
                    break;
                }
                if (qhi < Dyadic(0)) break;
                if (qk.empty()) qk = word_poly(w, k, x, 1);
                if (shares_root_in(p0, qk, enc0))
                    throw not_in_omega("a prefix jump coincides with the root: empty cylinder");
                t = t.escalated();
                enc0 = prefix_root(w, n, x, Dyadic(0), t);
            }
        }
    }
    return m;
}

bool is_full_param(const Word& w, const Dyadic& x, const Tolerance& tol) {
    LowerBeta lb = lower_beta(w, x, tol);
    if (lb.is_one) return false;  // bases sit strictly above 1, the bottom value is never attained
    const size_t n = w.size();
    if (n == 1) return true;

    Poly pn = word_poly(w, n, x, 1);
    Tolerance t = tol;
    Enclosure encn = prefix_root(w, n, x, Dyadic(1), t);
    for (size_t k = 1; k < n; ++k) {
        Word pk = prefix(w, k);
        Poly qk;
        for (;;) {
            Dyadic qlo = eval_fw(pk, x, encn.lo) - Dyadic(1);
            if (qlo > Dyadic(0)) return false;  // jump k sits below the f_w = 1 root
            if ((eval_fw(w, x, encn.lo) - Dyadic(1)).is_zero()) {
                // exact root: a simultaneous zero is a tie and keeps w full
                break;
            }
            Dyadic qhi = eval_fw(pk, x, encn.hi) - Dyadic(1);
            if (qhi < Dyadic(0)) break;  // jump k safely above
            if (qk.empty()) qk = word_poly(w, k, x, 1);
            if (shares_root_in(pn, qk, encn)) break;
            t = t.escalated();
            encn = prefix_root(w, n, x, Dyadic(1), t);
        }
    }
    return true;
}

namespace {

struct ParamEnumerator {
    const Dyadic& x;
    size_t n;
    const Dyadic& wlo;
    const Dyadic& whi;
    Tolerance tol;
    std::uint64_t cap;
    ParamWindowResult out;

    Enclosure cut_root(const Word& wd, const Dyadic& blo, const Dyadic& bhi) {
        auto g = [&](const Dyadic& b) { return eval_fw(wd, x, b); };
        return solve_increasing(g, blo, bhi, Dyadic(0), tol);
    }

    enum class Order { below, tie, above };

    // Exact order of the unique roots >= 1 of f_a and f_b, starting from
    // bracketing enclosures. Distinct roots separate under refinement; an
    // exact tie is certified by a common factor changing sign across the
    // hull, so the loop terminates either way.
    Order resolve_roots(const Word& wa, const Word& wb, Enclosure& a, Enclosure& b) {
        Tolerance t = tol;
        Poly pa, pb;
        for (;;) {
            if (a.hi < b.lo) return Order::below;
            if (b.hi < a.lo) return Order::above;
            if (pa.empty()) {
                pa = word_poly(wa, wa.size(), x, 0);
                pb = word_poly(wb, wb.size(), x, 0);
            }
            Enclosure hull(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
            if (shares_root_in(pa, pb, hull)) return Order::tie;
            t = t.escalated();
            auto ga = [&](const Dyadic& v) { return eval_fw(wa, x, v); };
            auto gb = [&](const Dyadic& v) { return eval_fw(wb, x, v); };
            a = solve_increasing(ga, a.lo, a.hi, Dyadic(0), t);
            b = solve_increasing(gb, b.lo, b.hi, Dyadic(0), t);
        }
    }

    void leaf(Word w, bool lower_is_one, const Enclosure& lo, const Enclosure& hi,
              bool attains) {
        if (out.cylinders.size() >= cap)
            throw cap_exceeded("parameter cylinder cap " + std::to_string(cap) + " exceeded");
        bool full = lower_is_one ? false : (attains || is_full_param(w, x, tol));
        out.cylinders.push_back({std::move(w), lower_is_one, lo, hi, full});
    }

    // Children of the node split at the roots of f_{w.(d+1)} = 0, which are
    // the points where beta * f_w crosses the integer d + 1. A child that ends
    // at its own cut attains the value 1 there. top_w is the word whose root
    // is the node's upper endpoint, so cuts that tie with or pass the top are
    // decided exactly: a tied cut still yields its left child, and the empty
    // interval beyond it is dropped instead of becoming a zero-width leaf.
    void node(const Word& w, const Word& top_w, bool lower_is_one, const Enclosure& lo,
              Enclosure hi, bool attains) {
        ++out.nodes_visited;
        if (w.size() == n) {
            leaf(w, lower_is_one, lo, hi, attains);
            return;
        }
        Dyadic blo = lower_is_one ? Dyadic(1) : lo.lo;
        Enclosure child_lo = lo;
        bool child_one = lower_is_one;
        bool bottom_is_cut = false;  // child_lo brackets the root of f_{w d} = 0
        Word bottom_w;
        for (Digit d = 0;; ++d) {
            Word wd = w;
            wd.digits.push_back(d);
            Word wnext = w;
            wnext.digits.push_back(d + 1);
            Dyadic child_bottom = child_one ? Dyadic(1) : child_lo.lo;
            bool in_window_lo = child_bottom < whi;
            if (!(eval_fw(wnext, x, hi.hi) > Dyadic(0))) {
                // rightmost child, reaching the node top without attaining it;
                // empty when its bottom cut ties with the top root
                bool nonempty = true;
                if (bottom_is_cut)
                    nonempty = resolve_roots(bottom_w, top_w, child_lo, hi) == Order::below;
                if (nonempty && hi.hi > wlo && in_window_lo)
                    node(wd, top_w, child_one, child_lo, hi, false);
                break;
            }
            Enclosure cut = cut_root(wnext, blo, hi.hi);
            Order ord = resolve_roots(wnext, top_w, cut, hi);
            if (ord == Order::above) {
                // the next crossing sits past the node top, so wd is rightmost
                if (hi.hi > wlo && in_window_lo) node(wd, top_w, child_one, child_lo, hi, false);
                break;
            }
            if (cut.hi > wlo && in_window_lo) node(wd, wnext, child_one, child_lo, cut, true);
            if (ord == Order::tie) break;  // nothing lives between the cut and the top
            child_lo = cut;
            child_one = false;
            bottom_is_cut = true;
            bottom_w = wnext;
        }
    }
};

}  // namespace

ParamWindowResult enumerate_param_window(const Dyadic& x, size_t n,
                                         const Dyadic& wlo, const Dyadic& whi,
                                         const Tolerance& tol, std::uint64_t cap) {
    if (x.sign() <= 0 || x > Dyadic(1)) throw error("enumerate_param_window: x must lie in (0, 1]");
    if (n == 0) throw error("enumerate_param_window: order must be positive");
    if (wlo < Dyadic(1) || whi <= wlo) throw error("enumerate_param_window: bad window");

    ParamEnumerator e{x, n, wlo, whi, tol, cap, {}};
    Digit dmin = (x == Dyadic(1)) ? 1 : 0;
    Enclosure prev_lo(Dyadic(1));
    bool prev_one = true;
    for (Digit d = dmin;; ++d) {
        if (!prev_one && prev_lo.lo >= whi) break;
        Word wd;
        wd.digits.push_back(d);
        Word wnext;
        wnext.digits.push_back(d + 1);
        Dyadic top(2);
        for (int i = 0; i < 400 && !(eval_fw(wnext, x, top) > Dyadic(0)); ++i)
            top = top.mul_pow2(1);
        Enclosure cut = e.cut_root(wnext, Dyadic(1), top);
        Dyadic child_bottom = prev_one ? Dyadic(1) : prev_lo.lo;
        if (cut.hi > wlo && child_bottom < whi) e.node(wd, wnext, prev_one, prev_lo, cut, true);
        prev_lo = cut;
        prev_one = false;
    }
    return std::move(e.out);
}

PhiSlice phi_slice(const Word& w, const Dyadic& x, const Dyadic& target,
                   const Dyadic& radius, const Tolerance& tol) {
    if (radius.sign() <= 0) throw error("phi_slice: radius must be positive");
    LowerBeta lb = lower_beta(w, x, tol);
    Enclosure up = upper_beta(w, x, tol);  // throws not_in_omega on empty cylinders
    Enclosure lo_edge = lb.is_one ? Enclosure(Dyadic(1)) : lb.beta;

    PhiSlice s;
    Dyadic lo_pt = lo_edge.hi;
    Dyadic hi_pt = up.lo;
    if (!(lo_pt < hi_pt)) {
        s.empty = true;
        s.lo = lo_edge;
        s.hi = up;
        s.length = Enclosure(Dyadic(0));
        return s;
    }

    Dyadic t1 = target - radius;
    Dyadic t2 = target + radius;
    Dyadic f_lo = eval_fw(w, x, lo_pt);
    Dyadic f_hi = eval_fw(w, x, hi_pt);
    if (f_hi <= t1 || f_lo >= t2) {
        s.empty = true;
        s.lo = s.hi = (f_hi <= t1 ? up : lo_edge);
        s.length = Enclosure(Dyadic(0));
        return s;
    }

    // f_w is strictly increasing from the lower endpoint on, so both slice
    // ends are single crossings inside [lo_pt, hi_pt]
    auto g = [&](const Dyadic& b) { return eval_fw(w, x, b); };
    if (f_lo >= t1) {
        s.lo = lo_edge;
        s.clipped_left = true;
    } else {
        s.lo = solve_increasing(g, lo_pt, hi_pt, t1, tol);
    }
    if (f_hi <= t2) {
        s.hi = up;
        s.clipped_right = true;
    } else {
        s.hi = solve_increasing(g, lo_pt, hi_pt, t2, tol);
    }
    Dyadic len_lo = s.hi.lo - s.lo.hi;
    if (len_lo.sign() < 0) len_lo = Dyadic(0);
    Dyadic len_hi = s.hi.hi - s.lo.lo;
    if (len_hi.sign() < 0) len_hi = Dyadic(0);
    s.length = Enclosure(len_lo, len_hi);
    s.empty = len_hi.is_zero();
    return s;
}

StructuralReport structural_checks(const Dyadic& x, size_t n,
                                   const Dyadic& wlo, const Dyadic& whi,
                                   const Tolerance& tol, std::uint64_t cap) {
    ParamWindowResult res = enumerate_param_window(x, n, wlo, whi, tol, cap);
    StructuralReport rep;
    rep.cylinders = res.cylinders.size();
    Dyadic q2 = Dyadic(2 * static_cast<long>(n) * static_cast<long>(n));
    Word zeros16;
    zeros16.digits.assign(16, 0);

    for (const ParamCylinder& c : res.cylinders) {
        Dyadic inner = c.hi.lo - c.lo.hi;
        if (inner.sign() < 0) inner = Dyadic(0);
        Dyadic outer = c.hi.hi - c.lo.lo;
        if (outer.sign() < 0) outer = Dyadic(0);

        // |I(w)| <= x^-1 * sup^(1-n); flag only when certainly violated
        rep.length_upper.checked++;
        if (inner * x * Dyadic::pow(c.hi.lo, n - 1) > Dyadic(1))
            rep.length_upper.violations++;

        if (c.full) {
            // full cylinders: |I(w)| >= (lower - 1)^2 * sup^-(n+1)
            rep.full_length_lower.checked++;
            Dyadic gap = c.lo.lo - Dyadic(1);
            if (gap.sign() < 0) gap = Dyadic(0);
            if (outer * Dyadic::pow(c.hi.hi, n + 1) < gap * gap)
                rep.full_length_lower.violations++;
        }

        // expansion just above the lower endpoint continues with zeros
        rep.prefix_at_lower.checked++;
        {
            Word expect = concat(c.w, zeros16);
            Tolerance t = tol;
            bool hit = false;
            for (;;) {
                Dyadic probe;
                try {
                    LowerBeta lb = lower_beta(c.w, x, t);
                    probe = (lb.is_one ? Dyadic(1) : lb.beta.hi) + t.eps();
                } catch (const error&) {
                    break;
                }
                if (expand(x, probe, n + 16).digits == expect) {
                    hit = true;
                    break;
                }
                try {
                    t = t.escalated();
                } catch (const tolerance_unreachable&) {
                    break;
                }
            }
            if (!hit) rep.prefix_at_lower.violations++;
        }

        // w stays admissible at every base above its lower endpoint
        {
            std::vector<Dyadic> samples;
            samples.push_back(c.lo.hi + Dyadic(1, -20));
            if (c.hi.lo > c.lo.hi) samples.push_back((c.lo.hi + c.hi.lo).mul_pow2(-1));
            samples.push_back(c.hi.hi + Dyadic(1));
            for (const Dyadic& b : samples) {
                rep.admissible_above.checked++;
                if (!is_admissible(c.w, b)) rep.admissible_above.violations++;
            }
        }

        // appending an always-full block keeps a full cylinder full
        if (c.full) {
            rep.full_extension.checked++;
            bool ok = true;
            try {
                Word w0 = c.w;
                w0.digits.push_back(0);
                if (!is_full_param(w0, x, tol)) ok = false;
                bigint j = (c.lo.lo - Dyadic(1)).floor();
                if (ok && j >= 1) {
                    Word wj = c.w;
                    wj.digits.push_back(static_cast<Digit>(j.convert_to<unsigned long long>()));
                    if (!is_full_param(wj, x, tol)) ok = false;
                }
            } catch (const error&) {
                ok = false;
            }
            if (!ok) rep.full_extension.violations++;
        }

        // informational: premise and conclusion of the sup/inf ratio bounds
        if (!c.lower_is_one && c.lo.lo > Dyadic(1)) {
            bool premise = x * Dyadic::pow(c.lo.lo, n) >= q2 && q2 > c.hi.hi &&
                           q2 * (c.lo.lo - Dyadic(1)) > Dyadic(1);
            if (premise) {
                rep.tail_premise_count++;
                rep.ratio_power.checked++;
                if (!(Dyadic::pow(c.hi.hi, n + 1) < Dyadic(3) * Dyadic::pow(c.lo.lo, n + 1)))
                    rep.ratio_power.violations++;
                rep.ratio_square.checked++;
                if (!(c.hi.hi < c.lo.lo * c.lo.lo)) rep.ratio_square.violations++;
            }
        }
    }

    rep.ok = rep.length_upper.violations == 0 && rep.full_length_lower.violations == 0 &&
             rep.prefix_at_lower.violations == 0 && rep.admissible_above.violations == 0 &&
             rep.full_extension.violations == 0;
    return rep;
}

}  // namespace betalab
