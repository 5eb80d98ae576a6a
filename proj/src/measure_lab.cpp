#include "betalab/measure_lab.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <thread>
#include <utility>

#include "betalab/shift_cylinders.hpp"

namespace betalab {

namespace {

bigint pow10(long long k) {
    bigint r = 1;
    for (long long i = 0; i < k; ++i) r *= 10;
    return r;
}

Rational parse_decimal(std::string_view t) {
    size_t i = 0;
    bool neg = false;
    if (i < t.size() && (t[i] == '+' || t[i] == '-')) neg = t[i++] == '-';
    bigint digits = 0;
    long long frac = 0;
    bool any = false, dot = false;
    for (; i < t.size(); ++i) {
        char ch = t[i];
        if (ch == '.') {
            if (dot) throw parse_error("bad number '" + std::string(t) + "'");
            dot = true;
            continue;
        }
        if (ch == 'e' || ch == 'E') break;
        if (ch < '0' || ch > '9') throw parse_error("bad number '" + std::string(t) + "'");
        digits = digits * 10 + (ch - '0');
        if (dot) ++frac;
        any = true;
    }
    long long exp10 = 0;
    if (i < t.size()) {
        try {
            size_t used = 0;
            exp10 = std::stoll(std::string(t.substr(i + 1)), &used);
            if (used != t.size() - i - 1) throw parse_error("");
        } catch (...) {
            throw parse_error("bad exponent in '" + std::string(t) + "'");
        }
    }
    if (!any) throw parse_error("bad number '" + std::string(t) + "'");
    Rational r(digits);
    long long p = exp10 - frac;
    if (p > 0)
        r *= pow10(p);
    else if (p < 0)
        r /= pow10(-p);
    return neg ? Rational(-r) : r;
}

Rational to_rational(const Dyadic& d) {
    if (d.exponent() >= 0) return Rational(d.mantissa() << d.exponent());
    return Rational(d.mantissa(), bigint(1) << -d.exponent());
}

bigint rational_floor(const Rational& r) {
    bigint q = numerator(r) / denominator(r);
    if (numerator(r) < 0 && q * denominator(r) != numerator(r)) --q;
    return q;
}

Dyadic rat_to_dyadic(const Rational& r, long long frac_bits, Rounding mode) {
    Rational scaled = r * Rational(bigint(1) << frac_bits);
    bigint fl = rational_floor(scaled);
    Rational rem = scaled - Rational(fl);
    switch (mode) {
        case Rounding::Down:
            break;
        case Rounding::Up:
            if (rem != 0) ++fl;
            break;
        case Rounding::Nearest: {
            Rational twice = 2 * rem;
            if (twice > 1 || (twice == 1 && (fl & 1) != 0)) ++fl;
            break;
        }
    }
    return Dyadic(fl, -frac_bits);
}

Enclosure rat_enclosure(const Rational& r, long long frac_bits) {
    return Enclosure(rat_to_dyadic(r, frac_bits, Rounding::Down),
                     rat_to_dyadic(r, frac_bits, Rounding::Up));
}

unsigned mant_bits(const Dyadic& d) {
    if (d.is_zero()) return 0;
    bigint a = boost::multiprecision::abs(d.mantissa());
    return boost::multiprecision::msb(a) + 1;
}

Enclosure round_out(const Enclosure& e, long long prec) {
    return Enclosure(e.lo.round_to(prec, Rounding::Down), e.hi.round_to(prec, Rounding::Up));
}

Enclosure negate(const Enclosure& e) { return Enclosure(-e.hi, -e.lo); }

// q^n with outward rounding at prec bits; used when the exact power would blow
// past a few thousand mantissa bits.
Enclosure geom_pow(const Dyadic& q, std::uint64_t n, long long prec) {
    Enclosure acc{Dyadic(1)};
    Enclosure base{q};
    while (n) {
        if (n & 1) acc = round_out(imul(acc, base), prec);
        base = round_out(imul(base, base), prec);
        n >>= 1;
    }
    return acc;
}

// l_n = a n + b ln n + c0, or ln n / ln d in the exact-base form.
Enclosure exponent_value(const RateSpec& r, std::uint64_t n, long long prec) {
    Dyadic nd(bigint(n), 0);
    if (r.exact_logbase) {
        if (n == 1) return Enclosure(Dyadic(0));
        return idiv(ln_enclosure(nd, prec + 8), ln_enclosure(Dyadic(r.logbase), prec + 8), prec);
    }
    Enclosure acc{r.a * nd + r.c0};
    if (!r.b.is_zero() && n > 1) acc = iadd(acc, imul(Enclosure(r.b), ln_enclosure(nd, prec)));
    return acc;
}

bool geom_exact_cheap(const RateSpec& r, std::uint64_t n) {
    return (std::uint64_t)mant_bits(r.q) * n <= 4096;
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t comma = s.find(',', start);
        if (comma == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            return out;
        }
        out.emplace_back(s.substr(start, comma - start));
        start = comma + 1;
    }
}

}  // namespace

Rational parse_rational(std::string_view text) {
    size_t slash = text.find('/');
    if (slash == std::string_view::npos) return parse_decimal(text);
    Rational num = parse_decimal(text.substr(0, slash));
    Rational den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw parse_error("zero denominator in '" + std::string(text) + "'");
    return num / den;
}

RateSpec RateSpec::parse(std::string_view text) {
    size_t colon = text.find(':');
    if (colon == std::string_view::npos)
        throw parse_error("rate: expected kind:args, got '" + std::string(text) + "'");
    std::string kind(text.substr(0, colon));
    std::vector<std::string> args = split_list(text.substr(colon + 1));
    auto need = [&](size_t k) {
        if (args.size() != k)
            throw parse_error("rate " + kind + ": expected " + std::to_string(k) + " argument(s)");
    };
    RateSpec r;
    if (kind == "const") {
        need(1);
        r.kind = RateKind::Constant;
        r.c = to_dyadic(args[0]);
        if (!(r.c > Dyadic(0))) throw parse_error("rate const: value must be positive");
    } else if (kind == "power") {
        need(2);
        r.kind = RateKind::Power;
        r.c = to_dyadic(args[0]);
        r.s = to_dyadic(args[1]);
        if (!(r.c > Dyadic(0))) throw parse_error("rate power: numerator must be positive");
        if (r.s.sign() < 0) throw parse_error("rate power: exponent must be nonnegative");
        r.s_is_int = r.s.is_integer() && r.s <= Dyadic(60);
        if (r.s_is_int) r.s_int = (long long)r.s.floor();
    } else if (kind == "geom") {
        need(2);
        r.kind = RateKind::Geometric;
        r.c = to_dyadic(args[0]);
        r.q = to_dyadic(args[1]);
        if (!(r.c > Dyadic(0))) throw parse_error("rate geom: scale must be positive");
        if (!(r.q > Dyadic(0) && r.q < Dyadic(1)))
            throw parse_error("rate geom: ratio must lie in (0,1)");
    } else if (kind == "lin" || kind == "log" || kind == "loglin") {
        r.kind = RateKind::LogPower;
        if (kind == "lin") {
            need(1);
            r.a = to_dyadic(args[0]);
        } else if (kind == "log") {
            need(1);
            r.b = to_dyadic(args[0]);
        } else {
            need(3);
            r.a = to_dyadic(args[0]);
            r.b = to_dyadic(args[1]);
            r.c0 = to_dyadic(args[2]);
        }
        if (r.a.sign() < 0 || r.b.sign() < 0 || r.c0.sign() < 0)
            throw parse_error("rate " + kind + ": coefficients must be nonnegative");
    } else if (kind == "logbase") {
        need(1);
        r.kind = RateKind::LogPower;
        Dyadic d = to_dyadic(args[0]);
        if (!d.is_integer() || d < Dyadic(2) || d > Dyadic(bigint(1) << 30, 0))
            throw parse_error("rate logbase: base must be an integer >= 2");
        r.exact_logbase = true;
        r.logbase = (long long)d.floor();
    } else {
        throw parse_error("unknown rate kind '" + kind + "'");
    }
    return r;
}

std::string RateSpec::describe() const {
    switch (kind) {
        case RateKind::Constant:
            return "const:" + c.to_decimal();
        case RateKind::Power:
            return "power:" + c.to_decimal() + "," +
                   (s_is_int ? std::to_string(s_int) : s.to_decimal());
        case RateKind::Geometric:
            return "geom:" + c.to_decimal() + "," + q.to_decimal();
        case RateKind::LogPower:
            if (exact_logbase) return "logbase:" + std::to_string(logbase);
            if (b.is_zero() && c0.is_zero()) return "lin:" + a.to_decimal();
            if (a.is_zero() && c0.is_zero()) return "log:" + b.to_decimal();
            return "loglin:" + a.to_decimal() + "," + b.to_decimal() + "," + c0.to_decimal();
    }
    throw error("rate: bad kind");
}

Enclosure rate_enclosure(const RateSpec& r, std::uint64_t n, long long prec) {
    if (n == 0) throw index_out_of_range("rate: n starts at 1");
    switch (r.kind) {
        case RateKind::Constant:
            return Enclosure(r.c);
        case RateKind::Power: {
            Dyadic nd(bigint(n), 0);
            if (r.s_is_int)
                return idiv(Enclosure(r.c), Enclosure(Dyadic::pow(nd, r.s_int)), prec);
            if (n == 1) return Enclosure(r.c);
            Enclosure e = exp_enclosure(negate(imul(Enclosure(r.s), ln_enclosure(nd, prec + 8))), prec);
            return imul(Enclosure(r.c), e);
        }
        case RateKind::Geometric: {
            if (geom_exact_cheap(r, n)) return Enclosure(r.c * Dyadic::pow(r.q, n));
            return imul(Enclosure(r.c), geom_pow(r.q, n, prec + 16));
        }
        case RateKind::LogPower: {
            Enclosure l = exponent_value(r, n, prec + 8);
            if (l.is_point() && l.lo.is_zero()) return Enclosure(Dyadic(1));
            return exp_enclosure(negate(l), prec);
        }
    }
    throw error("rate: bad kind");
}

bool rate_hit(const RateSpec& r, const Dyadic& diff, std::uint64_t n) {
    switch (r.kind) {
        case RateKind::Constant:
            return diff < r.c;
        case RateKind::Power:
            if (r.s_is_int) return diff * Dyadic::pow(Dyadic(bigint(n), 0), r.s_int) < r.c;
            break;
        case RateKind::Geometric:
            if (geom_exact_cheap(r, n)) return diff < r.c * Dyadic::pow(r.q, n);
            break;
        case RateKind::LogPower:
            if (!r.exact_logbase && r.a.is_zero() && r.b.is_zero() && r.c0.is_zero())
                return diff < Dyadic(1);
            if (r.exact_logbase && n == 1) return diff < Dyadic(1);
            break;
    }
    // transcendental radius: the exact value is irrational, so a fixed diff
    // separates from it at some finite precision
    for (long long p = 96; p <= (1 << 15); p *= 2) {
        Enclosure e = rate_enclosure(r, n, p);
        if (diff < e.lo) return true;
        if (diff >= e.hi) return false;
    }
    throw tolerance_unreachable("rate: hit test undecided at the precision ceiling");
}

Enclosure tail_sum(const RateSpec& phi, std::uint64_t m, std::uint64_t n_hi, long long prec) {
    if (m == 0 || m > n_hi) throw index_out_of_range("tail_sum: need 1 <= m <= N");
    long long p = prec + std::bit_width(n_hi - m + 1) + 4;
    Enclosure acc{Dyadic(0)};
    for (std::uint64_t n = m; n <= n_hi; ++n) acc = iadd(acc, rate_enclosure(phi, n, p));
    return acc;
}

TargetSpec TargetSpec::parse(std::string_view text) {
    TargetSpec t;
    for (const std::string& part : split_list(text)) {
        Dyadic v = to_dyadic(part);
        if (v.sign() < 0 || v > Dyadic(1))
            throw parse_error("target: values must lie in [0,1]");
        t.values.push_back(std::move(v));
    }
    return t;
}

std::string TargetSpec::describe() const {
    std::string out;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += values[i].to_decimal();
    }
    return out;
}

double HitCurve::fraction_by(size_t i) const {
    return samples ? (double)hit_by.at(i) / (double)samples : 0.0;
}
double HitCurve::block_fraction(size_t k) const {
    return samples ? (double)block_hit.at(k) / (double)samples : 0.0;
}
double HitCurve::tail_fraction(size_t k) const {
    return samples ? (double)tail_hit.at(k) / (double)samples : 0.0;
}

std::uint64_t sample_u64(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

namespace {

struct SampleOutcome {
    std::uint64_t first = 0;  // 0 = never hit
    std::uint64_t mask = 0;   // bit k: hit somewhere in [2^k, 2^(k+1))
    bool discarded = false;
};

// One seeded sample: run the capped orbit nmax steps and record hits against
// either a per-step target table or a fixed per-sample target.
SampleOutcome orbit_sample(const Dyadic& x0, const Dyadic& beta, std::uint64_t nmax,
                           const RateSpec& phi, const TargetSpec* table,
                           const Dyadic* fixed, long long cap) {
    SampleOutcome o;
    bool geom_run = phi.kind == RateKind::Geometric && geom_exact_cheap(phi, nmax);
    Dyadic geom_val = phi.c;
    try {
        CappedOrbit orb(x0, beta, cap);
        for (std::uint64_t n = 1; n <= nmax; ++n) {
            orb.step();
            Dyadic diff = (orb.remainder() - (table ? table->at(n) : *fixed)).abs();
            bool hit;
            if (geom_run) {
                geom_val *= phi.q;
                hit = diff < geom_val;
            } else {
                hit = rate_hit(phi, diff, n);
            }
            if (hit) {
                if (!o.first) o.first = n;
                o.mask |= 1ull << (std::bit_width(n) - 1);
            }
        }
    } catch (const ambiguous_digit&) {
        return SampleOutcome{0, 0, true};
    }
    return o;
}

template <typename SampleFn>
HitCurve run_scan(std::uint64_t samples, std::uint64_t nmax, std::uint64_t seed, int workers,
                  SampleFn&& sample_fn) {
    if (samples == 0) throw error("scan: samples must be positive");
    if (nmax == 0) throw error("scan: horizon must be positive");
    HitCurve curve;
    curve.seed = seed;
    curve.samples = samples;
    curve.nmax = nmax;
    for (std::uint64_t g = 1; g < nmax; g <<= 1) curve.grid.push_back(g);
    curve.grid.push_back(nmax);
    size_t blocks = std::bit_width(nmax);
    curve.hit_by.assign(curve.grid.size(), 0);
    curve.block_hit.assign(blocks, 0);
    curve.tail_hit.assign(blocks, 0);

    int w = std::clamp(workers, 1, 256);
    if ((std::uint64_t)w > samples) w = (int)samples;
    std::vector<std::vector<std::uint64_t>> hb(w), bh(w), th(w);
    std::vector<std::uint64_t> disc(w, 0);
    std::vector<std::exception_ptr> errs(w);
    std::uint64_t chunk = (samples + w - 1) / w;

    auto body = [&](int t) {
        try {
            hb[t].assign(curve.grid.size(), 0);
            bh[t].assign(blocks, 0);
            th[t].assign(blocks, 0);
            std::uint64_t lo = (std::uint64_t)t * chunk;
            std::uint64_t hi = std::min<std::uint64_t>(samples, lo + chunk);
            for (std::uint64_t i = lo; i < hi; ++i) {
                SampleOutcome o = sample_fn(i);
                if (o.discarded) {
                    ++disc[t];
                    continue;
                }
                if (o.first)
                    for (size_t j = 0; j < curve.grid.size(); ++j)
                        if (o.first <= curve.grid[j]) ++hb[t][j];
                for (size_t k = 0; k < blocks; ++k) {
                    if ((o.mask >> k) & 1) ++bh[t][k];
                    if (o.mask >> k) ++th[t][k];
                }
            }
        } catch (...) {
            errs[t] = std::current_exception();
        }
    };

    if (w == 1) {
        body(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(w);
        for (int t = 0; t < w; ++t) threads.emplace_back(body, t);
        for (auto& t : threads) t.join();
    }
    for (int t = 0; t < w; ++t)
        if (errs[t]) std::rethrow_exception(errs[t]);

    for (int t = 0; t < w; ++t) {
        curve.discarded += disc[t];
        for (size_t j = 0; j < curve.hit_by.size(); ++j) curve.hit_by[j] += hb[t][j];
        for (size_t k = 0; k < blocks; ++k) {
            curve.block_hit[k] += bh[t][k];
            curve.tail_hit[k] += th[t][k];
        }
    }
    for (size_t j = 1; j < curve.hit_by.size(); ++j)
        if (curve.hit_by[j] < curve.hit_by[j - 1])
            throw error("scan: first-hit counts lost monotonicity");
    if (curve.discarded * 1000 > samples)
        throw cap_exceeded("scan: " + std::to_string(curve.discarded) + "/" +
                           std::to_string(samples) +
                           " samples discarded by the orbit cap (limit 0.1%)");
    return curve;
}

void validate_phi_unit(const RateSpec& phi) {
    bool ok = true;
    switch (phi.kind) {
        case RateKind::Constant:
        case RateKind::Power:
            ok = phi.c <= Dyadic(1);
            break;
        case RateKind::Geometric:
            ok = phi.c * phi.q <= Dyadic(1);
            break;
        case RateKind::LogPower:
            break;  // nonnegative exponent, so phi <= 1 already
    }
    if (!ok) throw error("phi must stay within (0,1]");
}

}  // namespace

HitCurve hit_scan_param(const Dyadic& x, const TargetSpec& targets, const RateSpec& phi,
                        const Dyadic& wlo, const Dyadic& whi,
                        std::uint64_t samples, std::uint64_t nmax, std::uint64_t seed,
                        int workers, long long orbit_cap) {
    if (x.sign() < 0 || x > Dyadic(1)) throw error("scan: x must lie in [0,1]");
    if (!(wlo > Dyadic(1)) || !(whi > wlo)) throw error("scan: window must satisfy 1 < lo < hi");
    if (targets.values.empty()) throw error("scan: target table is empty");
    validate_phi_unit(phi);
    Dyadic span = whi - wlo;
    return run_scan(samples, nmax, seed, workers, [&](std::uint64_t i) {
        Dyadic beta = wlo + span * Dyadic(bigint(sample_u64(seed, i)), -64);
        return orbit_sample(x, beta, nmax, phi, &targets, nullptr, orbit_cap);
    });
}

HitCurve recurrence_scan(const Dyadic& beta, const AffineMap& L, const RateSpec& phi,
                         std::uint64_t samples, std::uint64_t nmax, std::uint64_t seed,
                         int workers, long long orbit_cap) {
    if (!(beta > Dyadic(1))) throw error("scan: beta must exceed 1");
    validate_phi_unit(phi);
    return run_scan(samples, nmax, seed, workers, [&](std::uint64_t i) {
        Dyadic x(bigint(sample_u64(seed, i)), -64);
        Rational t = L.a * to_rational(x) + L.b;
        if (t < 0) t = 0;
        if (t > 1) t = 1;
        Dyadic target = rat_to_dyadic(t, orbit_cap, Rounding::Nearest);
        return orbit_sample(x, beta, nmax, phi, nullptr, &target, orbit_cap);
    });
}

BetaStar beta_star(const RateSpec& l, long long prec) {
    BetaStar out;
    if (l.kind == RateKind::LogPower) {
        if (l.exact_logbase) {
            // l_n = ln n / ln d, so the threshold is e^(ln d) = d on the nose
            out.value = Enclosure(Dyadic(l.logbase));
            return out;
        }
        if (l.a.sign() > 0) {
            out.value = Enclosure(Dyadic(1));
            return out;
        }
        if (l.b.sign() > 0) {
            Enclosure inv = idiv(Enclosure(Dyadic(1)), Enclosure(l.b), prec + 16);
            out.value = exp_enclosure(inv, prec);
            return out;
        }
        out.infinite = true;  // constant exponent: the series diverges at every base
        return out;
    }
    if (l.kind == RateKind::Constant) {
        out.infinite = true;
        return out;
    }

    // power/geometric exponent sequences fall outside the closed forms; probe
    // partial sums with a doubling test and report the estimate non-rigorous
    out.rigorous = false;
    auto exponent_at = [&](double n) {
        if (l.kind == RateKind::Power)
            return l.c.to_double() / std::pow(n, l.s_is_int ? (double)l.s_int : l.s.to_double());
        return l.c.to_double() * std::pow(l.q.to_double(), n);
    };
    auto converges = [&](double base) {
        double lb = std::log(base);
        double block = 0;
        for (std::uint64_t n = (1u << 19) + 1; n <= (1u << 20); ++n) {
            block += std::exp(-exponent_at((double)n) * lb);
            if (block >= 1e-6) return false;
        }
        return true;
    };
    double lo = 1.0 + 1e-9, hi = 1e6;
    if (!converges(hi)) {
        out.infinite = true;
        return out;
    }
    if (!converges(lo)) {
        for (int i = 0; i < 80; ++i) {
            double mid = 0.5 * (lo + hi);
            (converges(mid) ? hi : lo) = mid;
        }
    } else {
        hi = lo;
    }
    out.heuristic = hi;
    double pad = std::max(1e-9, hi * 1e-9);
    auto approx = [](double v) {
        return Dyadic(bigint((long long)std::llround(std::ldexp(v, 32))), -32);
    };
    out.value = Enclosure(approx(std::max(1.0, hi - pad)), approx(hi + pad));
    return out;
}

RecurrenceSlice recurrence_slice(const Word& w, const Dyadic& beta, const AffineMap& L,
                                 const Rational& phin, const Tolerance& tol) {
    if (w.digits.empty()) throw error("slice: word must be nonempty");
    if (!(beta > Dyadic(1))) throw error("slice: beta must exceed 1");
    if (!(phin > 0)) throw error("slice: phi must be positive");
    if (!is_admissible(w, beta)) throw not_in_omega("slice: word is not admissible at this base");

    RecurrenceSlice out;
    out.n = w.digits.size();
    Dyadic bn = Dyadic::pow(beta, out.n);
    Rational bn_r = to_rational(bn);
    Rational kappa = boost::multiprecision::abs(L.a);
    if (!(bn_r > 3 * kappa))
        throw slope_too_small("slice: beta^n <= 3|a|; the defining map is not steep enough");
    out.slope = bn_r - L.a;
    out.slope_in_window = 3 * out.slope > 2 * bn_r && 3 * out.slope < 4 * bn_r;

    Dyadic scaled(0);
    for (Digit d : w.digits) scaled = scaled * beta + Dyadic((long)d);
    Rational s_r = to_rational(scaled);
    Rational cyl_lo = s_r / bn_r;
    out.full = is_full_word(w, beta);

    Rational cyl_hi;           // exact right endpoint, full case
    Enclosure cyl_hi_enc;      // certified bracket otherwise
    if (out.full) {
        cyl_hi = cyl_lo + 1 / bn_r;
        cyl_hi_enc = rat_enclosure(cyl_hi, tol.bits);
    } else {
        // right endpoint = least x whose greedy prefix exceeds w; the prefix
        // is monotone in x, so a predicate bisection brackets it
        auto not_past = [&](const Dyadic& xx) {
            return compare_words(expand(xx, beta, out.n).digits, w) != Ord::Greater;
        };
        long long bits = std::max<long long>(tol.bits, 4 * (long long)out.n + 64);
        Dyadic inside = rat_to_dyadic(cyl_lo, bits, Rounding::Up);
        while (!not_past(inside)) {
            bits *= 2;
            if (bits > tol.max_bits) throw tolerance_unreachable("slice: cylinder too thin to enter");
            inside = rat_to_dyadic(cyl_lo, bits, Rounding::Up);
        }
        if (not_past(Dyadic(1)))
            cyl_hi_enc = Enclosure(Dyadic(1));
        else
            cyl_hi_enc = bisect_predicate(not_past, inside, Dyadic(1), tol);
    }

    // the clipped affine map must be genuinely affine across the cylinder
    Rational hi_ref = out.full ? cyl_hi : to_rational(cyl_hi_enc.hi);
    for (const Rational& xx : {cyl_lo, hi_ref}) {
        Rational v = L.a * xx + L.b;
        if (v < 0 || v > 1)
            throw error("slice: a*x+b leaves [0,1] on the cylinder, where the clip bends it");
    }

    // |beta^n x - S - (a x + b)| < phi  <=>  x between the two affine roots
    Rational x_minus = (s_r + L.b - phin) / out.slope;
    Rational x_plus = (s_r + L.b + phin) / out.slope;

    if (out.full) {
        Rational lo_v = std::max(cyl_lo, x_minus);
        Rational hi_v = std::min(cyl_hi, x_plus);
        if (hi_v < lo_v) hi_v = lo_v;
        out.exact = true;
        out.lo_exact = lo_v;
        out.hi_exact = hi_v;
        out.length_exact = hi_v - lo_v;
        out.empty = out.length_exact == 0;
        out.lo = rat_enclosure(lo_v, tol.bits);
        out.hi = rat_enclosure(hi_v, tol.bits);
        out.length = rat_enclosure(out.length_exact, tol.bits);
        out.upper_ok = out.length_exact * bn_r <= 3 * phin;
        out.lower_checked = true;
        out.lower_ok = 4 * out.length_exact * bn_r >= phin;
    } else {
        Rational lo_v = std::max(cyl_lo, x_minus);
        Rational hi_lo = std::min(to_rational(cyl_hi_enc.lo), x_plus);
        Rational hi_hi = std::min(to_rational(cyl_hi_enc.hi), x_plus);
        Rational len_lo = std::max(Rational(0), Rational(hi_lo - lo_v));
        Rational len_hi = std::max(Rational(0), Rational(hi_hi - lo_v));
        if (hi_lo < lo_v) hi_lo = lo_v;
        if (hi_hi < lo_v) hi_hi = lo_v;
        out.lo = rat_enclosure(lo_v, tol.bits);
        out.hi = Enclosure(rat_to_dyadic(hi_lo, tol.bits, Rounding::Down),
                           rat_to_dyadic(hi_hi, tol.bits, Rounding::Up));
        out.length = Enclosure(rat_to_dyadic(len_lo, tol.bits, Rounding::Down),
                               rat_to_dyadic(len_hi, tol.bits, Rounding::Up));
        out.empty = len_hi == 0;
        out.upper_ok = len_hi * bn_r <= 3 * phin;
        out.lower_checked = false;
    }
    return out;
}

}  // namespace betalab
