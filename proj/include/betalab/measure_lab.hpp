#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "betalab/enclosure.hpp"
#include "betalab/expansion.hpp"
#include "betalab/word.hpp"

namespace betalab {

using Rational = boost::multiprecision::cpp_rational;

// Exact rational from a decimal string ("0.1", "-2.5e-3") or a fraction
// ("29/30"). Decimals parse losslessly, unlike the dyadic reader.
Rational parse_rational(std::string_view text);

// Rate: either a radius sequence phi(n) in (0,1] or an exponent sequence l_n.
//   const:c     phi = c
//   power:c,s   phi = c / n^s
//   geom:c,q    phi = c q^n
//   lin:a       l_n = a n
//   log:b       l_n = b ln n
//   loglin:a,b,c l_n = a n + b ln n + c
//   logbase:d   l_n = log_d n, kept in exact form
enum class RateKind { Constant, Power, Geometric, LogPower };

struct RateSpec {
    RateKind kind = RateKind::Constant;
    Dyadic c = Dyadic(1);   // constant value, power numerator, geometric scale
    long long s_int = 1;    // power exponent when integral
    bool s_is_int = true;
    Dyadic s;               // general power exponent
    Dyadic q;               // geometric ratio, in (0,1)
    Dyadic a, b, c0;        // log-power: l_n = a n + b ln n + c0
    bool exact_logbase = false;
    long long logbase = 0;  // base d >= 2 when exact_logbase

    static RateSpec parse(std::string_view text);
    std::string describe() const;  // canonical round-trip form
};

// Certified value interval of phi(n) (or of exp(-l_n) for log-power rates).
Enclosure rate_enclosure(const RateSpec& r, std::uint64_t n, long long prec);

// Exact strict comparison |diff| < phi(n). Dyadic-representable rates compare
// exactly; transcendental ones are decided through escalating enclosures.
bool rate_hit(const RateSpec& r, const Dyadic& diff, std::uint64_t n);

// Certified partial sum  sum_{n=m}^{N} phi(n); a zero-width enclosure whenever
// every term is exactly dyadic.
Enclosure tail_sum(const RateSpec& phi, std::uint64_t m, std::uint64_t n_hi,
                   long long prec = 64);

// Target sequence x_n: one value or a periodic table, all in [0,1].
struct TargetSpec {
    std::vector<Dyadic> values;

    const Dyadic& at(std::uint64_t n) const { return values[(n - 1) % values.size()]; }
    static TargetSpec parse(std::string_view text);  // comma-separated decimals
    std::string describe() const;
};

// L(x) = a x + b, clamped to [0, 1] where noted. Exact rational coefficients.
struct AffineMap {
    Rational a, b;
};

// Empirical hit statistics over seeded samples: how many samples saw a hit by
// step N (first-hit curve), inside each dyadic block [2^k, 2^(k+1)), and at
// any step >= 2^k (tail). Fractions derive from the integer counts, so the
// curve is byte-stable across worker counts.
struct HitCurve {
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    std::uint64_t nmax = 0;
    std::uint64_t discarded = 0;
    std::vector<std::uint64_t> grid;       // 1, 2, 4, ..., then nmax
    std::vector<std::uint64_t> hit_by;     // samples with first hit <= grid[i]
    std::vector<std::uint64_t> block_hit;  // samples with a hit in [2^k, 2^(k+1))
    std::vector<std::uint64_t> tail_hit;   // samples with a hit at some n >= 2^k

    double fraction_by(size_t i) const;
    double block_fraction(size_t k) const;
    double tail_fraction(size_t k) const;
};

inline constexpr long long kDefaultOrbitCap = 256;

// Counter-based sample stream: the value at (seed, index) never depends on
// how samples are partitioned across workers.
std::uint64_t sample_u64(std::uint64_t seed, std::uint64_t index);

// Beta sampled uniformly (64 fractional bits) in [wlo, whi); orbit of x run
// under the capped-precision proxy; hits are |T^n x - x_n| < phi(n).
HitCurve hit_scan_param(const Dyadic& x, const TargetSpec& targets, const RateSpec& phi,
                        const Dyadic& wlo, const Dyadic& whi,
                        std::uint64_t samples, std::uint64_t nmax, std::uint64_t seed,
                        int workers = 1, long long orbit_cap = kDefaultOrbitCap);

// x sampled uniformly in [0,1) at fixed beta; hits are |T^n x - L(x)| < phi(n)
// with L clamped to [0,1] and rounded once per sample to the orbit precision.
HitCurve recurrence_scan(const Dyadic& beta, const AffineMap& L, const RateSpec& phi,
                         std::uint64_t samples, std::uint64_t nmax, std::uint64_t seed,
                         int workers = 1, long long orbit_cap = kDefaultOrbitCap);

// Convergence threshold of sum beta^(-l_n): exact for the log-linear family
// (a > 0 gives 1; a = 0, b > 0 gives e^(1/b); a = b = 0 diverges for every
// base). Other rate kinds fall back to a partial-sum doubling heuristic and
// are flagged non-rigorous.
struct BetaStar {
    bool infinite = false;
    bool rigorous = true;
    Enclosure value;        // meaningful when !infinite
    double heuristic = 0;   // the non-rigorous estimate when !rigorous
};

BetaStar beta_star(const RateSpec& l, long long prec = 96);

// Slice of the order-n base-beta cylinder of w where the orbit lands within
// phi of L(x):  {x in J(w) : |beta^n x - S - L(x)| < phi}. The defining
// equation is affine with exact rational roots; endpoints are exact rationals
// for full cylinders and certified enclosures otherwise.
struct RecurrenceSlice {
    size_t n = 0;
    Rational slope;            // beta^n - a, exact
    bool slope_in_window = false;  // slope in (2/3 beta^n, 4/3 beta^n)
    bool full = false;
    bool exact = false;        // endpoints exact (full cylinder)
    Rational lo_exact, hi_exact, length_exact;  // valid when exact
    Enclosure lo, hi, length;  // always valid, outward
    bool empty = false;
    bool upper_ok = false;     // length <= 3 phi / beta^n
    bool lower_checked = false;
    bool lower_ok = false;     // length >= (phi/4) / beta^n, full cylinders
};

RecurrenceSlice recurrence_slice(const Word& w, const Dyadic& beta, const AffineMap& L,
                                 const Rational& phin, const Tolerance& tol = {});

}  // namespace betalab
