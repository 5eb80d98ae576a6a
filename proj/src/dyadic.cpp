#include "betalab/dyadic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace betalab {

namespace {

// Floor division of v by 2^k, k >= 0, exact floor semantics for negatives.
bigint shift_floor(const bigint& v, long long k) {
    if (k <= 0) return v << (-k);
    if (v >= 0) return v >> k;
    bigint a = -v;
    bigint mask = (bigint(1) << k) - 1;
    return -((a + mask) >> k);
}

bigint shift_ceil(const bigint& v, long long k) { return -shift_floor(-v, k); }

}  // namespace

void Dyadic::canonicalize() {
    if (m_.is_zero()) {
        e_ = 0;
        return;
    }
    unsigned long tz = boost::multiprecision::lsb(boost::multiprecision::abs(m_));
    if (tz > 0) {
        m_ >>= tz;
        e_ += static_cast<long long>(tz);
    }
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    long long e = std::min(a.e_, b.e_);
    bigint m = (a.m_ << static_cast<unsigned long long>(a.e_ - e)) +
               (b.m_ << static_cast<unsigned long long>(b.e_ - e));
    return Dyadic(std::move(m), e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero() || b.is_zero()) return Dyadic();
    return Dyadic(a.m_ * b.m_, a.e_ + b.e_);
}

int Dyadic::compare(const Dyadic& a, const Dyadic& b) {
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    Dyadic d = a - b;
    return d.sign();
}

bigint Dyadic::floor() const {
    if (e_ >= 0) return m_ << static_cast<unsigned long long>(e_);
    return shift_floor(m_, -e_);
}

bigint Dyadic::ceil() const {
    if (e_ >= 0) return m_ << static_cast<unsigned long long>(e_);
    return shift_ceil(m_, -e_);
}

Dyadic Dyadic::pow(const Dyadic& base, unsigned long long n) {
    Dyadic r(1);
    Dyadic b = base;
    while (n > 0) {
        if (n & 1ULL) r *= b;
        n >>= 1;
        if (n > 0) b *= b;
    }
    return r;
}

Dyadic Dyadic::round_to(long long frac_bits, Rounding mode) const {
    if (is_zero() || -e_ <= frac_bits) return *this;
    long long k = -e_ - frac_bits;  // bits to drop, > 0
    switch (mode) {
        case Rounding::Down:
            return Dyadic(shift_floor(m_, k), -frac_bits);
        case Rounding::Up:
            return Dyadic(shift_ceil(m_, k), -frac_bits);
        case Rounding::Nearest: {
            bigint q = shift_floor(m_, k);
            bigint rem = m_ - (q << static_cast<unsigned long long>(k));
            bigint half = bigint(1) << static_cast<unsigned long long>(k - 1);
            if (rem > half || (rem == half && boost::multiprecision::bit_test(q, 0)))
                ++q;
            return Dyadic(std::move(q), -frac_bits);
        }
    }
    return *this;
}

double Dyadic::to_double() const {
    if (is_zero()) return 0.0;
    // Keep 64 leading bits, then scale.
    long long bl = static_cast<long long>(boost::multiprecision::msb(boost::multiprecision::abs(m_))) + 1;
    long long drop = bl > 64 ? bl - 64 : 0;
    bigint t = m_ >> drop;
    return static_cast<double>(t.convert_to<long double>()) * std::pow(2.0L, static_cast<long double>(e_ + drop));
}

namespace {

bigint pow10(unsigned long long k) {
    bigint r = 1;
    bigint b = 10;
    while (k > 0) {
        if (k & 1ULL) r *= b;
        k >>= 1;
        if (k > 0) b *= b;
    }
    return r;
}

}  // namespace

std::string Dyadic::to_decimal(size_t significant) const {
    if (significant == 0) significant = 1;
    if (is_zero()) return "0";
    bool neg = sign() < 0;
    bigint am = boost::multiprecision::abs(m_);

    // Value = am * 2^e. Produce exact decimal digits when e < 0 and they fit:
    // am * 2^e = am * 5^-e / 10^-e.
    std::string digits;       // decimal digit string, no sign, no point
    long long pt_exp;         // value = 0.digits * 10^pt_exp  (digits normalized, leading nonzero)
    bigint exact;
    if (e_ >= 0) {
        exact = am << static_cast<unsigned long long>(e_);
        digits = exact.str();
        pt_exp = static_cast<long long>(digits.size());
    } else {
        bigint five = 1;
        for (long long i = 0; i < -e_; ++i) five *= 5;
        exact = am * five;
        digits = exact.str();
        pt_exp = static_cast<long long>(digits.size()) + e_;  // shift by 10^e
    }
    // Trim trailing zeros of the exact expansion.
    size_t last = digits.find_last_not_of('0');
    digits.erase(last + 1);

    if (digits.size() > significant) {
        // Round to `significant` digits, half away from zero.
        bool round_up = digits[significant] >= '5';
        digits.erase(significant);
        if (round_up) {
            int i = static_cast<int>(digits.size()) - 1;
            while (i >= 0) {
                if (digits[i] != '9') {
                    ++digits[i];
                    break;
                }
                digits[i] = '0';
                --i;
            }
            if (i < 0) {
                digits.insert(digits.begin(), '1');
                ++pt_exp;
            }
        }
        last = digits.find_last_not_of('0');
        digits.erase(last + 1);
    }

    std::string out;
    if (neg) out += '-';
    if (pt_exp > 0 && pt_exp <= 21 && static_cast<size_t>(pt_exp) >= digits.size()) {
        out += digits;
        out.append(static_cast<size_t>(pt_exp) - digits.size(), '0');
    } else if (pt_exp > 0 && pt_exp <= 21) {
        out += digits.substr(0, static_cast<size_t>(pt_exp));
        out += '.';
        out += digits.substr(static_cast<size_t>(pt_exp));
    } else if (pt_exp <= 0 && pt_exp > -6) {
        out += "0.";
        out.append(static_cast<size_t>(-pt_exp), '0');
        out += digits;
    } else {
        out += digits.substr(0, 1);
        if (digits.size() > 1) {
            out += '.';
            out += digits.substr(1);
        }
        out += 'e';
        long long sci = pt_exp - 1;
        if (sci >= 0) out += '+';
        out += std::to_string(sci);
    }
    return out;
}

Dyadic to_dyadic(std::string_view text, long long bits) {
    if (bits < 0) throw parse_error("to_dyadic: negative bit count");
    size_t i = 0;
    auto fail = [&]() { throw parse_error("to_dyadic: bad decimal literal '" + std::string(text) + "'"); };
    if (text.empty()) fail();
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') {
        neg = text[i] == '-';
        ++i;
    }
    bigint intpart = 0, fracpart = 0;
    long long fracdigits = 0;
    bool any = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        intpart = intpart * 10 + (text[i] - '0');
        ++i;
        any = true;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            fracpart = fracpart * 10 + (text[i] - '0');
            ++fracdigits;
            ++i;
            any = true;
        }
    }
    long long exp10 = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            eneg = text[i] == '-';
            ++i;
        }
        if (i >= text.size()) fail();
        long long ev = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            ev = ev * 10 + (text[i] - '0');
            if (ev > 1000000) fail();
            ++i;
        }
        exp10 = eneg ? -ev : ev;
    }
    if (!any || i != text.size()) fail();

    // value = (intpart*10^fracdigits + fracpart) * 10^(exp10 - fracdigits)
    bigint num = intpart * pow10(static_cast<unsigned long long>(fracdigits)) + fracpart;
    long long p10 = exp10 - fracdigits;
    bigint den = 1;
    if (p10 >= 0)
        num *= pow10(static_cast<unsigned long long>(p10));
    else
        den = pow10(static_cast<unsigned long long>(-p10));

    // Round num/den to nearest multiple of 2^-bits, ties to even.
    bigint scaled = num << static_cast<unsigned long long>(bits);
    bigint q = scaled / den;
    bigint rem = scaled - q * den;
    bigint twice = rem * 2;
    if (twice > den || (twice == den && boost::multiprecision::bit_test(q, 0))) ++q;
    if (neg) q = -q;
    return Dyadic(std::move(q), -bits);
}

Dyadic div_round(const Dyadic& a, const Dyadic& b, long long prec, Rounding mode) {
    if (b.is_zero()) throw error("div_round: division by zero");
    if (a.is_zero()) return Dyadic();
    // a/b * 2^prec = ma * 2^(ea - eb + prec) / mb
    bigint num = a.mantissa();
    bigint den = b.mantissa();
    if (den < 0) {
        den = -den;
        num = -num;
    }
    long long sh = a.exponent() - b.exponent() + prec;
    if (sh >= 0)
        num <<= static_cast<unsigned long long>(sh);
    else
        den <<= static_cast<unsigned long long>(-sh);

    bigint q = num / den;           // truncated toward zero
    bigint rem = num - q * den;     // same sign as num
    switch (mode) {
        case Rounding::Down:
            if (rem < 0) --q;
            break;
        case Rounding::Up:
            if (rem > 0) ++q;
            break;
        case Rounding::Nearest: {
            if (rem < 0) {
                --q;
                rem += den;
            }
            bigint twice = rem * 2;
            if (twice > den || (twice == den && boost::multiprecision::bit_test(q, 0))) ++q;
            break;
        }
    }
    return Dyadic(std::move(q), -prec);
}

}  // namespace betalab
