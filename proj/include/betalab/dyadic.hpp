#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <string_view>

#include "betalab/errors.hpp"

namespace betalab {

using bigint = boost::multiprecision::cpp_int;

enum class Rounding { Down, Up, Nearest };

// Exact binary rational m * 2^e with m odd or zero (e = 0 when m = 0).
// All field operations are exact; nothing here rounds unless asked to.
class Dyadic {
  public:
    Dyadic() : m_(0), e_(0) {}
    Dyadic(long v) : m_(v), e_(0) { canonicalize(); }
    Dyadic(long long v) : m_(v), e_(0) { canonicalize(); }
    Dyadic(unsigned long long v) : m_(v), e_(0) { canonicalize(); }
    Dyadic(int v) : m_(v), e_(0) { canonicalize(); }
    Dyadic(bigint m, long long e) : m_(std::move(m)), e_(e) { canonicalize(); }

    const bigint& mantissa() const { return m_; }
    long long exponent() const { return e_; }

    bool is_zero() const { return m_.is_zero(); }
    int sign() const { return m_.sign(); }
    bool is_integer() const { return e_ >= 0; }

    // Number of fractional bits needed to represent the value exactly.
    long long frac_bits() const { return e_ < 0 ? -e_ : 0; }

    Dyadic operator-() const { return Dyadic(-m_, e_); }
    Dyadic abs() const { return m_ < 0 ? -*this : *this; }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);

    Dyadic& operator+=(const Dyadic& b) { return *this = *this + b; }
    Dyadic& operator-=(const Dyadic& b) { return *this = *this - b; }
    Dyadic& operator*=(const Dyadic& b) { return *this = *this * b; }

    // Exact multiplication by 2^k.
    Dyadic mul_pow2(long long k) const {
        if (is_zero()) return Dyadic();
        return Dyadic(m_, e_ + k);
    }

    static int compare(const Dyadic& a, const Dyadic& b);

    friend bool operator==(const Dyadic& a, const Dyadic& b) { return compare(a, b) == 0; }
    friend bool operator!=(const Dyadic& a, const Dyadic& b) { return compare(a, b) != 0; }
    friend bool operator<(const Dyadic& a, const Dyadic& b) { return compare(a, b) < 0; }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return compare(a, b) <= 0; }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return compare(a, b) > 0; }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return compare(a, b) >= 0; }

    // floor/ceil as exact big integers.
    bigint floor() const;
    bigint ceil() const;

    static Dyadic pow(const Dyadic& base, unsigned long long n);

    // Round to a multiple of 2^-frac_bits. Down/Up are directed (toward -inf / +inf);
    // Nearest breaks ties to even.
    Dyadic round_to(long long frac_bits, Rounding mode) const;

    // Decimal rendering with `significant` digits; exact digits are kept when they fit.
    std::string to_decimal(size_t significant = 30) const;
    double to_double() const;

  private:
    void canonicalize();

    bigint m_;
    long long e_;
};

// Parse a decimal literal ("1.5", "0.75", "2", "1e-3") and round to the nearest
// multiple of 2^-bits (ties to even). Values already on the grid parse exactly.
Dyadic to_dyadic(std::string_view text, long long bits = 64);

// Quotient a/b rounded at 2^-prec in the given direction (b nonzero).
Dyadic div_round(const Dyadic& a, const Dyadic& b, long long prec, Rounding mode);

}  // namespace betalab
