#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "betalab/errors.hpp"

namespace betalab {

using Digit = std::uint32_t;

// Finite digit block of an expansion; order n = digits.size().
struct Word {
    std::vector<Digit> digits;

    Word() = default;
    explicit Word(std::vector<Digit> d) : digits(std::move(d)) {}

    size_t size() const { return digits.size(); }
    bool empty() const { return digits.empty(); }
    Digit operator[](size_t i) const { return digits[i]; }

    Digit at(size_t i) const {
        if (i >= digits.size()) throw index_out_of_range("word index " + std::to_string(i));
        return digits[i];
    }

    bool all_zero() const;

    friend bool operator==(const Word& a, const Word& b) { return a.digits == b.digits; }
    friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
};

enum class Ord { Less, Equal, Greater };

// Word algebra.
Word shift(const Word& w, size_t i);             // drop the first i digits
Word concat(const Word& a, const Word& b);
Word power(const Word& w, size_t k);             // w repeated k times
Word prefix(const Word& w, size_t k);            // first k digits
Word increment_last(const Word& w);              // w1..w(n-1) (wn + 1)

// Lexicographic order of two equal-length words (throws on length mismatch).
Ord compare_words(const Word& a, const Word& b);

// Digit text form: "1011" when every digit is <= 9, "[1,0,12]" otherwise.
std::string word_to_string(const Word& w);
Word parse_word(std::string_view text);

// Infinite digit sequence with a materialized prefix. Digits beyond the prefix
// follow the period when one is present (an empty period means the tail is all
// zeros); with no period at all the stream is partial and digits past the
// prefix are unresolved.
class DigitStream {
  public:
    static DigitStream from_word(Word w);                       // w 0^inf
    static DigitStream eventually_periodic(Word pre, Word period);
    static DigitStream partial(Word known_prefix);              // horizon-limited

    bool total() const { return period_.has_value(); }
    // One past the last resolvable index for a partial stream.
    size_t horizon() const { return prefix_.size(); }

    const Word& prefix_word() const { return prefix_; }
    const std::optional<Word>& period_word() const { return period_; }

    // nullopt when the digit is unresolved (partial stream past its horizon).
    std::optional<Digit> digit(size_t i) const;

    // "preperiod(period)"; zero tails print as "(0)", partial tails as "(...)".
    std::string to_string() const;
    static DigitStream parse(std::string_view text);

  private:
    Word prefix_;
    std::optional<Word> period_;  // engaged: periodic tail (empty = zeros); nullopt: partial
};

// Order of the two sequences decided within `depth` digits. Equal means the
// sequences agree through depth and both are total; if either operand has
// unresolved digits in or just beyond the agreeing range, depth_exhausted is
// thrown instead.
Ord lex_compare(const DigitStream& a, const DigitStream& b, size_t depth);

inline Ord lex_compare(const Word& a, const Word& b, size_t depth) {
    return lex_compare(DigitStream::from_word(a), DigitStream::from_word(b), depth);
}

}  // namespace betalab
