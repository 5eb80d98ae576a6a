#include "betalab/word.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace betalab {

bool Word::all_zero() const {
    return std::all_of(digits.begin(), digits.end(), [](Digit d) { return d == 0; });
}

Word shift(const Word& w, size_t i) {
    if (i > w.size()) throw index_out_of_range("shift beyond word length");
    return Word(std::vector<Digit>(w.digits.begin() + static_cast<long>(i), w.digits.end()));
}

Word concat(const Word& a, const Word& b) {
    Word r = a;
    r.digits.insert(r.digits.end(), b.digits.begin(), b.digits.end());
    return r;
}

Word power(const Word& w, size_t k) {
    Word r;
    r.digits.reserve(w.size() * k);
    for (size_t i = 0; i < k; ++i)
        r.digits.insert(r.digits.end(), w.digits.begin(), w.digits.end());
    return r;
}

Word prefix(const Word& w, size_t k) {
    if (k > w.size()) throw index_out_of_range("prefix beyond word length");
    return Word(std::vector<Digit>(w.digits.begin(), w.digits.begin() + static_cast<long>(k)));
}

Word increment_last(const Word& w) {
    if (w.empty()) throw index_out_of_range("increment_last on empty word");
    Word r = w;
    ++r.digits.back();
    return r;
}

Ord compare_words(const Word& a, const Word& b) {
    if (a.size() != b.size())
        throw index_out_of_range("compare_words: length mismatch");
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? Ord::Less : Ord::Greater;
    }
    return Ord::Equal;
}

std::string word_to_string(const Word& w) {
    bool compact = std::all_of(w.digits.begin(), w.digits.end(), [](Digit d) { return d <= 9; });
    std::string out;
    if (compact) {
        for (Digit d : w.digits) out += static_cast<char>('0' + d);
        return out;
    }
    out = "[";
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(w[i]);
    }
    out += ']';
    return out;
}

Word parse_word(std::string_view text) {
    Word w;
    if (!text.empty() && text.front() == '[') {
        if (text.back() != ']') throw parse_error("word: missing ']' in '" + std::string(text) + "'");
        std::string inner(text.substr(1, text.size() - 2));
        if (inner.empty()) return w;
        std::stringstream ss(inner);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            size_t pos = 0;
            unsigned long v = 0;
            try {
                v = std::stoul(tok, &pos);
            } catch (...) {
                throw parse_error("word: bad digit '" + tok + "'");
            }
            if (pos != tok.size()) throw parse_error("word: bad digit '" + tok + "'");
            w.digits.push_back(static_cast<Digit>(v));
        }
        return w;
    }
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw parse_error("word: bad character in '" + std::string(text) + "'");
        w.digits.push_back(static_cast<Digit>(c - '0'));
    }
    return w;
}

DigitStream DigitStream::from_word(Word w) {
    DigitStream s;
    s.prefix_ = std::move(w);
    s.period_ = Word();  // zero tail
    return s;
}

DigitStream DigitStream::eventually_periodic(Word pre, Word period) {
    DigitStream s;
    s.prefix_ = std::move(pre);
    if (period.all_zero()) period = Word();  // normalize: all-zero period is a zero tail
    s.period_ = std::move(period);
    return s;
}

DigitStream DigitStream::partial(Word known_prefix) {
    DigitStream s;
    s.prefix_ = std::move(known_prefix);
    s.period_ = std::nullopt;
    return s;
}

std::optional<Digit> DigitStream::digit(size_t i) const {
    if (i < prefix_.size()) return prefix_[i];
    if (!period_) return std::nullopt;
    if (period_->empty()) return 0;
    return (*period_)[(i - prefix_.size()) % period_->size()];
}

std::string DigitStream::to_string() const {
    std::string out = word_to_string(prefix_);
    if (!period_) return out + "(...)";
    if (period_->empty()) return out + "(0)";
    return out + "(" + word_to_string(*period_) + ")";
}

DigitStream DigitStream::parse(std::string_view text) {
    size_t open = text.find('(');
    if (open == std::string_view::npos)
        return from_word(parse_word(text));
    if (text.back() != ')') throw parse_error("stream: missing ')' in '" + std::string(text) + "'");
    Word pre = parse_word(text.substr(0, open));
    std::string_view tail = text.substr(open + 1, text.size() - open - 2);
    if (tail == "...") return partial(std::move(pre));
    return eventually_periodic(std::move(pre), parse_word(tail));
}

Ord lex_compare(const DigitStream& a, const DigitStream& b, size_t depth) {
    for (size_t i = 0; i < depth; ++i) {
        auto da = a.digit(i);
        auto db = b.digit(i);
        if (!da || !db)
            throw depth_exhausted("lex_compare: operand unresolved at index " + std::to_string(i));
        if (*da != *db) return *da < *db ? Ord::Less : Ord::Greater;
    }
    if (!a.total() || !b.total())
        throw depth_exhausted("lex_compare: streams agree through depth " + std::to_string(depth) +
                              " with unresolved digits beyond");
    return Ord::Equal;
}

}  // namespace betalab
