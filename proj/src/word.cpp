#include "rtm/word.hpp"

#include <algorithm>
#include <ostream>

#include "rtm/errors.hpp"

namespace rtm {

namespace {

void check_binary(std::span<const std::uint8_t> bits) {
    for (auto b : bits)
        if (b > 1) throw ParameterError("word symbols must be 0 or 1");
}

std::string range_message(std::size_t i1, std::size_t i2, std::size_t n) {
    return "range [" + std::to_string(i1) + ", " + std::to_string(i2) +
           "] outside word of length " + std::to_string(n);
}

}  // namespace

Word::Word(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) { check_binary(bits_); }

Word::Word(std::initializer_list<int> bits) {
    bits_.reserve(bits.size());
    for (int b : bits) {
        if (b != 0 && b != 1) throw ParameterError("word symbols must be 0 or 1");
        bits_.push_back(static_cast<std::uint8_t>(b));
    }
}

Word Word::from_string(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char ch : text) {
        if (ch != '0' && ch != '1')
            throw ParseError("word text must contain only '0' and '1', got '" + std::string(text) + "'");
        bits.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    Word w;
    w.bits_ = std::move(bits);
    return w;
}

Word Word::from_integer(std::uint64_t value, std::size_t n) {
    if (n > 64) throw ParameterError("from_integer supports at most 64 bits");
    std::vector<std::uint8_t> bits(n);
    for (std::size_t k = 0; k < n; ++k) bits[n - 1 - k] = static_cast<std::uint8_t>((value >> k) & 1U);
    Word w;
    w.bits_ = std::move(bits);
    return w;
}

std::uint8_t Word::at(std::size_t pos) const {
    if (pos < 1 || pos > bits_.size())
        throw IndexError("position " + std::to_string(pos) + " outside word of length " +
                         std::to_string(bits_.size()));
    return bits_[pos - 1];
}

std::string Word::to_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t k = 0; k < bits_.size(); ++k)
        if (bits_[k]) s[k] = '1';
    return s;
}

std::size_t Word::weight() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

Word& Word::operator+=(const Word& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Word& w) { return os << w.to_string(); }

Word subword(const Word& u, std::size_t i1, std::size_t i2) {
    if (i1 < 1 || i1 > i2 || i2 > u.size()) throw IndexError(range_message(i1, i2, u.size()));
    auto bits = u.bits();
    return Word(std::vector<std::uint8_t>(bits.begin() + static_cast<std::ptrdiff_t>(i1 - 1),
                                          bits.begin() + static_cast<std::ptrdiff_t>(i2)));
}

Word suffix_from(const Word& u, std::size_t i) {
    if (i < 1 || i > u.size() + 1) throw IndexError(range_message(i, u.size(), u.size()));
    auto bits = u.bits();
    return Word(std::vector<std::uint8_t>(bits.begin() + static_cast<std::ptrdiff_t>(i - 1), bits.end()));
}

Word prefix(const Word& u, std::size_t k) {
    if (k > u.size()) throw IndexError(range_message(1, k, u.size()));
    auto bits = u.bits();
    return Word(std::vector<std::uint8_t>(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(k)));
}

std::size_t longest_periodic(const Word& u, std::size_t ell) {
    const std::size_t n = u.size();
    if (ell < 1 || ell > n)
        throw ParameterError("period " + std::to_string(ell) + " invalid for word of length " + std::to_string(n));
    // A window with period ell is ell free symbols followed by a zero run of
    // the period-check vector.
    auto bits = u.bits();
    std::size_t best = 0, run = 0;
    for (std::size_t k = 0; k + ell < n; ++k) {
        run = (bits[k] == bits[k + ell]) ? run + 1 : 0;
        best = std::max(best, run);
    }
    return best + ell;
}

std::size_t longest_run(const Word& u) { return u.empty() ? 0 : longest_periodic(u, 1); }

std::size_t longest_zero_run(const Word& u) {
    std::size_t best = 0, run = 0;
    for (auto b : u.bits()) {
        run = b == 0 ? run + 1 : 0;
        best = std::max(best, run);
    }
    return best;
}

Word delete_bits(const Word& u, std::span<const std::size_t> positions) {
    std::vector<bool> drop(u.size(), false);
    for (auto p : positions) {
        if (p < 1 || p > u.size())
            throw ParameterError("deletion position " + std::to_string(p) + " outside word of length " +
                                 std::to_string(u.size()));
        if (drop[p - 1]) throw ParameterError("duplicate deletion position " + std::to_string(p));
        drop[p - 1] = true;
    }
    std::vector<std::uint8_t> out;
    out.reserve(u.size() - positions.size());
    auto bits = u.bits();
    for (std::size_t k = 0; k < bits.size(); ++k)
        if (!drop[k]) out.push_back(bits[k]);
    return Word(std::move(out));
}

Word delete_burst(const Word& u, std::size_t i, std::size_t b) {
    if (b < 1 || i < 1 || i + b - 1 > u.size())
        throw ParameterError("burst of " + std::to_string(b) + " at " + std::to_string(i) +
                             " exceeds word of length " + std::to_string(u.size()));
    auto bits = u.bits();
    std::vector<std::uint8_t> out(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(i - 1));
    out.insert(out.end(), bits.begin() + static_cast<std::ptrdiff_t>(i - 1 + b), bits.end());
    return Word(std::move(out));
}

Word sticky_insert(const Word& u, std::size_t i, std::size_t s) {
    if (i < 1 || i > u.size()) throw ParameterError("sticky position " + std::to_string(i) + " out of range");
    if (s < 1) throw ParameterError("sticky repeat count must be >= 1");
    auto bits = u.bits();
    std::vector<std::uint8_t> out;
    out.reserve(u.size() + s);
    out.insert(out.end(), bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(i));
    out.insert(out.end(), s, bits[i - 1]);
    out.insert(out.end(), bits.begin() + static_cast<std::ptrdiff_t>(i), bits.end());
    return Word(std::move(out));
}

Word period_check(const Word& u, std::size_t b) {
    if (b < 1 || b >= u.size())
        throw ParameterError("period check needs 1 <= b < length, got b=" + std::to_string(b));
    auto bits = u.bits();
    std::vector<std::uint8_t> out(u.size() - b);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = bits[k] ^ bits[k + b];
    return Word(std::move(out));
}

std::optional<std::size_t> leftmost_diff(const Word& u, const Word& v) {
    const std::size_t common = std::min(u.size(), v.size());
    auto a = u.bits();
    auto b = v.bits();
    auto [ia, ib] = std::mismatch(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(common), b.begin());
    if (ia != a.begin() + static_cast<std::ptrdiff_t>(common))
        return static_cast<std::size_t>(ia - a.begin()) + 1;
    if (u.size() != v.size()) return common + 1;
    return std::nullopt;
}

}  // namespace rtm
