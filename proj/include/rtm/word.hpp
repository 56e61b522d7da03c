#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rtm {

/// A finite binary word. Public positions are 1-indexed; `bits()` exposes
/// the raw 0-indexed storage for tight loops.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<std::uint8_t> bits);
    Word(std::initializer_list<int> bits);

    /// Parses an ASCII string over {0,1}, position 1 first.
    static Word from_string(std::string_view text);
    /// The n-bit big-endian expansion of `value` (n <= 64).
    static Word from_integer(std::uint64_t value, std::size_t n);

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }

    /// Bit at 1-indexed position `pos`; throws IndexError when out of range.
    std::uint8_t at(std::size_t pos) const;

    std::span<const std::uint8_t> bits() const noexcept { return bits_; }
    std::string to_string() const;

    std::size_t weight() const noexcept;

    Word& operator+=(const Word& other);
    friend Word operator+(Word lhs, const Word& rhs) { return lhs += rhs; }

    friend bool operator==(const Word&, const Word&) = default;
    friend std::strong_ordering operator<=>(const Word&, const Word&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

std::ostream& operator<<(std::ostream& os, const Word& w);

/// u[i1, i2], both ends inclusive.
Word subword(const Word& u, std::size_t i1, std::size_t i2);

/// Suffix u[i, len(u)]; empty when i == len(u) + 1.
Word suffix_from(const Word& u, std::size_t i);

/// Prefix u[1, k]; empty when k == 0.
Word prefix(const Word& u, std::size_t k);

/// Length of the longest subvector with period `ell`. Always >= ell.
std::size_t longest_periodic(const Word& u, std::size_t ell);

/// Length of the longest run of equal symbols (0 for the empty word).
std::size_t longest_run(const Word& u);

std::size_t longest_zero_run(const Word& u);

/// Deletes every listed position. Positions must be distinct and in range.
Word delete_bits(const Word& u, std::span<const std::size_t> positions);

/// Deletes u[i, i+b-1].
Word delete_burst(const Word& u, std::size_t i, std::size_t b);

/// Repeats u_i a further `s` times directly after position i.
Word sticky_insert(const Word& u, std::size_t i, std::size_t s);

/// (u_1 + u_{1+b}, ..., u_{m-b} + u_m) over GF(2).
Word period_check(const Word& u, std::size_t b);

/// Smallest j with u_j != v_j. A strict prefix differs at min(len) + 1.
std::optional<std::size_t> leftmost_diff(const Word& u, const Word& v);

}  // namespace rtm
