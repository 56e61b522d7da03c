#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "rtm/constraints.hpp"

namespace rtm {

/// Deterministic automaton accepting exactly the words whose longest
/// period-l subvector is at most t for every l in `periods`.
///
/// A state remembers the last max(periods) symbols and, for each period, the
/// current zero-run length of the period-check vector. Only reachable states
/// are materialised; all of them are accepting, the language is prefix-closed.
class ConstraintAutomaton {
public:
    static constexpr int kReject = -1;

    ConstraintAutomaton(std::vector<std::size_t> periods, std::size_t t);

    std::size_t num_states() const noexcept { return next_.size(); }
    int start() const noexcept { return 0; }
    int next(int state, int bit) const noexcept { return next_[static_cast<std::size_t>(state)][static_cast<std::size_t>(bit)]; }

    bool accepts(const Word& u) const;

private:
    std::vector<std::array<int, 2>> next_;
};

/// Number of length-n words accepted by the automaton. When `vt_residue`
/// is set, only words with sum(i * u_i) == residue (mod n + 1) count.
BigInt count_paths(const ConstraintAutomaton& automaton, std::size_t n, std::optional<std::size_t> vt_residue = {});

/// Enumerative coder over a codebook in lexicographic order.
///
/// Holds a completion table with (n + 1) layers; completions[k][s] is the
/// number of ways to finish a codeword from state s with k symbols left.
/// Immutable after construction.
class Codebook {
public:
    explicit Codebook(CodeSpec spec);

    const CodeSpec& spec() const noexcept { return spec_; }
    const BigInt& size() const noexcept;

    /// The index-th codeword, 0-based. Throws IndexError when out of range.
    Word unrank(const BigInt& index) const;
    /// Inverse of unrank. Throws MembershipError for non-members.
    BigInt rank(const Word& u) const;

private:
    std::size_t slot(int state, std::size_t residue) const noexcept {
        return static_cast<std::size_t>(state) * modulus_ + residue;
    }
    const BigInt& completions(std::size_t remaining, int state, std::size_t residue) const;

    CodeSpec spec_;
    ConstraintAutomaton automaton_;
    std::size_t modulus_ = 1;  // n + 1 for C3_VT, 1 otherwise
    std::vector<std::vector<BigInt>> completions_;
};

}  // namespace rtm
