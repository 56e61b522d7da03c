#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rtm/word.hpp"

namespace rtm {

using BigInt = boost::multiprecision::cpp_int;

enum class Family { C1, C2, C3, C3_VT };

std::string_view family_name(Family f);

/// Selects one constrained codebook.
///
/// C1(n, t): longest run <= t.
/// C2(n, b, t): longest period-b subvector <= t.
/// C3(n, b, t): longest period-l subvector <= t for every l in [1, b].
/// C3_VT(n, b, t, a): C3 intersected with sum(i * u_i) == a (mod n + 1).
///
/// Text form is `family:n[:b]:t[:a]`, e.g. `C1:9:3`, `C3:64:2:9`, `C3_VT:12:2:5:0`.
struct CodeSpec {
    Family family = Family::C1;
    std::size_t n = 1;
    std::size_t b = 1;
    std::size_t t = 1;
    std::size_t a = 0;

    static CodeSpec c1(std::size_t n, std::size_t t);
    static CodeSpec c2(std::size_t n, std::size_t b, std::size_t t);
    static CodeSpec c3(std::size_t n, std::size_t b, std::size_t t);
    static CodeSpec c3_vt(std::size_t n, std::size_t b, std::size_t t, std::size_t a);

    static CodeSpec parse(std::string_view text);
    std::string to_string() const;

    /// Throws ParameterError unless the family's parameter invariants hold.
    void validate() const;

    /// The periods whose longest periodic subvector is bounded by t.
    std::vector<std::size_t> periods() const;

    friend bool operator==(const CodeSpec&, const CodeSpec&) = default;
};

/// sum(i * u_i) mod (len(u) + 1), positions 1-indexed.
std::size_t vt_syndrome(const Word& u);

bool is_member(const CodeSpec& spec, const Word& u);

/// Exact codebook size.
BigInt count(const CodeSpec& spec);

/// |R(n, t)|: words of length n whose longest zero run is at most t.
BigInt count_zero_run_limited(std::size_t n, std::size_t t);

/// 2^n (1 - n 2^-(t-b)) as a floating value (long double covers n up to ~16000).
long double lower_bound_c3(std::size_t n, std::size_t b, std::size_t t);

/// Exact comparison `value >= 2^n (1 - n 2^-(t-b))` without rounding.
bool meets_lower_bound_c3(const BigInt& value, std::size_t n, std::size_t b, std::size_t t);

double log2(const BigInt& x);

/// n - log2(count(spec)); throws DomainError for an empty code.
double redundancy(const CodeSpec& spec);

enum class Goal { SingleDeletion, Burst, BurstUpTo };

/// Head distance making the code correct the goal: ceil(log2 n) + 1, + b, + b + 1.
std::size_t recommended_t(std::size_t n, std::size_t b, Goal goal);

std::size_t ceil_log2(std::size_t n);

/// (u[1, b], p_b(u)).
std::pair<Word, Word> phi(const Word& u, std::size_t b);

/// Inverse of phi: u_i = prefix_i for i <= b, u_i = u_{i-b} + check_{i-b} after.
Word psi(const Word& prefix, const Word& check, std::size_t b);

}  // namespace rtm
