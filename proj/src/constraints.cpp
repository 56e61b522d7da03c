#include "rtm/constraints.hpp"

#include <charconv>
#include <cmath>

#include "rtm/codebook.hpp"
#include "rtm/errors.hpp"

namespace rtm {

namespace {

std::size_t parse_size(std::string_view field, std::string_view whole) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty())
        throw ParseError("bad number '" + std::string(field) + "' in code spec '" + std::string(whole) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

// Compositions of k into parts of size 1..t, for k = 0..n.
BigInt compositions(std::size_t n, std::size_t t) {
    std::vector<BigInt> f(n + 1);
    f[0] = 1;
    BigInt window = 1;  // f[k-1] + ... + f[k-t]
    for (std::size_t k = 1; k <= n; ++k) {
        f[k] = window;
        window += f[k];
        if (k >= t) window -= f[k - t];
    }
    return f[n];
}

}  // namespace

std::string_view family_name(Family f) {
    switch (f) {
        case Family::C1: return "C1";
        case Family::C2: return "C2";
        case Family::C3: return "C3";
        case Family::C3_VT: return "C3_VT";
    }
    return "?";
}

CodeSpec CodeSpec::c1(std::size_t n, std::size_t t) {
    CodeSpec s{Family::C1, n, 1, t, 0};
    s.validate();
    return s;
}

CodeSpec CodeSpec::c2(std::size_t n, std::size_t b, std::size_t t) {
    CodeSpec s{Family::C2, n, b, t, 0};
    s.validate();
    return s;
}

CodeSpec CodeSpec::c3(std::size_t n, std::size_t b, std::size_t t) {
    CodeSpec s{Family::C3, n, b, t, 0};
    s.validate();
    return s;
}

CodeSpec CodeSpec::c3_vt(std::size_t n, std::size_t b, std::size_t t, std::size_t a) {
    CodeSpec s{Family::C3_VT, n, b, t, a};
    s.validate();
    return s;
}

CodeSpec CodeSpec::parse(std::string_view text) {
    auto parts = split(text, ':');
    const auto fam = parts.front();
    CodeSpec s;
    if (fam == "C1") {
        if (parts.size() != 3) throw ParseError("C1 spec is C1:n:t, got '" + std::string(text) + "'");
        s = {Family::C1, parse_size(parts[1], text), 1, parse_size(parts[2], text), 0};
    } else if (fam == "C2" || fam == "C3") {
        if (parts.size() != 4)
            throw ParseError(std::string(fam) + " spec is " + std::string(fam) + ":n:b:t, got '" + std::string(text) + "'");
        s = {fam == "C2" ? Family::C2 : Family::C3, parse_size(parts[1], text), parse_size(parts[2], text),
             parse_size(parts[3], text), 0};
    } else if (fam == "C3_VT") {
        if (parts.size() != 5) throw ParseError("C3_VT spec is C3_VT:n:b:t:a, got '" + std::string(text) + "'");
        s = {Family::C3_VT, parse_size(parts[1], text), parse_size(parts[2], text), parse_size(parts[3], text),
             parse_size(parts[4], text)};
    } else {
        throw ParseError("unknown code family '" + std::string(fam) + "'");
    }
    s.validate();
    return s;
}

std::string CodeSpec::to_string() const {
    std::string out(family_name(family));
    out += ':' + std::to_string(n);
    if (family != Family::C1) out += ':' + std::to_string(b);
    out += ':' + std::to_string(t);
    if (family == Family::C3_VT) out += ':' + std::to_string(a);
    return out;
}

void CodeSpec::validate() const {
    auto fail = [this](const std::string& why) {
        throw ParameterError("invalid " + std::string(family_name(family)) + " spec (n=" + std::to_string(n) +
                             ", b=" + std::to_string(b) + ", t=" + std::to_string(t) + "): " + why);
    };
    if (n < 1) fail("n must be >= 1");
    if (family == Family::C1) {
        if (b != 1) fail("C1 has b = 1");
        if (t < 1 || t > n) fail("need 1 <= t <= n");
        return;
    }
    if (b < 1) fail("b must be >= 1");
    if (t < b || t > n) fail("need b <= t <= n");
    if (family == Family::C3_VT && a > n) fail("residue a must lie in [0, n]");
}

std::vector<std::size_t> CodeSpec::periods() const {
    switch (family) {
        case Family::C1: return {1};
        case Family::C2: return {b};
        case Family::C3:
        case Family::C3_VT: {
            std::vector<std::size_t> ps(b);
            for (std::size_t l = 1; l <= b; ++l) ps[l - 1] = l;
            return ps;
        }
    }
    return {};
}

std::size_t vt_syndrome(const Word& u) {
    const std::size_t mod = u.size() + 1;
    std::size_t sum = 0;
    auto bits = u.bits();
    for (std::size_t k = 0; k < bits.size(); ++k)
        if (bits[k]) sum = (sum + k + 1) % mod;
    return sum;
}

bool is_member(const CodeSpec& spec, const Word& u) {
    if (u.size() != spec.n)
        throw ParameterError("word length " + std::to_string(u.size()) + " does not match code length " +
                             std::to_string(spec.n));
    for (auto l : spec.periods())
        if (longest_periodic(u, l) > spec.t) return false;
    if (spec.family == Family::C3_VT && vt_syndrome(u) != spec.a) return false;
    return true;
}

BigInt count_zero_run_limited(std::size_t n, std::size_t t) {
    // |R(n, t)| = |C1(n + 1, t + 1)| / 2 = compositions of n + 1 into parts <= t + 1.
    return compositions(n + 1, t + 1);
}

BigInt count(const CodeSpec& spec) {
    spec.validate();
    switch (spec.family) {
        case Family::C1:
            return 2 * compositions(spec.n, spec.t);
        case Family::C2:
            return (BigInt(1) << spec.b) * count_zero_run_limited(spec.n - spec.b, spec.t - spec.b);
        case Family::C3:
            return count_paths(ConstraintAutomaton(spec.periods(), spec.t), spec.n);
        case Family::C3_VT:
            return count_paths(ConstraintAutomaton(spec.periods(), spec.t), spec.n, spec.a);
    }
    return 0;
}

long double lower_bound_c3(std::size_t n, std::size_t b, std::size_t t) {
    const long double slack = static_cast<long double>(t) - static_cast<long double>(b);
    return std::ldexp(1.0L, static_cast<int>(n)) *
           (1.0L - static_cast<long double>(n) * std::pow(2.0L, -slack));
}

bool meets_lower_bound_c3(const BigInt& value, std::size_t n, std::size_t b, std::size_t t) {
    // value >= 2^n - n 2^(n-e), scaled by 2^e when e > 0 to stay integral.
    const long long e = static_cast<long long>(t) - static_cast<long long>(b);
    if (e <= 0) return value >= 0;  // bound is <= 0
    const auto ue = static_cast<unsigned>(e);
    BigInt lhs = value << ue;
    BigInt rhs = (BigInt(1) << (n + ue)) - BigInt(n) * (BigInt(1) << n);
    return lhs >= rhs;
}

double log2(const BigInt& x) {
    if (x <= 0) throw DomainError("log2 of a non-positive integer");
    const auto top = boost::multiprecision::msb(x);
    if (top < 62) return std::log2(x.convert_to<double>());
    const auto shift = top - 61;
    BigInt head = x >> shift;
    return static_cast<double>(shift) + std::log2(head.convert_to<double>());
}

double redundancy(const CodeSpec& spec) {
    const BigInt size = count(spec);
    if (size == 0) throw DomainError("code " + spec.to_string() + " is empty");
    return static_cast<double>(spec.n) - log2(size);
}

std::size_t ceil_log2(std::size_t n) {
    if (n < 1) throw ParameterError("ceil_log2 needs n >= 1");
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    return k;
}

std::size_t recommended_t(std::size_t n, std::size_t b, Goal goal) {
    const std::size_t base = ceil_log2(n);
    switch (goal) {
        case Goal::SingleDeletion: return base + 1;
        case Goal::Burst: return base + b;
        case Goal::BurstUpTo: return base + b + 1;
    }
    return base;
}

std::pair<Word, Word> phi(const Word& u, std::size_t b) {
    if (b < 1 || u.size() <= b) throw ParameterError("phi needs 1 <= b < length");
    return {prefix(u, b), period_check(u, b)};
}

Word psi(const Word& head, const Word& check, std::size_t b) {
    if (b < 1 || head.size() != b) throw ParameterError("psi needs a prefix of length b");
    std::vector<std::uint8_t> bits(head.bits().begin(), head.bits().end());
    bits.reserve(b + check.size());
    for (auto w : check.bits()) bits.push_back(bits[bits.size() - b] ^ w);
    return Word(std::move(bits));
}

}  // namespace rtm
