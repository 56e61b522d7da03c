#include <doctest.h>

#include <cmath>

#include "naive.hpp"
#include "rtm/codebook.hpp"
#include "rtm/constraints.hpp"
#include "rtm/errors.hpp"

using rtm::BigInt;
using rtm::CodeSpec;
using rtm::Word;

namespace {

Word W(const std::string& s) { return Word::from_string(s); }

}  // namespace

TEST_CASE("code spec text form") {
    CHECK(CodeSpec::parse("C1:9:3") == CodeSpec::c1(9, 3));
    CHECK(CodeSpec::parse("C3:64:2:9") == CodeSpec::c3(64, 2, 9));
    CHECK(CodeSpec::parse("C3_VT:12:2:5:0") == CodeSpec::c3_vt(12, 2, 5, 0));
    CHECK(CodeSpec::c2(10, 2, 5).to_string() == "C2:10:2:5");
    CHECK(CodeSpec::c3_vt(12, 2, 5, 3).to_string() == "C3_VT:12:2:5:3");
    CHECK_THROWS_AS(CodeSpec::parse("C4:9:3"), rtm::ParseError);
    CHECK_THROWS_AS(CodeSpec::parse("C1:9"), rtm::ParseError);
    CHECK_THROWS_AS(CodeSpec::parse("C1:x:3"), rtm::ParseError);
    CHECK_THROWS_AS(CodeSpec::parse("C1:3:4"), rtm::ParameterError);
    CHECK_THROWS_AS(CodeSpec::parse("C2:9:4:3"), rtm::ParameterError);
    CHECK_THROWS_AS(CodeSpec::parse("C3_VT:9:2:4:10"), rtm::ParameterError);
}

TEST_CASE("membership") {
    const Word u = W("001101011");
    CHECK(rtm::is_member(CodeSpec::c1(9, 3), u));
    CHECK_FALSE(rtm::is_member(CodeSpec::c2(9, 2, 4), u));
    CHECK(rtm::is_member(CodeSpec::c2(9, 2, 5), u));
    for (const auto& s : naive::all_words(4)) CHECK(rtm::is_member(CodeSpec::c1(4, 4), W(s)));
    CHECK_THROWS_AS(rtm::is_member(CodeSpec::c1(8, 3), u), rtm::ParameterError);
    CHECK(rtm::vt_syndrome(W("0101")) == (2 + 4) % 5);
}

TEST_CASE("membership agrees with the definition") {
    for (std::size_t n = 1; n <= 10; ++n)
        for (const auto& s : naive::all_words(n))
            for (std::size_t b = 1; b <= 3; ++b)
                for (std::size_t t = b; t <= n; ++t) {
                    REQUIRE(rtm::is_member(CodeSpec::c2(n, b, t), W(s)) == naive::member(2, s, b, t));
                    REQUIRE(rtm::is_member(CodeSpec::c3(n, b, t), W(s)) == naive::member(3, s, b, t));
                    if (b == 1) REQUIRE(rtm::is_member(CodeSpec::c1(n, t), W(s)) == naive::member(1, s, 1, t));
                }
}

TEST_CASE("counts on small codes") {
    CHECK(rtm::count(CodeSpec::c1(3, 2)) == 6);
    CHECK(rtm::count(CodeSpec::c1(5, 5)) == 32);
    CHECK(rtm::count(CodeSpec::c2(4, 1, 2)) == 10);
    CHECK(rtm::count_zero_run_limited(3, 1) == 5);
    for (std::size_t n = 1; n <= 20; ++n) CHECK(rtm::count(CodeSpec::c1(n, n)) == BigInt(1) << n);
}

TEST_CASE("counts equal enumeration for every family") {
    for (std::size_t n = 1; n <= 12; ++n)
        for (std::size_t b = 1; b <= 3; ++b)
            for (std::size_t t = b; t <= n; ++t) {
                if (b == 1) REQUIRE(rtm::count(CodeSpec::c1(n, t)) == naive::count(1, n, 1, t));
                REQUIRE(rtm::count(CodeSpec::c2(n, b, t)) == naive::count(2, n, b, t));
                REQUIRE(rtm::count(CodeSpec::c3(n, b, t)) == naive::count(3, n, b, t));
                if (n <= 9)
                    for (std::size_t a = 0; a <= n; ++a)
                        REQUIRE(rtm::count(CodeSpec::c3_vt(n, b, t, a)) == naive::count(4, n, b, t, a));
            }
}

TEST_CASE("period-check product identity and the zero-run reduction") {
    for (std::size_t n = 2; n <= 18; ++n)
        for (std::size_t b = 1; b <= 3 && b < n; ++b)
            for (std::size_t t = b; t <= n; ++t) {
                const BigInt c2 = rtm::count(CodeSpec::c2(n, b, t));
                REQUIRE(c2 == (BigInt(1) << b) * rtm::count_zero_run_limited(n - b, t - b));
                REQUIRE(c2 == (BigInt(1) << b) * rtm::count(CodeSpec::c1(n - b + 1, t - b + 1)) / 2);
            }
}

TEST_CASE("zero-run limited count matches enumeration") {
    for (std::size_t n = 0; n <= 12; ++n)
        for (std::size_t t = 0; t <= n; ++t) {
            std::uint64_t c = 0;
            for (const auto& s : naive::all_words(n)) c += naive::longest_run(s, '0') <= t;
            REQUIRE(rtm::count_zero_run_limited(n, t) == c);
        }
}

TEST_CASE("lower bound") {
    CHECK(rtm::lower_bound_c3(16, 2, 9) == doctest::Approx(57344.0));
    CHECK(rtm::count(CodeSpec::c3(16, 2, 9)) >= 57344);
    CHECK(rtm::meets_lower_bound_c3(57344, 16, 2, 9));
    CHECK_FALSE(rtm::meets_lower_bound_c3(57343, 16, 2, 9));
    // t - b = log2(n) + 1 halves the space
    CHECK(rtm::lower_bound_c3(64, 2, 9) == doctest::Approx(std::ldexp(1.0, 63)));
    CHECK(rtm::lower_bound_c3(1, 1, 2) <= 2.0);
    for (std::size_t n = 1; n <= 18; ++n)
        for (std::size_t b = 1; b <= 3; ++b)
            for (std::size_t t = b + 1; t <= n; ++t) REQUIRE(rtm::meets_lower_bound_c3(rtm::count(CodeSpec::c3(n, b, t)), n, b, t));
}

TEST_CASE("count is nondecreasing in t") {
    for (std::size_t n = 2; n <= 18; ++n)
        for (std::size_t b = 1; b <= 3 && b <= n; ++b)
            for (std::size_t t = b; t < n; ++t) {
                REQUIRE(rtm::count(CodeSpec::c2(n, b, t)) <= rtm::count(CodeSpec::c2(n, b, t + 1)));
                REQUIRE(rtm::count(CodeSpec::c3(n, b, t)) <= rtm::count(CodeSpec::c3(n, b, t + 1)));
            }
}

TEST_CASE("redundancy") {
    CHECK(rtm::redundancy(CodeSpec::c1(12, 12)) == doctest::Approx(0.0));
    CHECK(rtm::redundancy(CodeSpec::c1(3, 2)) == doctest::Approx(3 - std::log2(6.0)));
    const double r = rtm::redundancy(CodeSpec::c1(4096, 13));
    CHECK(r >= 0.30);
    CHECK(r <= 0.43);
    // no word of C3(3,2,2) has VT residue 0
    CHECK(rtm::count(CodeSpec::c3_vt(3, 2, 2, 0)) == 0);
    CHECK(naive::count(4, 3, 2, 2, 0) == 0);
    CHECK_THROWS_AS(rtm::redundancy(CodeSpec::c3_vt(3, 2, 2, 0)), rtm::DomainError);
    CHECK(rtm::log2(BigInt(1) << 3000) == doctest::Approx(3000.0));
}

TEST_CASE("recommended head distance") {
    using rtm::Goal;
    CHECK(rtm::recommended_t(9, 1, Goal::SingleDeletion) == 5);
    CHECK(rtm::recommended_t(4096, 1, Goal::SingleDeletion) == 13);
    CHECK(rtm::recommended_t(1024, 3, Goal::BurstUpTo) == 14);
    CHECK(rtm::recommended_t(1024, 3, Goal::Burst) == 13);
    CHECK(rtm::ceil_log2(1) == 0);
    CHECK(rtm::ceil_log2(9) == 4);
}

TEST_CASE("phi and psi") {
    auto [p, c] = rtm::phi(W("00110"), 1);
    CHECK(p == W("0"));
    CHECK(c == W("0101"));
    auto [p2, c2] = rtm::phi(W("000000"), 2);
    CHECK(p2 == W("00"));
    CHECK(c2 == W("0000"));
    CHECK(rtm::psi(W("0"), W("0101"), 1) == W("00110"));
    CHECK(rtm::psi(W("01"), W("0000"), 2) == W("010101"));
    CHECK_THROWS_AS(rtm::phi(W("01"), 2), rtm::ParameterError);
    for (std::size_t n = 2; n <= 12; ++n)
        for (const auto& s : naive::all_words(n))
            for (std::size_t b = 1; b <= 3 && b < n; ++b) {
                auto [head, check] = rtm::phi(W(s), b);
                REQUIRE(rtm::psi(head, check, b) == W(s));
                // split the same bits as (v, w) and go the other way
                const Word v = rtm::prefix(W(s), b), w = rtm::suffix_from(W(s), b + 1);
                auto [v2, w2] = rtm::phi(rtm::psi(v, w, b), b);
                REQUIRE(v2 == v);
                REQUIRE(w2 == w);
            }
}

TEST_CASE("phi maps C2 onto prefixes times zero-run limited checks") {
    for (std::size_t n = 3; n <= 12; ++n)
        for (std::size_t b = 1; b <= 2; ++b)
            for (std::size_t t = b; t <= n; ++t)
                for (const auto& s : naive::all_words(n)) {
                    auto [head, check] = rtm::phi(W(s), b);
                    REQUIRE(rtm::is_member(CodeSpec::c2(n, b, t), W(s)) == (rtm::longest_zero_run(check) <= t - b));
                }
}

TEST_CASE("automaton accepts exactly the constrained words") {
    for (std::size_t b = 1; b <= 3; ++b)
        for (std::size_t t = b; t <= 6; ++t) {
            std::vector<std::size_t> periods;
            for (std::size_t l = 1; l <= b; ++l) periods.push_back(l);
            const rtm::ConstraintAutomaton automaton(periods, t);
            for (std::size_t n = 1; n <= 10; ++n)
                for (const auto& s : naive::all_words(n)) REQUIRE(automaton.accepts(W(s)) == naive::member(3, s, b, t));
        }
}

TEST_CASE("unrank and rank") {
    const rtm::Codebook small(CodeSpec::c1(3, 2));
    CHECK(small.size() == 6);
    const char* members[] = {"001", "010", "011", "100", "101", "110"};
    for (int k = 0; k < 6; ++k) {
        CHECK(small.unrank(k) == W(members[k]));
        CHECK(small.rank(W(members[k])) == k);
    }
    CHECK_THROWS_AS(small.unrank(6), rtm::IndexError);
    CHECK_THROWS_AS(small.rank(W("000")), rtm::MembershipError);

    const rtm::Codebook full(CodeSpec::c1(8, 8));
    for (std::uint64_t k = 0; k < 256; ++k) CHECK(full.unrank(k) == Word::from_integer(k, 8));
}

TEST_CASE("unrank lists the members in lexicographic order") {
    const CodeSpec specs[] = {CodeSpec::c1(10, 3), CodeSpec::c2(10, 2, 4), CodeSpec::c3(10, 2, 4),
                              CodeSpec::c3_vt(10, 2, 4, 3)};
    for (const auto& spec : specs) {
        const rtm::Codebook book(spec);
        std::vector<std::string> expected;
        for (const auto& s : naive::all_words(spec.n))
            if (rtm::is_member(spec, W(s))) expected.push_back(s);
        REQUIRE(book.size() == expected.size());
        for (std::size_t k = 0; k < expected.size(); ++k) {
            REQUIRE(book.unrank(k).to_string() == expected[k]);
            REQUIRE(book.rank(W(expected[k])) == k);
        }
    }
}

TEST_CASE("rank and unrank at n = 4096") {
    const rtm::Codebook book(CodeSpec::c1(4096, 13));
    CHECK(book.size() == rtm::count(CodeSpec::c1(4096, 13)));
    const BigInt last = book.size() - 1;
    for (const BigInt& k : std::vector<BigInt>{0, 12345, last / 3, last}) {
        const Word w = book.unrank(k);
        CHECK(rtm::is_member(book.spec(), w));
        CHECK(book.rank(w) == k);
    }
}
