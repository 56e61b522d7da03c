#include <doctest.h>

#include <sstream>

#include "naive.hpp"
#include "rtm/errors.hpp"
#include "rtm/word.hpp"

using rtm::Word;

namespace {

Word W(const char* s) { return Word::from_string(s); }

}  // namespace

TEST_CASE("word construction and text form") {
    CHECK(W("0011").size() == 4);
    CHECK(W("").empty());
    CHECK(Word{0, 1, 1}.to_string() == "011");
    CHECK(Word::from_integer(5, 4).to_string() == "0101");
    CHECK(W("0110").weight() == 2);
    CHECK(W("01") + W("1") == W("011"));
    CHECK(W("001") < W("010"));
    CHECK_THROWS_AS(W("012"), rtm::ParseError);
    CHECK_THROWS_AS((Word{0, 2}), rtm::ParameterError);
    CHECK_THROWS_AS(W("01").at(3), rtm::IndexError);
    CHECK_THROWS_AS(W("01").at(0), rtm::IndexError);
    std::ostringstream os;
    os << W("101");
    CHECK(os.str() == "101");
}

TEST_CASE("subword") {
    const Word u = W("001101011");
    CHECK(rtm::subword(u, 4, 8) == W("10101"));
    CHECK(rtm::subword(W("01"), 1, 2) == W("01"));
    CHECK(rtm::subword(W("011"), 2, 2) == W("1"));
    CHECK_THROWS_AS(rtm::subword(u, 0, 2), rtm::IndexError);
    CHECK_THROWS_AS(rtm::subword(u, 5, 4), rtm::IndexError);
    CHECK_THROWS_AS(rtm::subword(u, 8, 10), rtm::IndexError);
    CHECK(rtm::suffix_from(u, 10).empty());
    CHECK(rtm::suffix_from(u, 8) == W("11"));
    CHECK(rtm::prefix(u, 0).empty());
    CHECK(rtm::prefix(u, 3) == W("001"));
}

TEST_CASE("longest periodic subvector on the worked example") {
    const Word u = W("001101011");
    CHECK(rtm::longest_periodic(u, 1) == 2);
    CHECK(rtm::longest_periodic(u, 2) == 5);
    CHECK(rtm::longest_periodic(u, 9) == 9);
    CHECK_THROWS_AS(rtm::longest_periodic(u, 0), rtm::ParameterError);
    CHECK_THROWS_AS(rtm::longest_periodic(u, 10), rtm::ParameterError);
}

TEST_CASE("longest periodic subvector matches a window scan") {
    for (std::size_t n = 1; n <= 12; ++n)
        for (const auto& s : naive::all_words(n)) {
            const Word u = W(s.c_str());
            for (std::size_t ell = 1; ell <= std::min<std::size_t>(n, 4); ++ell)
                REQUIRE(rtm::longest_periodic(u, ell) == naive::longest_periodic(s, ell));
        }
}

TEST_CASE("longest run equals L(u,1) up to length 16") {
    for (std::size_t n = 1; n <= 16; ++n)
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); v += (n > 12 ? 7 : 1)) {
            const std::string s = naive::bits(v, n);
            const Word u = W(s.c_str());
            REQUIRE(rtm::longest_run(u) == naive::longest_run(s));
            REQUIRE(rtm::longest_periodic(u, 1) == rtm::longest_run(u));
            REQUIRE(rtm::longest_zero_run(u) == naive::longest_run(s, '0'));
        }
}

TEST_CASE("longest zero run") {
    CHECK(rtm::longest_zero_run(W("0110100010")) == 3);
    CHECK(rtm::longest_zero_run(W("11111")) == 0);
    CHECK(rtm::longest_zero_run(W("0000000")) == 7);
    CHECK(rtm::longest_run(W("")) == 0);
}

TEST_CASE("deletions on the worked example") {
    const Word u = W("001101011");
    const std::size_t one[] = {4};
    const std::size_t three[] = {4, 7, 9};
    CHECK(rtm::delete_bits(u, one) == W("00101011"));
    CHECK(rtm::delete_bits(u, three) == W("001011"));
    CHECK(rtm::delete_bits(u, {}) == u);
    CHECK(rtm::delete_burst(u, 3, 4) == W("00011"));
    CHECK(rtm::delete_burst(W("10"), 1, 2).empty());
    const std::size_t dup[] = {2, 2};
    const std::size_t out_of_range[] = {10};
    CHECK_THROWS_AS(rtm::delete_bits(u, dup), rtm::ParameterError);
    CHECK_THROWS_AS(rtm::delete_bits(u, out_of_range), rtm::ParameterError);
    CHECK_THROWS_AS(rtm::delete_burst(u, 7, 4), rtm::ParameterError);
}

TEST_CASE("burst deletion equals set deletion and keeps a subsequence") {
    for (std::size_t n = 1; n <= 10; ++n)
        for (const auto& s : naive::all_words(n)) {
            const Word u = W(s.c_str());
            for (std::size_t i = 1; i <= n; ++i)
                for (std::size_t b = 1; i + b - 1 <= n; ++b) {
                    std::vector<std::size_t> pos;
                    for (std::size_t k = i; k < i + b; ++k) pos.push_back(k);
                    const Word d = rtm::delete_burst(u, i, b);
                    REQUIRE(d == rtm::delete_bits(u, pos));
                    REQUIRE(naive::is_subsequence(d.to_string(), s));
                    REQUIRE(d.to_string() == naive::apply(s, {{'d', i, b}}, 0));
                }
        }
}

TEST_CASE("sticky insertion") {
    CHECK(rtm::sticky_insert(W("01"), 1, 1) == W("001"));
    CHECK(rtm::sticky_insert(W("001101011"), 3, 1) == W("0011101011"));
    CHECK_THROWS_AS(rtm::sticky_insert(W("01"), 3, 1), rtm::ParameterError);
    CHECK_THROWS_AS(rtm::sticky_insert(W("01"), 1, 0), rtm::ParameterError);
    for (std::size_t n = 1; n <= 10; ++n)
        for (const auto& s : naive::all_words(n)) {
            const Word u = W(s.c_str());
            for (std::size_t i = 1; i <= n; ++i)
                for (std::size_t r = 1; r <= 3; ++r) {
                    const Word v = rtm::sticky_insert(u, i, r);
                    REQUIRE(v.to_string() == naive::apply(s, {{'s', i, r}}, 0));
                    // the inserted symbols sit in the run through position i
                    for (std::size_t k = i; k <= i + r; ++k) REQUIRE(v.at(k) == u.at(i));
                    if (r == 1 && n <= 8) REQUIRE(rtm::delete_burst(v, i + 1, 1) == u);
                }
        }
}

TEST_CASE("period check vector") {
    CHECK(rtm::period_check(W("00110"), 1) == W("0101"));
    CHECK(rtm::period_check(W("000000"), 2) == W("0000"));
    CHECK_THROWS_AS(rtm::period_check(W("010"), 3), rtm::ParameterError);
}

TEST_CASE("period-b subvector of length t iff t-b zeros in the check vector") {
    for (std::size_t n = 2; n <= 12; ++n)
        for (const auto& s : naive::all_words(n)) {
            const Word u = W(s.c_str());
            for (std::size_t b = 1; b <= 3 && b < n; ++b) {
                const std::size_t zeros = rtm::longest_zero_run(rtm::period_check(u, b));
                for (std::size_t t = b; t <= n; ++t)
                    REQUIRE((naive::longest_periodic(s, b) >= t) == (zeros >= t - b));
            }
        }
}

TEST_CASE("leftmost difference") {
    CHECK(rtm::leftmost_diff(W("00101011"), W("00110011")) == 4u);
    CHECK_FALSE(rtm::leftmost_diff(W("0110"), W("0110")).has_value());
    CHECK(rtm::leftmost_diff(W("01"), W("011")) == 3u);
    for (const auto& a : naive::all_words(5))
        for (const auto& b : naive::all_words(4))
            REQUIRE(rtm::leftmost_diff(W(a.c_str()), W(b.c_str())) == rtm::leftmost_diff(W(b.c_str()), W(a.c_str())));
}
