#include <doctest.h>

#include <cmath>
#include <map>

#include "naive.hpp"
#include "rtm/channel.hpp"
#include "rtm/errors.hpp"
#include "rtm/oracle.hpp"

using rtm::ErrorClass;
using rtm::ErrorPattern;
using rtm::Event;
using rtm::HeadLayout;
using rtm::Word;

namespace {

Word W(const std::string& s) { return Word::from_string(s); }

ErrorPattern P(std::vector<Event> events) { return ErrorPattern{std::move(events)}; }

}  // namespace

TEST_CASE("head layout") {
    const HeadLayout l = HeadLayout::parse("4,4");
    CHECK(l.heads() == 3);
    CHECK(l.offset(0) == 0);
    CHECK(l.offset(2) == 8);
    CHECK(l.span() == 8);
    CHECK(l.to_string() == "4,4");
    CHECK(HeadLayout::parse("").heads() == 1);
    CHECK_THROWS_AS(HeadLayout::parse("4,0"), rtm::ParameterError);
    CHECK_THROWS_AS(HeadLayout::parse("4,x"), rtm::ParseError);
}

TEST_CASE("two heads see one deletion at their own offsets") {
    const auto r = rtm::read(W("001101011"), HeadLayout({3}), P({Event::deletion(3)}));
    REQUIRE(r.heads.size() == 2);
    CHECK(r.heads[0] == W("00101011"));
    CHECK(r.heads[1] == W("00110011"));
}

TEST_CASE("three heads see two deletions") {
    const Word c = W("00110110111");
    const auto r = rtm::read(c, HeadLayout({4, 4}), P({Event::deletion(1), Event::deletion(3)}));
    const std::size_t d0[] = {1, 3}, d1[] = {5, 7}, d2[] = {9, 11};
    CHECK(r.heads[0] == rtm::delete_bits(c, d0));
    CHECK(r.heads[1] == rtm::delete_bits(c, d1));
    CHECK(r.heads[2] == rtm::delete_bits(c, d2));
    CHECK(r.heads[0] == W("010110111"));
    CHECK(r.heads[1] == W("001110111"));
    CHECK(r.heads[2] == W("001101101"));
}

TEST_CASE("error-free read") {
    const auto r = rtm::read(W("0110"), HeadLayout({1, 2}), {});
    for (const auto& h : r.heads) CHECK(h == W("0110"));
}

TEST_CASE("pattern validation") {
    const HeadLayout l({4, 4});
    CHECK_NOTHROW(P({Event::deletion(1), Event::deletion(3)}).validate(11, l));
    CHECK_THROWS_AS(P({Event::deletion(1), Event::deletion(4)}).validate(11, l), rtm::PatternError);
    CHECK_THROWS_AS(P({Event::deletion(3), Event::deletion(1)}).validate(11, l), rtm::PatternError);
    CHECK_THROWS_AS(P({Event::deletion(2, 2), Event::deletion(3)}).validate(20, l), rtm::PatternError);
    CHECK_THROWS_AS(P({Event::deletion(2), Event::sticky(2)}).validate(20, l), rtm::PatternError);
    CHECK_NOTHROW(P({Event::sticky(2), Event::deletion(3)}).validate(20, l));
    CHECK_THROWS_AS(P({Event::deletion(1, 0)}).validate(20, l), rtm::PatternError);
    CHECK_THROWS_AS(rtm::read(W("0110"), HeadLayout({3}), P({Event::deletion(2)})), rtm::PatternError);
}

TEST_CASE("read lengths agree across heads") {
    const Word c = W("0011010110010111");
    const auto r = rtm::read(c, HeadLayout({3, 4}), P({Event::deletion(1, 2), Event::sticky(4, 3), Event::deletion(6)}));
    for (const auto& h : r.heads) CHECK(h.size() == 16 - 3 + 3);
}

TEST_CASE("a single burst hits every head at its offset") {
    const HeadLayout l({2, 3});
    for (std::size_t n = 6; n <= 12; ++n)
        for (const auto& s : naive::all_words(n))
            for (std::size_t b = 1; b <= 2; ++b)
                for (std::size_t i = 1; i + l.span() + b - 1 <= n; ++i) {
                    const auto r = rtm::read(W(s), l, P({Event::deletion(i, b)}));
                    for (std::size_t h = 0; h < l.heads(); ++h) REQUIRE(r.heads[h] == rtm::delete_burst(W(s), i + l.offset(h), b));
                }
}

TEST_CASE("read agrees with the oracle's reference channel and a string model") {
    const HeadLayout l({2});
    for (std::size_t n = 4; n <= 10; ++n) {
        const auto patterns = rtm::enumerate_patterns(n, l, ErrorClass::position_errors(2));
        for (const auto& s : naive::all_words(n))
            for (const auto& p : patterns) {
                const auto r = rtm::read(W(s), l, p);
                REQUIRE(r == rtm::apply_pattern(W(s), l, p));
                std::vector<naive::Ev> evs;
                for (const auto& e : p.events) evs.push_back({e.kind == rtm::EventKind::Deletion ? 'd' : 's', e.pos, e.len});
                REQUIRE(r.heads[1].to_string() == naive::apply(s, evs, 2));
            }
    }
}

TEST_CASE("error class text form") {
    for (const char* text : {"none", "del:2", "burst:3", "burst-upto:2", "sticky:2:3", "poserr:2"})
        CHECK(ErrorClass::parse(text).to_string() == text);
    CHECK(ErrorClass::parse("del:1") == ErrorClass::deletions(1));
    CHECK_THROWS_AS(ErrorClass::parse("del"), rtm::ParseError);
    CHECK_THROWS_AS(ErrorClass::parse("flip:1"), rtm::ParseError);
    CHECK(ErrorClass::burst_upto(2).contains({}));
    CHECK_FALSE(ErrorClass::burst(2).contains({}));
    CHECK(ErrorClass::position_errors(2).contains(P({Event::sticky(3, 2)})));
    CHECK_FALSE(ErrorClass::position_errors(2).contains(P({Event::sticky(3, 2), Event::deletion(5)})));
    CHECK_FALSE(ErrorClass::sticky(1, 2).contains(P({Event::sticky(3, 3)})));
}

TEST_CASE("pattern enumeration sizes") {
    // i <= n - gap for one deletion with two heads
    CHECK(rtm::enumerate_patterns(9, HeadLayout({3}), ErrorClass::deletions(1)).size() == 6);
    // i1 < i2 with i2 + 8 <= 11
    CHECK(rtm::enumerate_patterns(11, HeadLayout({4, 4}), ErrorClass::deletions(2)).size() == 3);
    CHECK(rtm::enumerate_patterns(9, HeadLayout({3}), ErrorClass::none()).size() == 1);
    CHECK(rtm::enumerate_patterns(9, HeadLayout({3}), ErrorClass::burst_upto(2)).size() == 1 + 6 + 5);
    for (const auto& p : rtm::enumerate_patterns(12, HeadLayout({3, 3}), ErrorClass::position_errors(2))) {
        CHECK_NOTHROW(p.validate(12, HeadLayout({3, 3})));
        CHECK(ErrorClass::position_errors(2).contains(p));
    }
}

TEST_CASE("sampler is deterministic and stays inside the class") {
    const HeadLayout l({3, 3});
    for (const char* cls : {"del:2", "burst:2", "burst-upto:3", "sticky:2:2", "poserr:2"}) {
        const ErrorClass ec = ErrorClass::parse(cls);
        CHECK(rtm::random_pattern(42, 20, l, ec) == rtm::random_pattern(42, 20, l, ec));
        rtm::PatternSampler sampler(7, 20, l, ec);
        for (int k = 0; k < 200; ++k) {
            const ErrorPattern p = sampler();
            REQUIRE_NOTHROW(p.validate(20, l));
            REQUIRE(ec.contains(p));
        }
    }
}

TEST_CASE("unsatisfiable class") {
    CHECK_THROWS_AS(rtm::PatternSampler(1, 6, HeadLayout({4, 4}), ErrorClass::deletions(2)), rtm::SamplingError);
}

TEST_CASE("sampler is uniform over positions") {
    // one deletion, n = 9, gap 3: i in 1..6
    rtm::PatternSampler sampler(2024, 9, HeadLayout({3}), ErrorClass::deletions(1));
    std::map<std::size_t, int> hist;
    const int draws = 100000;
    for (int k = 0; k < draws; ++k) ++hist[sampler().events.at(0).pos];
    REQUIRE(hist.size() == 6);
    CHECK(hist.begin()->first == 1);
    CHECK(hist.rbegin()->first == 6);
    double chi2 = 0;
    for (const auto& [pos, c] : hist) chi2 += (c - draws / 6.0) * (c - draws / 6.0) / (draws / 6.0);
    // 5 degrees of freedom, p = 0.001
    CHECK(chi2 < 20.5);
}

TEST_CASE("sampler is uniform over a mixed class") {
    const HeadLayout l({3});
    const ErrorClass ec = ErrorClass::position_errors(2);
    const auto all = rtm::enumerate_patterns(10, l, ec);
    std::map<std::string, int> hist;
    for (const auto& p : all) hist[nlohmann::json(p).dump()] = 0;
    rtm::PatternSampler sampler(99, 10, l, ec);
    const int draws = 200000;
    for (int k = 0; k < draws; ++k) {
        auto it = hist.find(nlohmann::json(sampler()).dump());
        REQUIRE(it != hist.end());
        ++it->second;
    }
    const double e = double(draws) / double(all.size());
    double chi2 = 0;
    for (const auto& [key, c] : hist) chi2 += (c - e) * (c - e) / e;
    const double df = double(all.size() - 1);
    // normal approximation to the chi-square tail, about p = 0.001
    CHECK(chi2 < df + 3.1 * std::sqrt(2 * df));
}

TEST_CASE("pattern and layout JSON") {
    const ErrorPattern p = P({Event::deletion(3), Event::sticky(5, 2)});
    const auto j = nlohmann::json(p);
    CHECK(j.dump() == R"({"events":[{"kind":"del","len":1,"pos":3},{"kind":"sticky","len":2,"pos":5}]})");
    CHECK(nlohmann::json::parse(R"({"events":[{"kind":"del","pos":3,"len":1},{"kind":"sticky","pos":5,"len":2}]})")
              .get<ErrorPattern>() == p);
    CHECK(nlohmann::json(HeadLayout({4, 4})).dump() == R"({"gaps":[4,4]})");
    CHECK(nlohmann::json::parse(R"({"gaps":[4,4]})").get<HeadLayout>() == HeadLayout({4, 4}));
    CHECK_THROWS(nlohmann::json::parse(R"({"events":[{"kind":"flip","pos":3,"len":1}]})").get<ErrorPattern>());
}
