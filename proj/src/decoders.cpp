#include "rtm/decoders.hpp"

#include <algorithm>
#include <optional>

#include "rtm/errors.hpp"

namespace rtm {

namespace {

std::size_t first_difference(const Word& earlier, const Word& later) {
    auto j = leftmost_diff(earlier, later);
    if (!j)
        throw ConstraintViolation("head outputs " + earlier.to_string() +
                                  " agree everywhere; the stored word breaks the code constraint");
    return *j;
}

void expect_length(const Word& w, std::size_t expected, std::string_view what) {
    if (w.size() != expected)
        throw LengthError(std::string(what) + " has length " + std::to_string(w.size()) + ", expected " +
                          std::to_string(expected));
}

void expect_heads(const ReadOut& reads, std::size_t m, std::string_view decoder) {
    if (reads.heads.size() != m)
        throw ParameterError(std::string(decoder) + " needs " + std::to_string(m) + " heads, got " +
                             std::to_string(reads.heads.size()));
}

void expect_gaps(const HeadLayout& layout, std::size_t heads, std::size_t min_gap, std::string_view decoder) {
    if (layout.heads() != heads)
        throw ParameterError(std::string(decoder) + " needs a layout of " + std::to_string(heads) + " heads");
    for (auto g : layout.gaps())
        if (g < min_gap)
            throw ParameterError(std::string(decoder) + " needs head gaps >= " + std::to_string(min_gap) + ", got " +
                                 std::to_string(g));
}

DecodeResult finish(Word word, std::vector<Stage> stages, const CodeSpec& code) {
    if (word.size() != code.n || !is_member(code, word))
        throw ConstraintViolation("reconstruction " + word.to_string() + " is not a codeword of " + code.to_string());
    return {std::move(word), std::move(stages)};
}

// Each round peels one error from every head but the last, then drops the
// last head; `rounds` rounds leave heads[0] with `rounds` fewer errors.
template <typename Peel>
Word cascade(std::vector<Word> heads, std::size_t rounds, Peel peel, std::vector<Stage>& stages) {
    for (std::size_t round = 0; round < rounds; ++round) {
        if (heads.size() < 2) throw ParameterError("cascade ran out of heads");
        for (std::size_t k = 0; k + 1 < heads.size(); ++k) {
            const std::size_t before = heads[k].size();
            Peeled p = peel(heads[k], heads[k + 1]);
            if (p.word.size() != before + 1)
                throw ConstraintViolation("cascade stage " + std::to_string(stages.size() + 1) +
                                          " did not remove exactly one deletion");
            heads[k] = std::move(p.word);
            stages.push_back({stages.size() + 1, p.j});
        }
        heads.pop_back();
    }
    return std::move(heads.front());
}

// Sticky repeats only lengthen runs, so a stage may clear several repeats
// of one run at once; heads already at length n are left alone.
Word sticky_cascade(std::vector<Word> heads, std::size_t n, std::vector<Stage>& stages) {
    while (heads.size() > 1 && heads.front().size() > n) {
        for (std::size_t k = 0; k + 1 < heads.size(); ++k) {
            if (heads[k].size() == n) continue;
            Peeled p = peel_sticky(heads[k], heads[k + 1]);
            if (p.word.size() < n)
                throw ConstraintViolation("sticky stage " + std::to_string(stages.size() + 1) +
                                          " removed more repeats than were inserted");
            heads[k] = std::move(p.word);
            stages.push_back({stages.size() + 1, p.j});
        }
        heads.pop_back();
    }
    if (heads.front().size() != n) throw ConstraintViolation("sticky cascade ran out of heads");
    return std::move(heads.front());
}

}  // namespace

Peeled peel_deletion(const Word& earlier, const Word& later) {
    const std::size_t j = first_difference(earlier, later);
    if (j > earlier.size() || j > later.size())
        throw ConstraintViolation("deletion peel: words differ only in length");
    return {prefix(later, j) + suffix_from(earlier, j), j};
}

Peeled peel_burst(const Word& earlier, const Word& later, std::size_t b) {
    const std::size_t j = first_difference(earlier, later);
    if (j > earlier.size() || j + b - 1 > later.size())
        throw ConstraintViolation("burst peel: first difference too close to the end");
    return {prefix(later, j + b - 1) + suffix_from(earlier, j), j};
}

Peeled peel_sticky(const Word& earlier, const Word& later) {
    const std::size_t j = first_difference(earlier, later);
    auto bits = earlier.bits();
    if (j < 2 || j > earlier.size() || j - 1 > later.size())
        throw ConstraintViolation("sticky peel: no repeated run before the first difference");
    const auto symbol = bits[j - 2];
    std::size_t surplus = 0;
    while (j - 1 + surplus < bits.size() && bits[j - 1 + surplus] == symbol) ++surplus;
    if (surplus == 0) throw ConstraintViolation("sticky peel: first difference is not a repeated symbol");
    return {prefix(later, j - 1) + suffix_from(earlier, j + surplus), j};
}

Peeled peel_sticky(const Word& earlier, const Word& later, std::size_t s) {
    const std::size_t j = first_difference(earlier, later);
    auto bits = earlier.bits();
    if (s == 0 || j < 2 || j - 1 + s > bits.size() || j - 1 > later.size())
        throw ConstraintViolation("sticky peel: no repeated run before the first difference");
    for (std::size_t k = 0; k < s; ++k)
        if (bits[j - 1 + k] != bits[j - 2])
            throw ConstraintViolation("sticky peel: first difference is not a repeated symbol");
    return {prefix(later, j - 1) + suffix_from(earlier, j + s), j};
}

DecodeResult decode_2h_1del(const Word& h1, const Word& h2, std::size_t t, std::size_t n) {
    expect_length(h1, n - 1, "head 1");
    expect_length(h2, n - 1, "head 2");
    Peeled p = peel_deletion(h1, h2);
    return finish(std::move(p.word), {{1, p.j}}, CodeSpec::c1(n, t));
}

DecodeResult decode_2h_burst(const Word& h1, const Word& h2, std::size_t t, std::size_t n, std::size_t b) {
    if (b < 1 || b >= n) throw ParameterError("burst length must lie in [1, n)");
    expect_length(h1, n - b, "head 1");
    expect_length(h2, n - b, "head 2");
    Peeled p = peel_burst(h1, h2, b);
    return finish(std::move(p.word), {{1, p.j}}, CodeSpec::c2(n, b, t));
}

DecodeResult decode_2h_leq_burst(const Word& h1, const Word& h2, std::size_t t, std::size_t n, std::size_t b_max) {
    const CodeSpec code = CodeSpec::c3(n, b_max, t);
    if (h1.size() > n || n - h1.size() > b_max)
        throw LengthError("head 1 length " + std::to_string(h1.size()) + " implies a burst outside [0, " +
                          std::to_string(b_max) + "]");
    expect_length(h2, h1.size(), "head 2");
    const std::size_t b = n - h1.size();
    if (b == 0) return finish(h1, {}, code);
    DecodeResult r = decode_2h_burst(h1, h2, t, n, b);
    return finish(std::move(r.codeword), std::move(r.diagnostics), code);
}

std::size_t min_cascade_gap(std::size_t d, std::size_t t1) {
    const long long g = static_cast<long long>(d * t1) - static_cast<long long>(d * (d + 1) / 2) + 1;
    return static_cast<std::size_t>(std::max(1LL, g));
}

DecodeResult decode_mh_ddel(const ReadOut& reads, const HeadLayout& layout, std::size_t n, std::size_t d,
                            std::size_t t1) {
    if (d < 1 || d >= n) throw ParameterError("deletion count must lie in [1, n)");
    const CodeSpec code = CodeSpec::c3(n, d, t1);
    expect_heads(reads, d + 1, "decode_mh_ddel");
    expect_gaps(layout, d + 1, min_cascade_gap(d, t1), "decode_mh_ddel");
    for (const auto& h : reads.heads) expect_length(h, n - d, "head output");
    std::vector<Stage> stages;
    Word c = cascade(reads.heads, d, peel_deletion, stages);
    return finish(std::move(c), std::move(stages), code);
}

Word vt_decode(const Word& r, std::size_t n, std::size_t a) {
    if (n < 1) throw ParameterError("VT decoding needs n >= 1");
    expect_length(r, n - 1, "received word");
    const std::size_t mod = n + 1;
    auto bits = r.bits();
    const std::size_t ones = r.weight();
    std::size_t sum = 0;
    for (std::size_t k = 0; k < bits.size(); ++k)
        if (bits[k]) sum = (sum + k + 1) % mod;
    const std::size_t deficiency = (a % mod + mod - sum) % mod;

    std::vector<std::uint8_t> out(bits.begin(), bits.end());
    if (deficiency <= ones) {
        // A 0 was lost; it sits with exactly `deficiency` ones to its right.
        std::size_t at = bits.size(), seen = 0;
        while (seen < deficiency) {
            --at;
            if (bits[at]) ++seen;
        }
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(at), std::uint8_t{0});
    } else {
        // A 1 was lost; it sits with exactly deficiency - ones - 1 zeros to its left.
        const std::size_t zeros_left = deficiency - ones - 1;
        if (zeros_left > bits.size() - ones)
            throw SyndromeError("no single-deletion preimage of " + r.to_string() + " has VT residue " +
                                std::to_string(a));
        std::size_t at = 0, seen = 0;
        while (seen < zeros_left) {
            if (!bits[at]) ++seen;
            ++at;
        }
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(at), std::uint8_t{1});
    }
    Word u(std::move(out));
    if (vt_syndrome(u) != a % mod)
        throw SyndromeError("no single-deletion preimage of " + r.to_string() + " has VT residue " + std::to_string(a));
    return u;
}

DecodeResult decode_dh_ddel(const ReadOut& reads, const HeadLayout& layout, std::size_t n, std::size_t d,
                            std::size_t t1, std::size_t a) {
    if (d < 1 || d >= n) throw ParameterError("deletion count must lie in [1, n)");
    const CodeSpec code = CodeSpec::c3_vt(n, d, t1, a);
    expect_heads(reads, d, "decode_dh_ddel");
    expect_gaps(layout, d, min_cascade_gap(d, t1), "decode_dh_ddel");
    for (const auto& h : reads.heads) expect_length(h, n - d, "head output");
    std::vector<Stage> stages;
    Word residual = cascade(reads.heads, d - 1, peel_deletion, stages);
    return finish(vt_decode(residual, n, a), std::move(stages), code);
}

DecodeResult decode_sticky(const ReadOut& reads, const HeadLayout& layout, std::size_t n, std::size_t t,
                           std::size_t d) {
    const CodeSpec code = CodeSpec::c1(n, t);
    expect_heads(reads, d + 1, "decode_sticky");
    expect_gaps(layout, d + 1, t, "decode_sticky");
    const std::size_t len = reads.heads.front().size();
    if (len < n) throw LengthError("sticky outputs cannot be shorter than the stored word");
    for (const auto& h : reads.heads) expect_length(h, len, "head output");
    std::vector<Stage> stages;
    Word c = sticky_cascade(reads.heads, n, stages);
    return finish(std::move(c), std::move(stages), code);
}

DecodeResult decode_2h_1poserr(const Word& h1, const Word& h2, std::size_t t, std::size_t n) {
    const CodeSpec code = CodeSpec::c1(n, t);
    expect_length(h2, h1.size(), "head 2");
    if (h1.size() == n) return finish(h1, {}, code);
    if (h1.size() + 1 == n) return decode_2h_1del(h1, h2, t, n);
    if (h1.size() == n + 1) {
        Peeled p = peel_sticky(h1, h2);
        return finish(std::move(p.word), {{1, p.j}}, code);
    }
    throw LengthError("head length " + std::to_string(h1.size()) + " is more than one away from n=" +
                      std::to_string(n));
}

namespace {

// True when one deletion and one sticky repeat at distinct cells of x,
// hitting every head at its own offset, turn x into `reads`. The pair shifts
// the cells between them by one, and the shift is invisible only inside a
// run (at most t1 long), so the earlier cell lies in [first - t1, first] and
// the later one in [last, last + t1], where [first, last] is the span on
// which x and some disagreeing head differ.
bool explains_mixed_pair(const Word& x, const ReadOut& reads, const HeadLayout& layout, std::size_t t1) {
    const std::size_t n = x.size();
    std::size_t head = 0;
    while (head < reads.heads.size() && reads.heads[head] == x) ++head;
    if (head == reads.heads.size()) return false;
    const Word& w = reads.heads[head];
    std::size_t lo = 0, hi = 0;
    for (std::size_t p = 1; p <= n; ++p)
        if (w.at(p) != x.at(p)) {
            if (lo == 0) lo = p;
            hi = p;
        }
    const std::size_t off = layout.offset(head);
    const auto first = static_cast<std::ptrdiff_t>(lo) - static_cast<std::ptrdiff_t>(off);
    const auto last = static_cast<std::ptrdiff_t>(hi) - static_cast<std::ptrdiff_t>(off);
    const auto slack = static_cast<std::ptrdiff_t>(t1);
    for (auto a = std::max<std::ptrdiff_t>(1, first - slack); a <= first; ++a)
        for (auto b = std::max(a + 1, last); b <= last + slack; ++b)
            for (int order = 0; order < 2; ++order) {
                const auto i = static_cast<std::size_t>(a), k = static_cast<std::size_t>(b);
                ErrorPattern p;
                p.events = order == 0 ? std::vector<Event>{Event::deletion(i), Event::sticky(k)}
                                      : std::vector<Event>{Event::sticky(i), Event::deletion(k)};
                try {
                    p.validate(n, layout);
                } catch (const PatternError&) {
                    continue;
                }
                if (read(x, layout, p) == reads) return true;
            }
    return false;
}

}  // namespace

DecodeResult decode_3h_2poserr(const ReadOut& reads, const HeadLayout& layout, std::size_t t1, std::size_t n) {
    const CodeSpec code = CodeSpec::c3(n, 2, t1);
    // Pure deletion reads only need the cascade distance; the rest need 3 t1 - 2.
    expect_gaps(layout, 3, min_cascade_gap(2, t1), "decode_3h_2poserr");
    expect_heads(reads, 3, "decode_3h_2poserr");
    const auto& h = reads.heads;
    const std::size_t len = h[0].size();
    for (const auto& w : h) expect_length(w, len, "head output");
    if (len + 2 < n || len > n + 2)
        throw LengthError("head length " + std::to_string(len) + " is more than two away from n=" + std::to_string(n));

    std::vector<Stage> stages;
    if (len + 2 == n || len + 1 == n) {
        Word c = cascade(h, n - len, peel_deletion, stages);
        return finish(std::move(c), std::move(stages), code);
    }
    expect_gaps(layout, 3, 3 * t1 - 2, "decode_3h_2poserr");
    if (len == n + 1) {
        Peeled p = peel_sticky(h[0], h[1]);
        return finish(std::move(p.word), {{1, p.j}}, code);
    }
    if (len == n + 2) {
        Word c = sticky_cascade(h, n, stages);
        return finish(std::move(c), std::move(stages), code);
    }

    // Same length: no error, or one deletion and one sticky repeat in either
    // order. A repeat inside the run the deletion shortened cancels it, so a
    // head may already show the codeword; head words are candidates too.
    if (h[0] == h[1] && h[1] == h[2]) return finish(Word(h[0]), {}, code);
    std::vector<DecodeResult> candidates;
    auto consider = [&](auto&& branch) {
        try {
            std::vector<Stage> st;
            Word c = branch(st);
            if (c.size() != n || !is_member(code, c)) return;
            for (const auto& r : candidates)
                if (r.codeword == c) return;
            candidates.push_back({std::move(c), std::move(st)});
        } catch (const DecodeError&) {
        }
    };
    consider([&](std::vector<Stage>& st) {
        Peeled a = peel_deletion(h[0], h[1]);
        Peeled b = peel_deletion(h[1], h[2]);
        Peeled c = peel_sticky(a.word, b.word);
        st = {{1, a.j}, {2, b.j}, {3, c.j}};
        return c.word;
    });
    consider([&](std::vector<Stage>& st) {
        Peeled a = peel_sticky(h[0], h[1], 1);
        Peeled b = peel_sticky(h[1], h[2], 1);
        Peeled c = peel_deletion(a.word, b.word);
        st = {{1, a.j}, {2, b.j}, {3, c.j}};
        return c.word;
    });
    for (const auto& w : h) consider([&](std::vector<Stage>&) { return w; });

    std::vector<DecodeResult> found;
    for (auto& r : candidates)
        if (explains_mixed_pair(r.codeword, reads, layout, t1)) found.push_back(std::move(r));
    if (found.empty()) throw DecodeFailure("no reconstruction branch produced a codeword of " + code.to_string());
    if (found.size() > 1)
        throw DecodeFailure("ambiguous reconstruction: " + found[0].codeword.to_string() + " vs " +
                            found[1].codeword.to_string());
    return std::move(found.front());
}

std::string_view decoder_name(DecoderId id) {
    switch (id) {
        case DecoderId::TwoHeadDeletion: return "2h-1del";
        case DecoderId::TwoHeadBurst: return "2h-burst";
        case DecoderId::TwoHeadBurstUpTo: return "2h-burst-upto";
        case DecoderId::MultiHeadDeletions: return "mh-ddel";
        case DecoderId::EqualHeadDeletionsVT: return "dh-ddel-vt";
        case DecoderId::Sticky: return "sticky";
        case DecoderId::TwoHeadPositionError: return "2h-1poserr";
        case DecoderId::ThreeHeadPositionErrors: return "3h-2poserr";
    }
    return "?";
}

std::vector<DecoderId> all_decoders() {
    return {DecoderId::TwoHeadDeletion,   DecoderId::TwoHeadBurst,
            DecoderId::TwoHeadBurstUpTo,  DecoderId::MultiHeadDeletions,
            DecoderId::EqualHeadDeletionsVT, DecoderId::Sticky,
            DecoderId::TwoHeadPositionError, DecoderId::ThreeHeadPositionErrors};
}

DecoderId parse_decoder(std::string_view name) {
    for (auto id : all_decoders())
        if (decoder_name(id) == name) return id;
    throw ParseError("unknown decoder '" + std::string(name) + "'");
}

DecoderId select_decoder(const CodeSpec& spec, const HeadLayout& layout, const ErrorClass& error_class) {
    using Kind = ErrorClass::Kind;
    const std::size_t m = layout.heads();
    const auto fam = spec.family;
    switch (error_class.kind) {
        case Kind::Deletions: {
            const std::size_t d = error_class.count;
            if (fam == Family::C1 && d == 1 && m == 2) return DecoderId::TwoHeadDeletion;
            if (fam == Family::C3 && spec.b == d && m == d + 1) return DecoderId::MultiHeadDeletions;
            if (fam == Family::C3_VT && spec.b == d && m == d) return DecoderId::EqualHeadDeletionsVT;
            break;
        }
        case Kind::Burst:
            if (fam == Family::C2 && spec.b == error_class.max_len && m == 2) return DecoderId::TwoHeadBurst;
            break;
        case Kind::BurstUpTo:
            if (fam == Family::C3 && spec.b == error_class.max_len && m == 2) return DecoderId::TwoHeadBurstUpTo;
            break;
        case Kind::Sticky:
            if (fam == Family::C1 && m == error_class.count + 1) return DecoderId::Sticky;
            break;
        case Kind::PositionErrors:
            if (fam == Family::C1 && error_class.count == 1 && m == 2) return DecoderId::TwoHeadPositionError;
            if (fam == Family::C3 && spec.b == 2 && error_class.count == 2 && m == 3)
                return DecoderId::ThreeHeadPositionErrors;
            break;
        case Kind::None: break;
    }
    throw ParameterError("no decoder covers code " + spec.to_string() + " with " + std::to_string(m) +
                         " heads and error class " + error_class.to_string());
}

DecodeResult run_decoder(DecoderId id, const CodeSpec& spec, const HeadLayout& layout, const ReadOut& reads) {
    const std::size_t n = spec.n;
    auto need = [&](Family f) {
        if (spec.family != f)
            throw ParameterError(std::string(decoder_name(id)) + " decodes " + std::string(family_name(f)) +
                                 " codes, not " + spec.to_string());
    };
    auto pair = [&]() -> std::pair<const Word&, const Word&> {
        expect_heads(reads, 2, decoder_name(id));
        if (layout.heads() != 2) throw ParameterError(std::string(decoder_name(id)) + " needs two heads");
        return {reads.heads[0], reads.heads[1]};
    };
    switch (id) {
        case DecoderId::TwoHeadDeletion: {
            need(Family::C1);
            auto [h1, h2] = pair();
            return decode_2h_1del(h1, h2, spec.t, n);
        }
        case DecoderId::TwoHeadBurst: {
            need(Family::C2);
            auto [h1, h2] = pair();
            return decode_2h_burst(h1, h2, spec.t, n, spec.b);
        }
        case DecoderId::TwoHeadBurstUpTo: {
            need(Family::C3);
            auto [h1, h2] = pair();
            return decode_2h_leq_burst(h1, h2, spec.t, n, spec.b);
        }
        case DecoderId::MultiHeadDeletions:
            need(Family::C3);
            return decode_mh_ddel(reads, layout, n, spec.b, spec.t);
        case DecoderId::EqualHeadDeletionsVT:
            need(Family::C3_VT);
            return decode_dh_ddel(reads, layout, n, spec.b, spec.t, spec.a);
        case DecoderId::Sticky:
            need(Family::C1);
            if (layout.heads() < 2) throw ParameterError("sticky decoding needs at least two heads");
            return decode_sticky(reads, layout, n, spec.t, layout.heads() - 1);
        case DecoderId::TwoHeadPositionError: {
            need(Family::C1);
            auto [h1, h2] = pair();
            return decode_2h_1poserr(h1, h2, spec.t, n);
        }
        case DecoderId::ThreeHeadPositionErrors:
            need(Family::C3);
            if (spec.b != 2) throw ParameterError("3h-2poserr decodes C3 codes with b = 2");
            return decode_3h_2poserr(reads, layout, spec.t, n);
    }
    throw ParameterError("unknown decoder");
}

}  // namespace rtm
