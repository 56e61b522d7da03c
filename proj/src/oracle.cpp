#include "rtm/oracle.hpp"

#include <algorithm>
#include <cstddef>
#include <unordered_map>

#include "rtm/codebook.hpp"
#include "rtm/errors.hpp"

namespace rtm {

namespace {

// Membership straight from the definitions; shares only bitword primitives
// with the constraints module.
bool member_by_definition(const CodeSpec& spec, const Word& u) {
    for (auto l : spec.periods())
        if (longest_periodic(u, l) > spec.t) return false;
    if (spec.family == Family::C3_VT) {
        std::size_t sum = 0;
        for (std::size_t i = 1; i <= u.size(); ++i) sum += i * u.at(i);
        if (sum % (u.size() + 1) != spec.a) return false;
    }
    return true;
}

void check_budget(std::size_t n, std::size_t patterns, const VerifyOptions& options) {
    if (n >= 63) throw BudgetExceeded("word length " + std::to_string(n) + " cannot be enumerated");
    const std::uint64_t words = std::uint64_t{1} << n;
    const std::uint64_t per = std::max<std::uint64_t>(patterns, 1);
    if (words > options.budget / per)
        throw BudgetExceeded("2^" + std::to_string(n) + " words" +
                             (patterns ? " x " + std::to_string(patterns) + " patterns" : std::string()) +
                             " exceeds the enumeration budget of " + std::to_string(options.budget));
}

bool canonical_less(const Failure& a, const Failure& b) {
    if (a.subject != b.subject) return a.subject < b.subject;
    return a.pattern.dump() < b.pattern.dump();
}

// Runs body(i, sink) for i in [0, count). The serial loop is the reference;
// the OpenMP loop must agree with it once failures are sorted canonically.
template <typename Body>
std::vector<Failure> collect(std::size_t count, Execution execution, Body body) {
    std::vector<Failure> all;
    if (execution == Execution::Serial) {
        for (std::size_t i = 0; i < count; ++i) body(i, all);
        return all;
    }
    const auto total = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel
    {
        std::vector<Failure> local;
#pragma omp for schedule(dynamic, 8)
        for (std::ptrdiff_t i = 0; i < total; ++i) body(static_cast<std::size_t>(i), local);
#pragma omp critical(rtm_oracle_merge)
        all.insert(all.end(), std::make_move_iterator(local.begin()), std::make_move_iterator(local.end()));
    }
    return all;
}

void finalize(VerifyReport& report, std::vector<Failure> failures, const VerifyOptions& options) {
    std::sort(failures.begin(), failures.end(), canonical_less);
    report.failure_count = failures.size();
    report.pass = failures.empty();
    if (failures.size() > options.max_failures) failures.resize(options.max_failures);
    report.failures = std::move(failures);
}

std::string read_key(const ReadOut& r) {
    std::string key;
    for (const auto& h : r.heads) {
        key += h.to_string();
        key += '|';
    }
    return key;
}

struct Variant {
    EventKind kind;
    std::size_t len;
    std::size_t weight;
};

}  // namespace

void to_json(nlohmann::json& j, const VerifyReport& r) {
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : r.failures)
        failures.push_back({{"codeword", f.subject}, {"pattern", f.pattern}, {"got", f.got}});
    j = nlohmann::json{{"spec", r.spec},   {"layout", r.layout},
                       {"class", r.error_class}, {"trials", r.trials},
                       {"pass", r.pass},   {"failure_count", r.failure_count},
                       {"failures", failures}};
}

std::vector<Word> enumerate_codewords(const CodeSpec& spec) {
    spec.validate();
    if (spec.n >= 40) throw BudgetExceeded("cannot enumerate codewords of length " + std::to_string(spec.n));
    std::vector<Word> out;
    const std::uint64_t total = std::uint64_t{1} << spec.n;
    for (std::uint64_t x = 0; x < total; ++x) {
        Word u = Word::from_integer(x, spec.n);
        if (member_by_definition(spec, u)) out.push_back(std::move(u));
    }
    return out;
}

std::vector<ErrorPattern> enumerate_patterns(std::size_t n, const HeadLayout& layout, const ErrorClass& error_class) {
    using Kind = ErrorClass::Kind;
    std::vector<Variant> variants;
    std::size_t min_events = 0, max_events = 0;
    std::size_t max_weight = static_cast<std::size_t>(-1);
    switch (error_class.kind) {
        case Kind::None: break;
        case Kind::Deletions:
            min_events = max_events = error_class.count;
            variants.push_back({EventKind::Deletion, 1, 1});
            break;
        case Kind::Burst:
            min_events = max_events = 1;
            variants.push_back({EventKind::Deletion, error_class.max_len, 1});
            break;
        case Kind::BurstUpTo:
            max_events = 1;
            for (std::size_t l = 1; l <= error_class.max_len; ++l) variants.push_back({EventKind::Deletion, l, 1});
            break;
        case Kind::Sticky:
            max_events = error_class.count;
            for (std::size_t l = 1; l <= error_class.max_len; ++l) variants.push_back({EventKind::Sticky, l, 1});
            break;
        case Kind::PositionErrors:
            max_events = max_weight = error_class.count;
            variants.push_back({EventKind::Deletion, 1, 1});
            for (std::size_t l = 1; l <= error_class.count; ++l) variants.push_back({EventKind::Sticky, l, l});
            break;
    }

    std::vector<ErrorPattern> out;
    ErrorPattern current;
    const std::size_t span = layout.span();
    auto recurse = [&](auto&& self, std::size_t first_pos, std::size_t weight) -> void {
        if (current.events.size() >= min_events) out.push_back(current);
        if (current.events.size() == max_events) return;
        for (std::size_t pos = first_pos; pos + span <= n; ++pos) {
            for (const auto& v : variants) {
                if (weight + v.weight > max_weight) continue;
                Event e{v.kind, pos, v.len};
                if (e.last() + span > n) continue;
                current.events.push_back(e);
                self(self, e.last() + 1, weight + v.weight);
                current.events.pop_back();
            }
        }
    };
    recurse(recurse, 1, 0);
    return out;
}

ReadOut apply_pattern(const Word& c, const HeadLayout& layout, const ErrorPattern& pattern) {
    ReadOut out;
    for (std::size_t h = 0; h < layout.heads(); ++h) {
        const std::size_t off = layout.offset(h);
        Word u = c;
        // Right to left, so earlier events still see stored-word coordinates.
        for (auto it = pattern.events.rbegin(); it != pattern.events.rend(); ++it) {
            if (it->kind == EventKind::Deletion)
                u = delete_burst(u, it->pos + off, it->len);
            else
                u = sticky_insert(u, it->pos + off, it->len);
        }
        out.heads.push_back(std::move(u));
    }
    return out;
}

VerifyReport verify_decoder(const CodeSpec& spec, const HeadLayout& layout, const ErrorClass& error_class,
                            const DecoderFn& decoder, const VerifyOptions& options) {
    spec.validate();
    check_budget(spec.n, 0, options);
    const auto patterns = enumerate_patterns(spec.n, layout, error_class);
    check_budget(spec.n, patterns.size(), options);
    const auto codewords = enumerate_codewords(spec);

    VerifyReport report;
    report.spec = spec.to_string();
    report.layout = layout;
    report.error_class = error_class.to_string();
    report.trials = static_cast<std::uint64_t>(codewords.size()) * patterns.size();

    auto failures = collect(codewords.size(), options.execution, [&](std::size_t i, std::vector<Failure>& sink) {
        const Word& c = codewords[i];
        for (const auto& p : patterns) {
            std::string got;
            try {
                DecodeResult r = decoder(apply_pattern(c, layout, p));
                if (r.codeword == c) continue;
                got = r.codeword.to_string();
            } catch (const std::exception& e) {
                got = std::string("error: ") + e.what();
            }
            sink.push_back({c.to_string(), p, std::move(got)});
        }
    });
    finalize(report, std::move(failures), options);
    return report;
}

VerifyReport verify_decoder(const CodeSpec& spec, const HeadLayout& layout, const ErrorClass& error_class,
                            DecoderId decoder, const VerifyOptions& options) {
    DecoderFn fn = [=](const ReadOut& reads) { return run_decoder(decoder, spec, layout, reads); };
    return verify_decoder(spec, layout, error_class, fn, options);
}

VerifyReport verify_uniqueness(const CodeSpec& spec, const HeadLayout& layout, const ErrorClass& error_class,
                               const VerifyOptions& options) {
    spec.validate();
    check_budget(spec.n, 0, options);
    const auto patterns = enumerate_patterns(spec.n, layout, error_class);
    check_budget(spec.n, patterns.size(), options);
    const auto codewords = enumerate_codewords(spec);

    VerifyReport report;
    report.spec = spec.to_string();
    report.layout = layout;
    report.error_class = error_class.to_string();
    report.trials = static_cast<std::uint64_t>(codewords.size()) * patterns.size();

    std::vector<std::vector<std::string>> keys(codewords.size());
    collect(codewords.size(), options.execution, [&](std::size_t i, std::vector<Failure>&) {
        keys[i].reserve(patterns.size());
        for (const auto& p : patterns) keys[i].push_back(read_key(apply_pattern(codewords[i], layout, p)));
    });

    // Serial merge in codeword order keeps witnesses deterministic.
    std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> owner;
    std::vector<Failure> failures;
    for (std::size_t i = 0; i < codewords.size(); ++i) {
        for (std::size_t k = 0; k < patterns.size(); ++k) {
            auto [it, inserted] = owner.emplace(keys[i][k], std::make_pair(i, k));
            if (inserted || it->second.first == i) continue;
            const auto [other, other_pattern] = it->second;
            nlohmann::json witness = patterns[other_pattern];
            failures.push_back({codewords[i].to_string(), patterns[k],
                                "collides with " + codewords[other].to_string() + " under " + witness.dump()});
        }
        keys[i].clear();
        keys[i].shrink_to_fit();
    }
    finalize(report, std::move(failures), options);
    return report;
}

VerifyReport verify_counts(std::size_t n_max, std::size_t b_max, const VerifyOptions& options) {
    if (n_max < 1 || b_max < 1) throw ParameterError("verify_counts needs n_max >= 1 and b_max >= 1");
    check_budget(n_max, 1, options);

    VerifyReport report;
    report.spec = "counts:n<=" + std::to_string(n_max) + ":b<=" + std::to_string(b_max);
    std::vector<Failure> failures;
    auto check = [&](const std::string& subject, const std::string& what, const BigInt& expected,
                     const BigInt& actual) {
        ++report.trials;
        if (expected != actual)
            failures.push_back({subject, what, "enumerated " + expected.str() + ", computed " + actual.str()});
    };

    // zero_runs[m][z]: words of length m whose longest zero run is z.
    std::vector<std::vector<std::uint64_t>> zero_runs(n_max + 1);
    zero_runs[0] = {1};

    for (std::size_t n = 1; n <= n_max; ++n) {
        const std::size_t bs = std::min(b_max, n);
        // periodic[l][L]: longest period-l subvector is L; nested[l][L]: max over l' <= l.
        using Hist = std::vector<std::vector<std::uint64_t>>;
        Hist periodic(bs + 1, std::vector<std::uint64_t>(n + 1)), nested = periodic;
        std::vector<std::uint64_t> zeros(n + 1);
        const std::uint64_t total = std::uint64_t{1} << n;

        auto tally = [&](std::uint64_t x, Hist& per, Hist& nest, std::vector<std::uint64_t>& zr) {
            const Word u = Word::from_integer(x, n);
            std::size_t running = 0;
            for (std::size_t l = 1; l <= bs; ++l) {
                const std::size_t len = longest_periodic(u, l);
                running = std::max(running, len);
                ++per[l][len];
                ++nest[l][running];
            }
            ++zr[longest_zero_run(u)];
        };
        if (options.execution == Execution::Serial) {
            for (std::uint64_t x = 0; x < total; ++x) tally(x, periodic, nested, zeros);
        } else {
#pragma omp parallel
            {
                Hist per = periodic, nest = nested;
                std::vector<std::uint64_t> zr(n + 1);
#pragma omp for schedule(static)
                for (std::int64_t x = 0; x < static_cast<std::int64_t>(total); ++x)
                    tally(static_cast<std::uint64_t>(x), per, nest, zr);
#pragma omp critical(rtm_counts_merge)
                {
                    for (std::size_t l = 1; l <= bs; ++l)
                        for (std::size_t L = 0; L <= n; ++L) {
                            periodic[l][L] += per[l][L];
                            nested[l][L] += nest[l][L];
                        }
                    for (std::size_t z = 0; z <= n; ++z) zeros[z] += zr[z];
                }
            }
        }
        zero_runs[n] = zeros;

        auto upto = [](const std::vector<std::uint64_t>& h, std::size_t limit) {
            BigInt s = 0;
            for (std::size_t k = 0; k < h.size() && k <= limit; ++k) s += h[k];
            return s;
        };

        for (std::size_t b = 1; b <= bs; ++b) {
            BigInt previous_c3 = 0;
            for (std::size_t t = b; t <= n; ++t) {
                const BigInt enum_c2 = upto(periodic[b], t);
                const BigInt enum_c3 = upto(nested[b], t);
                const BigInt enum_r = upto(zero_runs[n - b], t - b);
                const CodeSpec c2 = CodeSpec::c2(n, b, t);
                const CodeSpec c3 = CodeSpec::c3(n, b, t);
                const std::string s2 = c2.to_string(), s3 = c3.to_string();
                const BigInt pow_b = BigInt(1) << b;

                check(s2, "count", enum_c2, count(c2));
                check(s2, "automaton", enum_c2, count_paths(ConstraintAutomaton({b}, t), n));
                check(s2, "period-check product", enum_c2, pow_b * enum_r);
                check(s2, "C1 reduction", enum_c2, pow_b * count(CodeSpec::c1(n - b + 1, t - b + 1)) / 2);
                if (b == 1) check(CodeSpec::c1(n, t).to_string(), "count", enum_c2, count(CodeSpec::c1(n, t)));

                const BigInt dp_c3 = count(c3);
                check(s3, "count", enum_c3, dp_c3);
                if (t > b) {
                    ++report.trials;
                    if (!meets_lower_bound_c3(dp_c3, n, b, t))
                        failures.push_back({s3, "lower bound", "count " + dp_c3.str() + " below 2^n(1 - n 2^-(t-b))"});
                }
                ++report.trials;
                if (dp_c3 < previous_c3)
                    failures.push_back({s3, "monotone in t", "count " + dp_c3.str() + " < " + previous_c3.str()});
                previous_c3 = dp_c3;
            }
        }
    }
    finalize(report, std::move(failures), options);
    return report;
}

}  // namespace rtm
