#include "rtm/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "rtm/codebook.hpp"
#include "rtm/errors.hpp"

namespace rtm::cli {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

BigInt random_below(const BigInt& bound, std::mt19937_64& rng) {
    const std::size_t bits = boost::multiprecision::msb(bound) + 1;
    const std::size_t words = (bits + 63) / 64;
    while (true) {
        BigInt x = 0;
        for (std::size_t k = 0; k < words; ++k) {
            x <<= 64;
            x |= BigInt(rng());
        }
        x >>= words * 64 - bits;
        if (x < bound) return x;
    }
}

std::vector<Word> read_words(std::istream& in) {
    std::vector<Word> words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        words.push_back(Word::from_string(line));
    }
    return words;
}

HeadLayout layout_from(const std::string& gaps, const std::string& layout_json) {
    if (!layout_json.empty()) return nlohmann::json::parse(layout_json).get<HeadLayout>();
    return HeadLayout::parse(gaps);
}

int report_error(std::ostream& err, int code, std::string_view kind, const std::exception& e) {
    err << kind << ": " << e.what() << '\n';
    return code;
}

}  // namespace

void to_json(nlohmann::json& j, const SimulationReport& r) {
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : r.failures)
        failures.push_back({{"trial", f.trial}, {"codeword", f.codeword}, {"pattern", f.pattern}, {"got", f.got}});
    j = nlohmann::json{{"spec", r.spec},         {"layout", r.layout},   {"class", r.error_class},
                       {"decoder", r.decoder},   {"seed", r.seed},       {"trials", r.trials},
                       {"successes", r.successes}, {"failures", failures}};
}

SimulationReport simulate(const CodeSpec& spec, const HeadLayout& layout, const ErrorClass& error_class,
                          DecoderId decoder, std::uint64_t seed, std::uint64_t trials, Execution execution) {
    if (trials < 1) throw ParameterError("simulate needs at least one trial");
    const Codebook book(spec);
    if (book.size() == 0) throw DomainError("code " + spec.to_string() + " is empty");
    // Fails fast on unsatisfiable classes.
    PatternSampler probe(seed, spec.n, layout, error_class);

    SimulationReport report;
    report.spec = spec.to_string();
    report.layout = layout;
    report.error_class = error_class.to_string();
    report.decoder = std::string(decoder_name(decoder));
    report.seed = seed;
    report.trials = trials;

    std::vector<std::uint8_t> ok(trials, 0);
    std::vector<SimulationFailure> failed(trials);
    auto trial = [&](std::uint64_t k) {
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(k)));
        const Word c = book.unrank(random_below(book.size(), rng));
        PatternSampler sampler(rng(), spec.n, layout, error_class);
        const ErrorPattern pattern = sampler();
        std::string got;
        try {
            DecodeResult r = run_decoder(decoder, spec, layout, read(c, layout, pattern));
            if (r.codeword == c) {
                ok[k] = 1;
                return;
            }
            got = r.codeword.to_string();
        } catch (const std::exception& e) {
            got = std::string("error: ") + e.what();
        }
        failed[k] = {k, c.to_string(), pattern, std::move(got)};
    };

    if (execution == Execution::Serial) {
        for (std::uint64_t k = 0; k < trials; ++k) trial(k);
    } else {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(trials); ++k) trial(static_cast<std::uint64_t>(k));
    }
    for (std::uint64_t k = 0; k < trials; ++k) {
        if (ok[k])
            ++report.successes;
        else if (report.failures.size() < 100)
            report.failures.push_back(std::move(failed[k]));
    }
    return report;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-head position-error-correcting codes for racetrack memories", "rtmcodes"};
    app.require_subcommand(1);

    std::string spec_text, gaps, layout_json, class_text = "del:1", decoder_text, index_text, message_bits,
                                               heads_file, mode = "decoder";
    std::vector<std::string> heads_text;
    std::uint64_t seed = 1, trials = 1, budget = VerifyOptions{}.budget;
    std::size_t max_n = 18, max_b = 3;
    bool json = false, serial = false;

    auto* encode = app.add_subcommand("encode", "Map a message index to its codeword");
    encode->add_option("--spec", spec_text, "Code spec, e.g. C1:9:3")->required();
    auto* index_opt = encode->add_option("--index", index_text, "Codeword index (decimal)");
    encode->add_option("--message", message_bits, "Message bits, read as a big-endian index")->excludes(index_opt);

    auto* decode = app.add_subcommand("decode", "Recover the stored word from head outputs");
    decode->add_option("--spec", spec_text)->required();
    decode->add_option("--gaps", gaps, "Comma-separated head gaps");
    decode->add_option("--layout", layout_json, R"(Layout JSON, e.g. {"gaps":[4,4]})");
    decode->add_option("--class", class_text, "Error class (del:D, burst:B, burst-upto:B, sticky:D:S, poserr:K, none)");
    decode->add_option("--decoder", decoder_text, "Force a decoder instead of choosing one from spec/layout/class");
    decode->add_option("--head", heads_text, "Head output, first head first (repeatable)");
    decode->add_option("--heads-file", heads_file, "File with one head output per line");
    decode->add_flag("--json", json, "Print JSON with stage diagnostics");

    auto* sim = app.add_subcommand("simulate", "Randomised encode/read/decode round trips");
    sim->add_option("--spec", spec_text)->required();
    sim->add_option("--gaps", gaps);
    sim->add_option("--layout", layout_json);
    sim->add_option("--class", class_text);
    sim->add_option("--decoder", decoder_text);
    sim->add_option("--seed", seed);
    sim->add_option("--trials", trials)->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
    sim->add_flag("--serial", serial, "Run trials on one thread");

    auto* cnt = app.add_subcommand("count", "Exact codebook size");
    cnt->add_option("--spec", spec_text)->required();

    auto* red = app.add_subcommand("redundancy", "n - log2(codebook size)");
    red->add_option("--spec", spec_text)->required();

    auto* ver = app.add_subcommand("verify", "Exhaustive small-scale verification");
    ver->add_option("--mode", mode, "decoder | uniqueness | counts")
        ->check(CLI::IsMember({"decoder", "uniqueness", "counts"}));
    ver->add_option("--spec", spec_text);
    ver->add_option("--gaps", gaps);
    ver->add_option("--layout", layout_json);
    ver->add_option("--class", class_text);
    ver->add_option("--decoder", decoder_text);
    ver->add_option("--budget", budget, "Maximum 2^n x patterns");
    ver->add_option("--max-n", max_n, "Largest n for --mode counts");
    ver->add_option("--max-b", max_b, "Largest b for --mode counts");
    ver->add_flag("--serial", serial, "Use the serial reference loop");

    auto* list = app.add_subcommand("list", "List code families, error classes and decoders");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage: " << e.what() << '\n';
        return kUsage;
    }

    const Execution execution = serial ? Execution::Serial : Execution::Parallel;
    try {
        if (*list) {
            out << "families: C1:n:t C2:n:b:t C3:n:b:t C3_VT:n:b:t:a\n"
                << "classes: none del:D burst:B burst-upto:B sticky:D:S poserr:K\n"
                << "decoders:";
            for (auto id : all_decoders()) out << ' ' << decoder_name(id);
            out << '\n';
            return kOk;
        }

        if (*encode) {
            const CodeSpec spec = CodeSpec::parse(spec_text);
            BigInt index = 0;
            if (!message_bits.empty()) {
                for (char ch : message_bits) {
                    if (ch != '0' && ch != '1') throw ParseError("message must be a 0/1 string");
                    index = (index << 1) | (ch - '0');
                }
            } else {
                if (index_text.empty() || index_text.find_first_not_of("0123456789") != std::string::npos)
                    throw ParseError("--index needs a non-negative decimal integer");
                index = BigInt(index_text);
            }
            const Codebook book(spec);
            out << book.unrank(index) << '\n';
            return kOk;
        }

        if (*cnt) {
            out << count(CodeSpec::parse(spec_text)).str() << '\n';
            return kOk;
        }

        if (*red) {
            out << std::fixed << std::setprecision(6) << redundancy(CodeSpec::parse(spec_text)) << '\n';
            return kOk;
        }

        if (*decode) {
            const CodeSpec spec = CodeSpec::parse(spec_text);
            const HeadLayout layout = layout_from(gaps, layout_json);
            const ErrorClass error_class = ErrorClass::parse(class_text);
            ReadOut reads;
            for (const auto& h : heads_text) reads.heads.push_back(Word::from_string(h));
            if (!heads_file.empty()) {
                std::ifstream f(heads_file);
                if (!f) throw ParameterError("cannot open heads file '" + heads_file + "'");
                for (auto& w : read_words(f)) reads.heads.push_back(std::move(w));
            }
            if (reads.heads.empty()) reads.heads = read_words(in);
            if (reads.heads.size() != layout.heads())
                throw ParameterError("got " + std::to_string(reads.heads.size()) + " head outputs for a layout of " +
                                     std::to_string(layout.heads()) + " heads");

            std::string decoder_label = "identity";
            DecodeResult result;
            try {
                if (error_class.kind == ErrorClass::Kind::None && decoder_text.empty()) {
                    for (const auto& h : reads.heads)
                        if (h != reads.heads.front()) throw DecodeFailure("error-free heads must agree");
                    if (reads.heads.front().size() != spec.n || !is_member(spec, reads.heads.front()))
                        throw ConstraintViolation(reads.heads.front().to_string() + " is not a codeword of " +
                                                  spec.to_string());
                    result.codeword = reads.heads.front();
                } else {
                    const DecoderId id =
                        decoder_text.empty() ? select_decoder(spec, layout, error_class) : parse_decoder(decoder_text);
                    decoder_label = std::string(decoder_name(id));
                    result = run_decoder(id, spec, layout, reads);
                }
            } catch (const DecodeError& e) {
                if (json) {
                    out << nlohmann::json{{"error", "decode-failure"}, {"decoder", decoder_label}, {"reason", e.what()}}
                               .dump()
                        << '\n';
                }
                return report_error(err, kDecodeFailure, "decode-failure", e);
            }
            if (json) {
                nlohmann::json stages = nlohmann::json::array();
                for (const auto& s : result.diagnostics) stages.push_back({{"stage", s.stage}, {"j", s.j}});
                out << nlohmann::json{{"codeword", result.codeword.to_string()},
                                      {"decoder", decoder_label},
                                      {"stages", stages}}
                           .dump()
                    << '\n';
            } else {
                out << result.codeword << '\n';
            }
            return kOk;
        }

        if (*sim) {
            const CodeSpec spec = CodeSpec::parse(spec_text);
            const HeadLayout layout = layout_from(gaps, layout_json);
            const ErrorClass error_class = ErrorClass::parse(class_text);
            const DecoderId id =
                decoder_text.empty() ? select_decoder(spec, layout, error_class) : parse_decoder(decoder_text);
            const auto start = std::chrono::steady_clock::now();
            SimulationReport report = simulate(spec, layout, error_class, id, seed, trials, execution);
            const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
            out << nlohmann::json(report).dump() << '\n';
            err << "simulate: " << report.successes << "/" << report.trials << " trials succeeded in " << ms.count()
                << " ms\n";
            return report.successes == report.trials ? kOk : kVerifyFailure;
        }

        if (*ver) {
            VerifyOptions options;
            options.budget = budget;
            options.execution = execution;
            VerifyReport report;
            try {
                if (mode == "counts") {
                    report = verify_counts(max_n, max_b, options);
                } else {
                    if (spec_text.empty()) throw ParameterError("--spec is required for --mode " + mode);
                    const CodeSpec spec = CodeSpec::parse(spec_text);
                    const HeadLayout layout = layout_from(gaps, layout_json);
                    const ErrorClass error_class = ErrorClass::parse(class_text);
                    if (mode == "uniqueness") {
                        report = verify_uniqueness(spec, layout, error_class, options);
                    } else {
                        const DecoderId id = decoder_text.empty() ? select_decoder(spec, layout, error_class)
                                                                  : parse_decoder(decoder_text);
                        report = verify_decoder(spec, layout, error_class, id, options);
                    }
                }
            } catch (const BudgetExceeded& e) {
                out << nlohmann::json{{"error", "budget-exceeded"}, {"reason", e.what()}}.dump() << '\n';
                return report_error(err, kBudget, "budget-exceeded", e);
            }
            out << nlohmann::json(report).dump() << '\n';
            return report.pass ? kOk : kVerifyFailure;
        }
    } catch (const DecodeError& e) {
        return report_error(err, kDecodeFailure, "decode-failure", e);
    } catch (const BudgetExceeded& e) {
        return report_error(err, kBudget, "budget-exceeded", e);
    } catch (const Error& e) {
        return report_error(err, kUsage, "error", e);
    } catch (const nlohmann::json::exception& e) {
        return report_error(err, kUsage, "error", e);
    } catch (const std::runtime_error& e) {
        // boost::multiprecision reports malformed integers this way
        return report_error(err, kUsage, "error", e);
    }
    return kUsage;
}

}  // namespace rtm::cli
