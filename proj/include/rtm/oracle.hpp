#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rtm/channel.hpp"
#include "rtm/constraints.hpp"
#include "rtm/decoders.hpp"

namespace rtm {

enum class Execution { Serial, Parallel };

struct VerifyOptions {
    /// Upper bound on 2^n times the number of patterns; larger sweeps are refused.
    std::uint64_t budget = std::uint64_t{1} << 26;
    Execution execution = Execution::Parallel;
    /// Failures kept in the report after canonical sorting; failure_count keeps the total.
    std::size_t max_failures = 100;
};

struct Failure {
    std::string subject;     // codeword, or code spec for counting checks
    nlohmann::json pattern;  // error pattern, or the name of the failed check
    std::string got;

    friend bool operator==(const Failure&, const Failure&) = default;
};

struct VerifyReport {
    nlohmann::json spec;
    nlohmann::json layout;
    nlohmann::json error_class;
    std::uint64_t trials = 0;
    bool pass = true;
    std::uint64_t failure_count = 0;
    std::vector<Failure> failures;
};

void to_json(nlohmann::json& j, const VerifyReport& r);

using DecoderFn = std::function<DecodeResult(const ReadOut&)>;

/// Every codeword of `spec` in lexicographic order, by brute force over {0,1}^n.
std::vector<Word> enumerate_codewords(const CodeSpec& spec);

/// Every valid pattern of the class for word length n and this layout.
std::vector<ErrorPattern> enumerate_patterns(std::size_t n, const HeadLayout& layout, const ErrorClass& error_class);

/// Reference channel built only from delete_burst and sticky_insert.
ReadOut apply_pattern(const Word& c, const HeadLayout& layout, const ErrorPattern& pattern);

/// Runs every codeword through every pattern of the class and the decoder.
VerifyReport verify_decoder(const CodeSpec& spec, const HeadLayout& layout, const ErrorClass& error_class,
                            const DecoderFn& decoder, const VerifyOptions& options = {});
VerifyReport verify_decoder(const CodeSpec& spec, const HeadLayout& layout, const ErrorClass& error_class,
                            DecoderId decoder, const VerifyOptions& options = {});

/// Checks that distinct codewords never share a read-out under the class.
/// Each collision is reported with both codewords and their patterns.
VerifyReport verify_uniqueness(const CodeSpec& spec, const HeadLayout& layout, const ErrorClass& error_class,
                               const VerifyOptions& options = {});

/// Enumerated cardinalities against count(), the automaton, the period-check
/// product identity, the C1 reduction and the C3 lower bound, for all
/// n <= n_max, b <= b_max, b <= t <= n.
VerifyReport verify_counts(std::size_t n_max, std::size_t b_max, const VerifyOptions& options = {});

}  // namespace rtm
