#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "rtm/channel.hpp"
#include "rtm/constraints.hpp"
#include "rtm/decoders.hpp"
#include "rtm/oracle.hpp"

namespace rtm::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kDecodeFailure = 3,
    kVerifyFailure = 4,
    kBudget = 5,
};

/// Entry point shared by the executable and the tests.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

struct SimulationFailure {
    std::uint64_t trial = 0;
    std::string codeword;
    ErrorPattern pattern;
    std::string got;
};

struct SimulationReport {
    std::string spec;
    HeadLayout layout;
    std::string error_class;
    std::string decoder;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::vector<SimulationFailure> failures;  // first 100, by trial index
};

void to_json(nlohmann::json& j, const SimulationReport& r);

/// Randomised round trip: draw a uniform codeword index, unrank it, read it
/// through a random pattern of the class, decode and compare. Trial k uses a
/// generator derived from (seed, k), so results do not depend on execution.
SimulationReport simulate(const CodeSpec& spec, const HeadLayout& layout, const ErrorClass& error_class,
                          DecoderId decoder, std::uint64_t seed, std::uint64_t trials,
                          Execution execution = Execution::Parallel);

}  // namespace rtm::cli
