#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rtm/word.hpp"

namespace rtm {

/// Read heads along the track. Head h (0-based) sits offset(h) cells after
/// head 0; gaps are the distances between adjacent heads.
class HeadLayout {
public:
    HeadLayout() = default;
    explicit HeadLayout(std::vector<std::size_t> gaps);

    /// Parses a comma list such as "4,4"; the empty string is a single head.
    static HeadLayout parse(std::string_view gaps);

    std::size_t heads() const noexcept { return offsets_.size(); }
    const std::vector<std::size_t>& gaps() const noexcept { return gaps_; }
    std::size_t offset(std::size_t head) const { return offsets_.at(head); }
    /// Offset of the last head.
    std::size_t span() const noexcept { return offsets_.back(); }

    std::string to_string() const;

    friend bool operator==(const HeadLayout&, const HeadLayout&) = default;

private:
    std::vector<std::size_t> gaps_;
    std::vector<std::size_t> offsets_{0};
};

enum class EventKind { Deletion, Sticky };

/// One shift fault, located in head-0 coordinates of the stored word.
/// Deletion: cells pos..pos+len-1 are skipped. Sticky: cell pos is read len extra times.
struct Event {
    EventKind kind = EventKind::Deletion;
    std::size_t pos = 1;
    std::size_t len = 1;

    static Event deletion(std::size_t pos, std::size_t len = 1) { return {EventKind::Deletion, pos, len}; }
    static Event sticky(std::size_t pos, std::size_t len = 1) { return {EventKind::Sticky, pos, len}; }

    /// Last stored cell touched by the event.
    std::size_t last() const noexcept { return kind == EventKind::Deletion ? pos + len - 1 : pos; }

    friend bool operator==(const Event&, const Event&) = default;
};

struct ErrorPattern {
    std::vector<Event> events;

    std::size_t deleted() const noexcept;
    std::size_t inserted() const noexcept;

    /// Throws PatternError unless events are sorted, pairwise disjoint and
    /// every head's image lies inside a word of length n.
    void validate(std::size_t n, const HeadLayout& layout) const;

    friend bool operator==(const ErrorPattern&, const ErrorPattern&) = default;
};

struct ReadOut {
    std::vector<Word> heads;

    friend bool operator==(const ReadOut&, const ReadOut&) = default;
};

/// All heads read `c` while every event of `pattern` hits each head at its
/// own offset. Event positions always refer to the stored word.
ReadOut read(const Word& c, const HeadLayout& layout, const ErrorPattern& pattern);

/// A family of error patterns.
///
///   none            no error
///   del:D           exactly D single deletions
///   burst:B         one burst of exactly B deletions
///   burst-upto:B    no error, or one burst of 1..B deletions
///   sticky:D:S      up to D sticky bursts, each of 1..S repeats
///   poserr:K        up to K position errors: single deletions and sticky
///                   repeats, a sticky burst of length s counting as s errors
struct ErrorClass {
    enum class Kind { None, Deletions, Burst, BurstUpTo, Sticky, PositionErrors };

    Kind kind = Kind::None;
    std::size_t count = 0;    // D, or K for poserr, 1 for bursts
    std::size_t max_len = 1;  // B or S

    static ErrorClass none() { return {}; }
    static ErrorClass deletions(std::size_t d) { return {Kind::Deletions, d, 1}; }
    static ErrorClass burst(std::size_t b) { return {Kind::Burst, 1, b}; }
    static ErrorClass burst_upto(std::size_t b) { return {Kind::BurstUpTo, 1, b}; }
    static ErrorClass sticky(std::size_t d, std::size_t s) { return {Kind::Sticky, d, s}; }
    static ErrorClass position_errors(std::size_t k) { return {Kind::PositionErrors, k, k}; }

    static ErrorClass parse(std::string_view text);
    std::string to_string() const;

    /// Membership of an (already structurally valid) pattern in the class.
    bool contains(const ErrorPattern& pattern) const;

    friend bool operator==(const ErrorClass&, const ErrorClass&) = default;
};

/// Uniform sampler over the valid patterns of a class for fixed n and layout.
/// Owns its generator; use one sampler per worker.
class PatternSampler {
public:
    PatternSampler(std::uint64_t seed, std::size_t n, HeadLayout layout, ErrorClass error_class);

    ErrorPattern operator()();

private:
    std::mt19937_64 rng_;
    std::size_t n_;
    HeadLayout layout_;
    ErrorClass class_;
    std::vector<double> size_weights_;  // chooses the number of events
    std::size_t first_size_ = 0;
};

/// One pattern drawn by a fresh sampler seeded with `seed`.
ErrorPattern random_pattern(std::uint64_t seed, std::size_t n, const HeadLayout& layout, const ErrorClass& error_class);

void to_json(nlohmann::json& j, const Event& e);
void from_json(const nlohmann::json& j, Event& e);
void to_json(nlohmann::json& j, const ErrorPattern& p);
void from_json(const nlohmann::json& j, ErrorPattern& p);
void to_json(nlohmann::json& j, const HeadLayout& layout);
void from_json(const nlohmann::json& j, HeadLayout& layout);

}  // namespace rtm
