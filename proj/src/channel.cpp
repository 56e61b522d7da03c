#include "rtm/channel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "rtm/errors.hpp"

namespace rtm {

namespace {

std::size_t parse_count(std::string_view field, std::string_view whole) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError("bad number '" + std::string(field) + "' in '" + std::string(whole) + "'");
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

bool structurally_valid(const ErrorPattern& p, std::size_t n, const HeadLayout& layout) {
    const std::size_t span = layout.span();
    for (std::size_t k = 0; k < p.events.size(); ++k) {
        const Event& e = p.events[k];
        if (e.pos < 1 || e.len < 1) return false;
        if (e.last() + span > n) return false;
        if (k > 0 && e.pos <= p.events[k - 1].last()) return false;
    }
    return true;
}

}  // namespace

HeadLayout::HeadLayout(std::vector<std::size_t> gaps) : gaps_(std::move(gaps)) {
    offsets_.assign(1, 0);
    for (auto g : gaps_) {
        if (g < 1) throw ParameterError("head gaps must be >= 1");
        offsets_.push_back(offsets_.back() + g);
    }
}

HeadLayout HeadLayout::parse(std::string_view gaps) {
    if (gaps.empty()) return HeadLayout{};
    std::vector<std::size_t> values;
    for (auto part : split(gaps, ',')) values.push_back(parse_count(part, gaps));
    return HeadLayout(std::move(values));
}

std::string HeadLayout::to_string() const {
    std::string out;
    for (std::size_t k = 0; k < gaps_.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(gaps_[k]);
    }
    return out;
}

std::size_t ErrorPattern::deleted() const noexcept {
    std::size_t total = 0;
    for (const auto& e : events)
        if (e.kind == EventKind::Deletion) total += e.len;
    return total;
}

std::size_t ErrorPattern::inserted() const noexcept {
    std::size_t total = 0;
    for (const auto& e : events)
        if (e.kind == EventKind::Sticky) total += e.len;
    return total;
}

void ErrorPattern::validate(std::size_t n, const HeadLayout& layout) const {
    if (!structurally_valid(*this, n, layout)) {
        nlohmann::json j = *this;
        throw PatternError("pattern " + j.dump() + " is invalid for n=" + std::to_string(n) + " and gaps [" +
                           layout.to_string() + "]: events must be sorted, disjoint and in range for every head");
    }
}

ReadOut read(const Word& c, const HeadLayout& layout, const ErrorPattern& pattern) {
    const std::size_t n = c.size();
    pattern.validate(n, layout);
    auto bits = c.bits();
    ReadOut out;
    out.heads.reserve(layout.heads());
    for (std::size_t h = 0; h < layout.heads(); ++h) {
        const std::size_t off = layout.offset(h);
        std::vector<std::uint8_t> word;
        word.reserve(n - pattern.deleted() + pattern.inserted());
        std::size_t ev = 0;
        for (std::size_t p = 1; p <= n; ++p) {
            while (ev < pattern.events.size() && pattern.events[ev].last() + off < p) ++ev;
            const Event* e = ev < pattern.events.size() ? &pattern.events[ev] : nullptr;
            if (e && e->kind == EventKind::Deletion && p >= e->pos + off) continue;
            word.push_back(bits[p - 1]);
            if (e && e->kind == EventKind::Sticky && p == e->pos + off) word.insert(word.end(), e->len, bits[p - 1]);
        }
        out.heads.emplace_back(std::move(word));
    }
    return out;
}

ErrorClass ErrorClass::parse(std::string_view text) {
    auto parts = split(text, ':');
    const auto name = parts.front();
    auto expect = [&](std::size_t fields) {
        if (parts.size() != fields) throw ParseError("malformed error class '" + std::string(text) + "'");
    };
    auto positive = [&](std::size_t idx) {
        auto v = parse_count(parts[idx], text);
        if (v < 1) throw ParseError("error class counts must be >= 1 in '" + std::string(text) + "'");
        return v;
    };
    if (name == "none") {
        expect(1);
        return none();
    }
    if (name == "del") {
        expect(2);
        return deletions(positive(1));
    }
    if (name == "burst") {
        expect(2);
        return burst(positive(1));
    }
    if (name == "burst-upto") {
        expect(2);
        return burst_upto(positive(1));
    }
    if (name == "sticky") {
        expect(3);
        return sticky(positive(1), positive(2));
    }
    if (name == "poserr") {
        expect(2);
        return position_errors(positive(1));
    }
    throw ParseError("unknown error class '" + std::string(text) + "'");
}

std::string ErrorClass::to_string() const {
    switch (kind) {
        case Kind::None: return "none";
        case Kind::Deletions: return "del:" + std::to_string(count);
        case Kind::Burst: return "burst:" + std::to_string(max_len);
        case Kind::BurstUpTo: return "burst-upto:" + std::to_string(max_len);
        case Kind::Sticky: return "sticky:" + std::to_string(count) + ":" + std::to_string(max_len);
        case Kind::PositionErrors: return "poserr:" + std::to_string(count);
    }
    return "?";
}

bool ErrorClass::contains(const ErrorPattern& pattern) const {
    const auto& ev = pattern.events;
    auto all = [&](auto pred) { return std::all_of(ev.begin(), ev.end(), pred); };
    switch (kind) {
        case Kind::None: return ev.empty();
        case Kind::Deletions:
            return ev.size() == count && all([](const Event& e) { return e.kind == EventKind::Deletion && e.len == 1; });
        case Kind::Burst:
            return ev.size() == 1 && ev[0].kind == EventKind::Deletion && ev[0].len == max_len;
        case Kind::BurstUpTo:
            return ev.empty() || (ev.size() == 1 && ev[0].kind == EventKind::Deletion && ev[0].len <= max_len);
        case Kind::Sticky:
            return ev.size() <= count && all([&](const Event& e) { return e.kind == EventKind::Sticky && e.len <= max_len; });
        case Kind::PositionErrors: {
            std::size_t weight = 0;
            for (const auto& e : ev) {
                if (e.kind == EventKind::Deletion && e.len != 1) return false;
                weight += e.len;
            }
            return weight <= count;
        }
    }
    return false;
}

PatternSampler::PatternSampler(std::uint64_t seed, std::size_t n, HeadLayout layout, ErrorClass error_class)
    : rng_(seed), n_(n), layout_(std::move(layout)), class_(error_class) {
    using Kind = ErrorClass::Kind;
    std::size_t min_events = 0, max_events = 0, per_position = 1;
    switch (class_.kind) {
        case Kind::None: break;
        case Kind::Deletions: min_events = max_events = class_.count; break;
        case Kind::Burst: min_events = max_events = 1; break;
        case Kind::BurstUpTo: max_events = 1; per_position = class_.max_len; break;
        case Kind::Sticky: max_events = class_.count; per_position = class_.max_len; break;
        case Kind::PositionErrors: max_events = class_.count; per_position = 1 + class_.count; break;
    }
    // The smallest pattern packs its events at the front; if that does not fit, nothing does.
    const std::size_t span = layout_.span();
    if (class_.kind == Kind::Deletions && class_.count + span > n_)
        throw SamplingError("no room for " + std::to_string(class_.count) + " deletions with n=" + std::to_string(n_) +
                            " and head span " + std::to_string(span));
    if (class_.kind == Kind::Burst && class_.max_len + span > n_)
        throw SamplingError("no room for a burst of " + std::to_string(class_.max_len) + " with n=" +
                            std::to_string(n_) + " and head span " + std::to_string(span));

    // Drawing k events iid from a superset of size S and keeping distinct sorted
    // valid ones hits each valid k-set with probability k!/S^k, so weighting k by
    // S^k/k! makes accepted patterns uniform over the whole class.
    const double superset = static_cast<double>(n_) * static_cast<double>(per_position);
    first_size_ = min_events;
    std::vector<double> logw;
    for (std::size_t k = min_events; k <= max_events; ++k)
        logw.push_back(static_cast<double>(k) * std::log(superset) - std::lgamma(static_cast<double>(k) + 1.0));
    const double top = *std::max_element(logw.begin(), logw.end());
    for (double lw : logw) size_weights_.push_back(std::exp(lw - top));
}

ErrorPattern PatternSampler::operator()() {
    using Kind = ErrorClass::Kind;
    std::discrete_distribution<std::size_t> pick_size(size_weights_.begin(), size_weights_.end());
    std::uniform_int_distribution<std::size_t> pick_pos(1, n_);
    const std::size_t lens = class_.kind == Kind::PositionErrors ? 1 + class_.count : class_.max_len;
    std::uniform_int_distribution<std::size_t> pick_variant(0, lens - 1);

    constexpr std::size_t kMaxAttempts = 10'000'000;
    for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const std::size_t k = first_size_ + pick_size(rng_);
        ErrorPattern p;
        p.events.reserve(k);
        for (std::size_t e = 0; e < k; ++e) {
            const std::size_t pos = pick_pos(rng_);
            switch (class_.kind) {
                case Kind::None: break;
                case Kind::Deletions: p.events.push_back(Event::deletion(pos, 1)); break;
                case Kind::Burst: p.events.push_back(Event::deletion(pos, class_.max_len)); break;
                case Kind::BurstUpTo: p.events.push_back(Event::deletion(pos, 1 + pick_variant(rng_))); break;
                case Kind::Sticky: p.events.push_back(Event::sticky(pos, 1 + pick_variant(rng_))); break;
                case Kind::PositionErrors: {
                    const std::size_t v = pick_variant(rng_);
                    p.events.push_back(v == 0 ? Event::deletion(pos, 1) : Event::sticky(pos, v));
                    break;
                }
            }
        }
        std::sort(p.events.begin(), p.events.end(), [](const Event& a, const Event& b) { return a.pos < b.pos; });
        if (structurally_valid(p, n_, layout_) && class_.contains(p)) return p;
    }
    throw SamplingError("pattern sampler exhausted its attempts for class " + class_.to_string());
}

ErrorPattern random_pattern(std::uint64_t seed, std::size_t n, const HeadLayout& layout, const ErrorClass& error_class) {
    PatternSampler sampler(seed, n, layout, error_class);
    return sampler();
}

void to_json(nlohmann::json& j, const Event& e) {
    j = nlohmann::json{{"kind", e.kind == EventKind::Deletion ? "del" : "sticky"}, {"pos", e.pos}, {"len", e.len}};
}

void from_json(const nlohmann::json& j, Event& e) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "del")
        e.kind = EventKind::Deletion;
    else if (kind == "sticky")
        e.kind = EventKind::Sticky;
    else
        throw ParseError("unknown event kind '" + kind + "'");
    e.pos = j.at("pos").get<std::size_t>();
    e.len = j.at("len").get<std::size_t>();
}

void to_json(nlohmann::json& j, const ErrorPattern& p) { j = nlohmann::json{{"events", p.events}}; }

void from_json(const nlohmann::json& j, ErrorPattern& p) { p.events = j.at("events").get<std::vector<Event>>(); }

void to_json(nlohmann::json& j, const HeadLayout& layout) { j = nlohmann::json{{"gaps", layout.gaps()}}; }

void from_json(const nlohmann::json& j, HeadLayout& layout) {
    layout = HeadLayout(j.at("gaps").get<std::vector<std::size_t>>());
}

}  // namespace rtm
