#include "rtm/codebook.hpp"

#include <algorithm>
#include <map>

#include "rtm/errors.hpp"

namespace rtm {

namespace {

struct RawState {
    std::vector<std::uint8_t> history;  // last max(periods) symbols, oldest first
    std::vector<std::size_t> zero_runs;  // per period: current zero run of its period-check vector

    auto operator<=>(const RawState&) const = default;
};

}  // namespace

ConstraintAutomaton::ConstraintAutomaton(std::vector<std::size_t> periods, std::size_t t) {
    if (periods.empty()) throw ParameterError("automaton needs at least one period");
    for (auto l : periods)
        if (l < 1 || l > t) throw ParameterError("every period must satisfy 1 <= l <= t");
    const std::size_t memory = *std::max_element(periods.begin(), periods.end());

    std::map<RawState, int> ids;
    std::vector<RawState> states;
    auto intern = [&](RawState s) {
        auto [it, inserted] = ids.emplace(s, static_cast<int>(states.size()));
        if (inserted) {
            states.push_back(std::move(s));
            next_.push_back({kReject, kReject});
        }
        return it->second;
    };
    intern(RawState{{}, std::vector<std::size_t>(periods.size(), 0)});

    for (std::size_t id = 0; id < states.size(); ++id) {
        for (int bit = 0; bit < 2; ++bit) {
            const RawState& cur = states[id];
            RawState nxt{cur.history, cur.zero_runs};
            bool ok = true;
            for (std::size_t k = 0; k < periods.size() && ok; ++k) {
                const auto l = periods[k];
                if (cur.history.size() < l) continue;
                const bool same = cur.history[cur.history.size() - l] == bit;
                nxt.zero_runs[k] = same ? cur.zero_runs[k] + 1 : 0;
                ok = nxt.zero_runs[k] + l <= t;
            }
            if (!ok) continue;
            nxt.history.push_back(static_cast<std::uint8_t>(bit));
            if (nxt.history.size() > memory) nxt.history.erase(nxt.history.begin());
            const int target = intern(std::move(nxt));
            next_[id][static_cast<std::size_t>(bit)] = target;
        }
    }
}

bool ConstraintAutomaton::accepts(const Word& u) const {
    int s = start();
    for (auto bit : u.bits()) {
        s = next(s, bit);
        if (s == kReject) return false;
    }
    return true;
}

BigInt count_paths(const ConstraintAutomaton& automaton, std::size_t n, std::optional<std::size_t> vt_residue) {
    const std::size_t mod = vt_residue ? n + 1 : 1;
    const std::size_t states = automaton.num_states();
    std::vector<BigInt> cur(states * mod), nxt(states * mod);
    cur[static_cast<std::size_t>(automaton.start()) * mod] = 1;
    for (std::size_t pos = 1; pos <= n; ++pos) {
        for (auto& v : nxt) v = 0;
        for (std::size_t q = 0; q < states; ++q) {
            for (std::size_t r = 0; r < mod; ++r) {
                const BigInt& ways = cur[q * mod + r];
                if (ways.is_zero()) continue;
                for (int bit = 0; bit < 2; ++bit) {
                    const int target = automaton.next(static_cast<int>(q), bit);
                    if (target == ConstraintAutomaton::kReject) continue;
                    const std::size_t r2 = bit ? (r + pos) % mod : r;
                    nxt[static_cast<std::size_t>(target) * mod + r2] += ways;
                }
            }
        }
        std::swap(cur, nxt);
    }
    BigInt total = 0;
    for (std::size_t q = 0; q < states; ++q) {
        if (vt_residue)
            total += cur[q * mod + *vt_residue % mod];
        else
            total += cur[q];
    }
    return total;
}

Codebook::Codebook(CodeSpec spec)
    : spec_(spec), automaton_((spec.validate(), spec.periods()), spec.t),
      modulus_(spec.family == Family::C3_VT ? spec.n + 1 : 1) {
    const std::size_t n = spec_.n;
    const std::size_t width = automaton_.num_states() * modulus_;
    completions_.assign(n + 1, std::vector<BigInt>(width));
    for (std::size_t q = 0; q < automaton_.num_states(); ++q)
        for (std::size_t r = 0; r < modulus_; ++r)
            completions_[0][slot(static_cast<int>(q), r)] = (modulus_ == 1 || r == spec_.a) ? 1 : 0;

    for (std::size_t k = 1; k <= n; ++k) {
        const std::size_t pos = n - k + 1;
        const auto& prev = completions_[k - 1];
        auto& layer = completions_[k];
        for (std::size_t q = 0; q < automaton_.num_states(); ++q) {
            for (std::size_t r = 0; r < modulus_; ++r) {
                BigInt sum = 0;
                for (int bit = 0; bit < 2; ++bit) {
                    const int target = automaton_.next(static_cast<int>(q), bit);
                    if (target == ConstraintAutomaton::kReject) continue;
                    sum += prev[slot(target, bit ? (r + pos) % modulus_ : r)];
                }
                layer[slot(static_cast<int>(q), r)] = std::move(sum);
            }
        }
    }
}

const BigInt& Codebook::size() const noexcept { return completions_[spec_.n][slot(automaton_.start(), 0)]; }

const BigInt& Codebook::completions(std::size_t remaining, int state, std::size_t residue) const {
    return completions_[remaining][slot(state, residue)];
}

Word Codebook::unrank(const BigInt& index) const {
    if (index < 0 || index >= size())
        throw IndexError("index " + index.str() + " outside codebook " + spec_.to_string() + " of size " +
                         size().str());
    BigInt rest = index;
    std::vector<std::uint8_t> bits(spec_.n);
    int state = automaton_.start();
    std::size_t residue = 0;
    for (std::size_t pos = 1; pos <= spec_.n; ++pos) {
        const int zero = automaton_.next(state, 0);
        const BigInt& below = zero == ConstraintAutomaton::kReject
                                  ? BigInt(0)
                                  : completions(spec_.n - pos, zero, residue);
        if (rest < below) {
            state = zero;
        } else {
            rest -= below;
            bits[pos - 1] = 1;
            state = automaton_.next(state, 1);
            residue = (residue + pos) % modulus_;
        }
    }
    return Word(std::move(bits));
}

BigInt Codebook::rank(const Word& u) const {
    if (!is_member(spec_, u)) throw MembershipError(u.to_string() + " is not a codeword of " + spec_.to_string());
    BigInt index = 0;
    int state = automaton_.start();
    std::size_t residue = 0;
    auto bits = u.bits();
    for (std::size_t pos = 1; pos <= spec_.n; ++pos) {
        if (bits[pos - 1]) {
            const int zero = automaton_.next(state, 0);
            if (zero != ConstraintAutomaton::kReject) index += completions(spec_.n - pos, zero, residue);
            state = automaton_.next(state, 1);
            residue = (residue + pos) % modulus_;
        } else {
            state = automaton_.next(state, 0);
        }
    }
    return index;
}

}  // namespace rtm
