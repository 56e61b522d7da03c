#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "rtm/channel.hpp"
#include "rtm/constraints.hpp"
#include "rtm/word.hpp"

namespace rtm {

/// One pairwise comparison inside a decoder: stage number (1-based) and the
/// leftmost index j where the two compared words differ.
struct Stage {
    std::size_t stage = 0;
    std::size_t j = 0;

    friend bool operator==(const Stage&, const Stage&) = default;
};

struct DecodeResult {
    Word codeword;
    std::vector<Stage> diagnostics;
};

// Pairwise primitives. `earlier` is the head nearer the start of the track;
// `later` follows it. Both throw ConstraintViolation when the words agree
// everywhere the primitive needs them to differ.

struct Peeled {
    Word word;
    std::size_t j = 0;
};

/// Undo the first deletion of `earlier`: later[1, j] + earlier[j, end].
Peeled peel_deletion(const Word& earlier, const Word& later);
/// Undo the first length-b deletion burst of `earlier`: later[1, j+b-1] + earlier[j, end].
Peeled peel_burst(const Word& earlier, const Word& later, std::size_t b);
/// Undo the extra repeats in the first run of `earlier` that outgrew `later`:
/// later[1, j-1] + earlier[j+s, end], with s the surplus run length at j.
Peeled peel_sticky(const Word& earlier, const Word& later);
/// Same with a known repeat count s.
Peeled peel_sticky(const Word& earlier, const Word& later, std::size_t s);

/// Two heads t apart, one deletion, code C1(n, t).
DecodeResult decode_2h_1del(const Word& h1, const Word& h2, std::size_t t, std::size_t n);

/// Two heads t apart, one burst of exactly b deletions, code C2(n, b, t).
DecodeResult decode_2h_burst(const Word& h1, const Word& h2, std::size_t t, std::size_t n, std::size_t b);

/// Two heads t apart, one burst of at most b_max deletions, code C3(n, b_max, t).
DecodeResult decode_2h_leq_burst(const Word& h1, const Word& h2, std::size_t t, std::size_t n, std::size_t b_max);

/// d + 1 heads, d deletions, code C3(n, d, t1). Every gap must be at least
/// d*t1 - d(d+1)/2 + 1 (2(t1 - 1) for d = 2).
DecodeResult decode_mh_ddel(const ReadOut& reads, const HeadLayout& layout, std::size_t n, std::size_t d, std::size_t t1);

/// Varshamov-Tenengolts single-deletion decoder for residue a mod (n + 1).
Word vt_decode(const Word& r, std::size_t n, std::size_t a);

/// d heads, d deletions, code C3_VT(n, d, t1, a).
DecodeResult decode_dh_ddel(const ReadOut& reads, const HeadLayout& layout, std::size_t n, std::size_t d,
                            std::size_t t1, std::size_t a);

/// d + 1 heads at least t apart, up to d sticky bursts of at most t - 1 repeats, code C1(n, t).
DecodeResult decode_sticky(const ReadOut& reads, const HeadLayout& layout, std::size_t n, std::size_t t, std::size_t d);

/// Two heads at least t apart, at most one deletion or one sticky repeat, code C1(n, t).
DecodeResult decode_2h_1poserr(const Word& h1, const Word& h2, std::size_t t, std::size_t n);

/// Three heads at least 3 t1 - 2 apart, at most two position errors, code C3(n, 2, t1).
DecodeResult decode_3h_2poserr(const ReadOut& reads, const HeadLayout& layout, std::size_t t1, std::size_t n);

/// Minimum adjacent-head distance for the d-deletion cascades.
std::size_t min_cascade_gap(std::size_t d, std::size_t t1);

enum class DecoderId {
    TwoHeadDeletion,
    TwoHeadBurst,
    TwoHeadBurstUpTo,
    MultiHeadDeletions,
    EqualHeadDeletionsVT,
    Sticky,
    TwoHeadPositionError,
    ThreeHeadPositionErrors,
};

std::string_view decoder_name(DecoderId id);
DecoderId parse_decoder(std::string_view name);
std::vector<DecoderId> all_decoders();

/// Picks the decoder guaranteed for this code, head layout and error class.
/// Throws ParameterError when no decoder covers the combination.
DecoderId select_decoder(const CodeSpec& spec, const HeadLayout& layout, const ErrorClass& error_class);

/// Runs decoder `id`, taking its parameters from the code spec and layout.
DecodeResult run_decoder(DecoderId id, const CodeSpec& spec, const HeadLayout& layout, const ReadOut& reads);

}  // namespace rtm
