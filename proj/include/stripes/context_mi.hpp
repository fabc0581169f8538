#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "stripes/pianoroll.hpp"

namespace stripes {

/// Context-label families for the mutual-information probe:
///   Time - each timestep is its own token
///   Rep  - chord tokens renumbered within the sample
///   Key  - chord tokens transposed into the song key's C frame
///   Bin  - the raw 12-bit chord chroma mask
enum class ContextType { Time, Rep, Key, Bin };

enum class RepOrder { TokenId, Appearance };
enum class EventCounting { PerCell, OnsetOnly };

const char* to_string(ContextType type);

/// One event per active pianoroll cell (or per onset): the pitch paired with
/// its context label.
struct LabeledEvents {
    std::vector<std::pair<int, std::int64_t>> pairs;
};

LabeledEvents assign_context(const Pianoroll& roll, const ChordAnnotation& annotation,
                             ContextType type, RepOrder rep_order = RepOrder::TokenId,
                             EventCounting counting = EventCounting::PerCell);

/// Plug-in (maximum-likelihood) mutual information between pitches and
/// labels, in nats.
double mutual_information(const LabeledEvents& events);

} // namespace stripes
