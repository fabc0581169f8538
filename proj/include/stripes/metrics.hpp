#pragma once

#include <array>
#include <vector>

#include "stripes/pianoroll.hpp"

namespace stripes {

/// Onset counts per pitch class per half-measure (2 quarter-notes), summed
/// over tracks. An onset is a rising grid edge.
std::vector<std::array<int, 12>> chroma_onsets(const Pianoroll& roll);

/// Self-similarity-matrix distance in [0, 100]: mean absolute difference of
/// the two chroma-onset SSMs, scaled by 50. 0 means identical structure.
double ssmd(const Pianoroll& target, const Pianoroll& pred);

/// Mean per-half-measure cosine similarity of chroma onset vectors, scaled
/// to [-100, 100]. Cosine with a zero vector is defined as 0.
double chroma_similarity(const Pianoroll& target, const Pianoroll& pred);

/// Grooving-pattern similarity in [0, 100]: 100 * (1 - mean XOR of the
/// quarter-note onset patterns). Higher means more similar.
double grooving_similarity(const Pianoroll& target, const Pianoroll& pred);

/// The raw XOR mean behind grooving_similarity, for auditing.
double grooving_xor_mean(const Pianoroll& target, const Pianoroll& pred);

/// Mean percentage of missing per-16th-note pitch counts, in [0, 100].
/// Requires steps_per_quarter >= 4.
double note_density_distance(const Pianoroll& target, const Pianoroll& pred);

} // namespace stripes
