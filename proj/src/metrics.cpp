#include "stripes/metrics.hpp"

#include <cmath>

#include "stripes/error.hpp"

namespace stripes {

namespace {

void check_compatible(const Pianoroll& target, const Pianoroll& pred) {
    if (target.length() != pred.length() ||
        target.steps_per_quarter() != pred.steps_per_quarter())
        throw Error(ErrorCode::LengthMismatch,
                    "target and prediction must share length and resolution");
}

double cosine(const std::array<int, 12>& a, const std::array<int, 12>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (int i = 0; i < 12; ++i) {
        dot += static_cast<double>(a[i]) * b[i];
        na += static_cast<double>(a[i]) * a[i];
        nb += static_cast<double>(b[i]) * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<std::uint8_t> groove_pattern(const Pianoroll& roll) {
    std::size_t bins = roll.length() / roll.steps_per_quarter();
    std::vector<std::uint8_t> pattern(bins, 0);
    for (std::size_t track = 0; track < roll.tracks(); ++track)
        for (std::size_t pitch = 0; pitch < 128; ++pitch)
            for (std::size_t t = 0; t < roll.length(); ++t)
                if (roll.onset_at(track, pitch, t)) pattern[t / roll.steps_per_quarter()] = 1;
    return pattern;
}

/// Distinct (track, pitch) pairs active within each 16th-note bin.
std::vector<int> sixteenth_counts(const Pianoroll& roll) {
    std::size_t bins = (roll.length() * 4 + roll.steps_per_quarter() - 1) /
                       roll.steps_per_quarter();
    std::vector<int> counts(bins, 0);
    for (std::size_t track = 0; track < roll.tracks(); ++track) {
        for (std::size_t pitch = 0; pitch < 128; ++pitch) {
            std::size_t active_bin = bins; // sentinel
            for (std::size_t t = 0; t < roll.length(); ++t) {
                if (!roll.cell(track, pitch, t)) continue;
                std::size_t bin = t * 4 / roll.steps_per_quarter();
                if (bin != active_bin) {
                    ++counts[bin];
                    active_bin = bin;
                }
            }
        }
    }
    return counts;
}

} // namespace

std::vector<std::array<int, 12>> chroma_onsets(const Pianoroll& roll) {
    std::size_t half_measure = 2 * roll.steps_per_quarter();
    std::size_t bins = (roll.length() + half_measure - 1) / half_measure;
    std::vector<std::array<int, 12>> out(bins, std::array<int, 12>{});
    for (std::size_t track = 0; track < roll.tracks(); ++track)
        for (std::size_t pitch = 0; pitch < 128; ++pitch)
            for (std::size_t t = 0; t < roll.length(); ++t)
                if (roll.onset_at(track, pitch, t)) out[t / half_measure][pitch % 12] += 1;
    return out;
}

double ssmd(const Pianoroll& target, const Pianoroll& pred) {
    check_compatible(target, pred);
    auto ct = chroma_onsets(target);
    auto cp = chroma_onsets(pred);
    std::size_t n = ct.size();
    if (n == 0) return 0.0;

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            total += std::abs(cosine(ct[i], ct[j]) - cosine(cp[i], cp[j]));
    return total / static_cast<double>(n * n) * 50.0;
}

double chroma_similarity(const Pianoroll& target, const Pianoroll& pred) {
    check_compatible(target, pred);
    auto ct = chroma_onsets(target);
    auto cp = chroma_onsets(pred);
    if (ct.empty()) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < ct.size(); ++i) total += cosine(ct[i], cp[i]);
    return total / static_cast<double>(ct.size()) * 100.0;
}

double grooving_xor_mean(const Pianoroll& target, const Pianoroll& pred) {
    check_compatible(target, pred);
    auto gt = groove_pattern(target);
    auto gp = groove_pattern(pred);
    if (gt.empty()) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < gt.size(); ++i) total += gt[i] ^ gp[i];
    return total / static_cast<double>(gt.size());
}

double grooving_similarity(const Pianoroll& target, const Pianoroll& pred) {
    return (1.0 - grooving_xor_mean(target, pred)) * 100.0;
}

double note_density_distance(const Pianoroll& target, const Pianoroll& pred) {
    check_compatible(target, pred);
    if (target.steps_per_quarter() < 4)
        throw Error(ErrorCode::ResolutionTooCoarse,
                    "16th-note density needs steps_per_quarter >= 4");
    auto ct = sixteenth_counts(target);
    auto cp = sixteenth_counts(pred);

    double total = 0.0;
    std::size_t counted = 0;
    for (std::size_t i = 0; i < ct.size(); ++i) {
        if (ct[i] == 0) continue;
        int missing = ct[i] - cp[i];
        if (missing < 0) missing = 0;
        total += static_cast<double>(missing) / static_cast<double>(ct[i]);
        ++counted;
    }
    if (counted == 0) return 0.0;
    return total / static_cast<double>(counted) * 100.0;
}

} // namespace stripes
