#include "stripes/context_mi.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "stripes/error.hpp"

namespace stripes {

namespace {

constexpr std::int64_t kChromaSpan = 1 << 12;

std::int64_t global_chord_token(const ChordSpan& span) {
    return static_cast<std::int64_t>(span.root) * kChromaSpan + span.chroma;
}

ChordSpan transpose_to_key(const ChordSpan& span, const KeySignature& key) {
    ChordSpan out = span;
    out.root = ((span.root - key.tonic) % 12 + 12) % 12;
    unsigned rotated = 0;
    for (int i = 0; i < 12; ++i)
        if (span.chroma & (1u << ((i + key.tonic) % 12))) rotated |= 1u << i;
    out.chroma = rotated;
    return out;
}

/// Chord span index per step; CoverageGap when any step is uncovered.
std::vector<std::size_t> span_index_by_step(const ChordAnnotation& annotation,
                                            std::size_t length) {
    if (annotation.spans.empty())
        throw Error(ErrorCode::MissingAnnotation, "chord contexts need chord spans");
    std::vector<std::size_t> index(length, annotation.spans.size());
    for (std::size_t s = 0; s < annotation.spans.size(); ++s) {
        const auto& span = annotation.spans[s];
        for (int t = span.start; t < span.end && t < static_cast<int>(length); ++t)
            index[static_cast<std::size_t>(t)] = s;
    }
    for (std::size_t t = 0; t < length; ++t)
        if (index[t] == annotation.spans.size())
            throw Error(ErrorCode::CoverageGap, "chord spans do not cover the roll");
    return index;
}

} // namespace

const char* to_string(ContextType type) {
    switch (type) {
        case ContextType::Time: return "time";
        case ContextType::Rep: return "rep";
        case ContextType::Key: return "key";
        case ContextType::Bin: return "bin";
    }
    return "?";
}

LabeledEvents assign_context(const Pianoroll& roll, const ChordAnnotation& annotation,
                             ContextType type, RepOrder rep_order, EventCounting counting) {
    std::vector<std::int64_t> label_by_step(roll.length(), 0);

    switch (type) {
        case ContextType::Time: {
            for (std::size_t t = 0; t < roll.length(); ++t)
                label_by_step[t] = static_cast<std::int64_t>(t);
            break;
        }
        case ContextType::Rep: {
            auto index = span_index_by_step(annotation, roll.length());
            std::vector<std::int64_t> tokens;
            tokens.reserve(annotation.spans.size());
            for (const auto& span : annotation.spans) tokens.push_back(global_chord_token(span));

            // Renumber the sample's distinct tokens: by ascending global id,
            // or by first appearance in span order.
            std::vector<std::int64_t> distinct;
            if (rep_order == RepOrder::TokenId) {
                distinct = tokens;
                std::sort(distinct.begin(), distinct.end());
                distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
            } else {
                for (std::int64_t token : tokens)
                    if (std::find(distinct.begin(), distinct.end(), token) == distinct.end())
                        distinct.push_back(token);
            }
            std::map<std::int64_t, std::int64_t> rank;
            for (std::size_t i = 0; i < distinct.size(); ++i)
                rank[distinct[i]] = static_cast<std::int64_t>(i);
            for (std::size_t t = 0; t < roll.length(); ++t)
                label_by_step[t] = rank[tokens[index[t]]];
            break;
        }
        case ContextType::Key: {
            if (!annotation.key.has_value())
                throw Error(ErrorCode::MissingAnnotation, "key context needs a key signature");
            auto index = span_index_by_step(annotation, roll.length());
            for (std::size_t t = 0; t < roll.length(); ++t) {
                ChordSpan moved = transpose_to_key(annotation.spans[index[t]], *annotation.key);
                label_by_step[t] = global_chord_token(moved);
            }
            break;
        }
        case ContextType::Bin: {
            auto index = span_index_by_step(annotation, roll.length());
            for (std::size_t t = 0; t < roll.length(); ++t)
                label_by_step[t] = annotation.spans[index[t]].chroma;
            break;
        }
    }

    LabeledEvents events;
    for (std::size_t track = 0; track < roll.tracks(); ++track)
        for (std::size_t pitch = 0; pitch < 128; ++pitch)
            for (std::size_t t = 0; t < roll.length(); ++t) {
                bool hit = counting == EventCounting::PerCell ? roll.cell(track, pitch, t)
                                                              : roll.onset_at(track, pitch, t);
                if (hit)
                    events.pairs.emplace_back(static_cast<int>(pitch), label_by_step[t]);
            }
    return events;
}

double mutual_information(const LabeledEvents& events) {
    if (events.pairs.empty()) throw Error(ErrorCode::EmptyInput, "no events");

    std::map<std::pair<int, std::int64_t>, std::size_t> joint;
    std::map<int, std::size_t> pitch_counts;
    std::map<std::int64_t, std::size_t> label_counts;
    for (const auto& [pitch, label] : events.pairs) {
        ++joint[{pitch, label}];
        ++pitch_counts[pitch];
        ++label_counts[label];
    }

    const double n = static_cast<double>(events.pairs.size());
    double mi = 0.0;
    for (const auto& [key, count] : joint) {
        double pxy = static_cast<double>(count) / n;
        double px = static_cast<double>(pitch_counts.at(key.first)) / n;
        double py = static_cast<double>(label_counts.at(key.second)) / n;
        mi += pxy * std::log(pxy / (px * py));
    }
    return mi < 0.0 ? 0.0 : mi;
}

} // namespace stripes
