#include "stripes/pianoroll.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stripes/error.hpp"

namespace stripes {

namespace {

std::size_t padded_length(std::size_t length, std::size_t steps_per_quarter) {
    if (steps_per_quarter == 0) return length;
    std::size_t rem = length % steps_per_quarter;
    return rem == 0 ? length : length + (steps_per_quarter - rem);
}

void validate_annotation(const ChordAnnotation& annotation, std::size_t length) {
    std::vector<ChordSpan> spans = annotation.spans;
    std::sort(spans.begin(), spans.end(),
              [](const ChordSpan& a, const ChordSpan& b) { return a.start < b.start; });
    int prev_end = 0;
    for (const auto& span : spans) {
        if (span.start < 0 || span.end > static_cast<int>(length) || span.end <= span.start)
            throw Error(ErrorCode::FormatError, "chord span out of range");
        if (span.start < prev_end)
            throw Error(ErrorCode::FormatError, "chord spans overlap");
        if (span.root < 0 || span.root > 11)
            throw Error(ErrorCode::FormatError, "chord root must be 0-11");
        if (span.chroma == 0 || span.chroma >= (1u << 12))
            throw Error(ErrorCode::FormatError, "chord chroma must be a nonzero 12-bit mask");
        prev_end = span.end;
    }
}

} // namespace

Pianoroll::Pianoroll(std::size_t tracks, std::size_t steps_per_quarter, std::size_t length)
    : tracks_(tracks), steps_per_quarter_(steps_per_quarter),
      length_(padded_length(length, steps_per_quarter)) {
    if (tracks == 0) throw Error(ErrorCode::FormatError, "need at least one track");
    if (steps_per_quarter == 0)
        throw Error(ErrorCode::FormatError, "steps_per_quarter must be positive");
    grid_.assign(tracks_ * 128 * length_, 0);
}

Pianoroll Pianoroll::from_grid(std::size_t tracks, std::size_t steps_per_quarter,
                               std::size_t length, const std::vector<double>& grid) {
    if (grid.size() != tracks * 128 * length)
        throw Error(ErrorCode::FormatError, "grid size does not match shape");
    Pianoroll roll(tracks, steps_per_quarter, length);
    for (std::size_t track = 0; track < tracks; ++track)
        for (std::size_t pitch = 0; pitch < 128; ++pitch)
            for (std::size_t t = 0; t < length; ++t) {
                double v = grid[(track * 128 + pitch) * length + t];
                if (v != 0.0 && v != 1.0)
                    throw Error(ErrorCode::NonBinary, "pianoroll cells must be 0 or 1");
                if (v == 1.0) roll.set_cell(track, pitch, t);
            }
    return roll;
}

void Pianoroll::set_cell(std::size_t track, std::size_t pitch, std::size_t t, bool on) {
    if (track >= tracks_ || pitch >= 128 || t >= length_)
        throw Error(ErrorCode::IndexOutOfRange, "cell out of range");
    grid_[(track * 128 + pitch) * length_ + t] = on ? 1 : 0;
}

void Pianoroll::add_note(const Note& note) {
    if (note.track < 0 || static_cast<std::size_t>(note.track) >= tracks_)
        throw Error(ErrorCode::FormatError, "note track out of range");
    if (note.pitch < 0 || note.pitch >= 128)
        throw Error(ErrorCode::FormatError, "note pitch out of range");
    if (note.onset < 0 || note.offset <= note.onset ||
        static_cast<std::size_t>(note.offset) > length_)
        throw Error(ErrorCode::FormatError, "note onset/offset out of range");
    for (int t = note.onset; t < note.offset; ++t)
        set_cell(static_cast<std::size_t>(note.track), static_cast<std::size_t>(note.pitch),
                 static_cast<std::size_t>(t));
}

void Pianoroll::set_annotation(ChordAnnotation annotation) {
    validate_annotation(annotation, length_);
    annotation_ = std::move(annotation);
}

Pianoroll Pianoroll::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::FormatError, std::string("invalid json: ") + e.what());
    }
    try {
        if (!j.is_object() || j.value("version", 0) != 1)
            throw Error(ErrorCode::FormatError, "expected a version-1 pianoroll object");
        auto tracks = j.at("tracks").get<std::size_t>();
        auto spq = j.at("steps_per_quarter").get<std::size_t>();
        auto length = j.at("length").get<std::size_t>();
        Pianoroll roll(tracks, spq, length);
        roll.name = j.value("name", std::string{});
        for (const auto& entry : j.at("notes")) {
            if (!entry.is_array() || entry.size() != 4)
                throw Error(ErrorCode::FormatError, "notes must be [track,pitch,onset,offset]");
            Note note{entry[0].get<int>(), entry[1].get<int>(), entry[2].get<int>(),
                      entry[3].get<int>()};
            if (static_cast<std::size_t>(note.offset) > length)
                throw Error(ErrorCode::FormatError, "note offset exceeds declared length");
            roll.add_note(note);
        }
        if (j.contains("chords") || j.contains("key")) {
            ChordAnnotation annotation;
            if (j.contains("chords")) {
                for (const auto& entry : j.at("chords")) {
                    if (!entry.is_array() || entry.size() != 4)
                        throw Error(ErrorCode::FormatError,
                                    "chords must be [start,end,root,chroma]");
                    annotation.spans.push_back({entry[0].get<int>(), entry[1].get<int>(),
                                                entry[2].get<int>(), entry[3].get<unsigned>()});
                }
            }
            if (j.contains("key")) {
                const auto& key = j.at("key");
                if (!key.is_array() || key.size() != 2)
                    throw Error(ErrorCode::FormatError, "key must be [tonic, mode]");
                KeySignature sig;
                sig.tonic = key[0].get<int>();
                if (sig.tonic < 0 || sig.tonic > 11)
                    throw Error(ErrorCode::FormatError, "key tonic must be 0-11");
                std::string mode = key[1].get<std::string>();
                if (mode == "major")
                    sig.mode = KeyMode::Major;
                else if (mode == "minor")
                    sig.mode = KeyMode::Minor;
                else
                    throw Error(ErrorCode::FormatError, "key mode must be major or minor");
                annotation.key = sig;
            }
            roll.set_annotation(std::move(annotation));
        }
        return roll;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::FormatError, std::string("malformed pianoroll: ") + e.what());
    }
}

Pianoroll Pianoroll::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FormatError, "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json(buffer.str());
}

std::string Pianoroll::to_json() const {
    nlohmann::json j;
    j["version"] = 1;
    j["tracks"] = tracks_;
    j["steps_per_quarter"] = steps_per_quarter_;
    j["length"] = length_;
    if (!name.empty()) j["name"] = name;

    // Canonical note list: maximal runs per (track, pitch).
    nlohmann::json notes = nlohmann::json::array();
    for (std::size_t track = 0; track < tracks_; ++track) {
        for (std::size_t pitch = 0; pitch < 128; ++pitch) {
            std::size_t t = 0;
            while (t < length_) {
                if (!cell(track, pitch, t)) {
                    ++t;
                    continue;
                }
                std::size_t start = t;
                while (t < length_ && cell(track, pitch, t)) ++t;
                notes.push_back({track, pitch, start, t});
            }
        }
    }
    j["notes"] = notes;

    if (annotation_.has_value()) {
        nlohmann::json chords = nlohmann::json::array();
        for (const auto& span : annotation_->spans)
            chords.push_back({span.start, span.end, span.root, span.chroma});
        j["chords"] = chords;
        if (annotation_->key.has_value())
            j["key"] = {annotation_->key->tonic,
                        annotation_->key->mode == KeyMode::Major ? "major" : "minor"};
    }
    return j.dump();
}

} // namespace stripes
