#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stripes {

struct Note {
    int track = 0;
    int pitch = 0;
    int onset = 0;
    int offset = 0; // exclusive
};

struct ChordSpan {
    int start = 0; // step index, inclusive
    int end = 0;   // exclusive
    int root = 0;  // 0-11
    unsigned chroma = 0; // 12-bit pitch-class mask
};

enum class KeyMode { Major, Minor };

struct KeySignature {
    int tonic = 0; // 0-11
    KeyMode mode = KeyMode::Major;
};

struct ChordAnnotation {
    std::vector<ChordSpan> spans;
    std::optional<KeySignature> key;
};

/// Binary tracks x 128 x time grid. The time axis is zero-padded so the
/// length is always a multiple of steps_per_quarter.
class Pianoroll {
public:
    Pianoroll(std::size_t tracks, std::size_t steps_per_quarter, std::size_t length);

    /// Grid values must be 0 or 1; anything else raises NonBinary.
    static Pianoroll from_grid(std::size_t tracks, std::size_t steps_per_quarter,
                               std::size_t length, const std::vector<double>& grid);

    static Pianoroll from_json(const std::string& text);
    static Pianoroll load_file(const std::string& path);
    std::string to_json() const;

    bool cell(std::size_t track, std::size_t pitch, std::size_t t) const {
        return grid_[(track * 128 + pitch) * length_ + t] != 0;
    }
    void set_cell(std::size_t track, std::size_t pitch, std::size_t t, bool on = true);
    void add_note(const Note& note);

    /// Rising edge at (track, pitch, t).
    bool onset_at(std::size_t track, std::size_t pitch, std::size_t t) const {
        return cell(track, pitch, t) && (t == 0 || !cell(track, pitch, t - 1));
    }

    std::size_t tracks() const noexcept { return tracks_; }
    std::size_t steps_per_quarter() const noexcept { return steps_per_quarter_; }
    std::size_t length() const noexcept { return length_; }

    const std::optional<ChordAnnotation>& annotation() const noexcept { return annotation_; }
    void set_annotation(ChordAnnotation annotation);

    std::string name;

private:
    std::size_t tracks_ = 1;
    std::size_t steps_per_quarter_ = 4;
    std::size_t length_ = 0;
    std::vector<std::uint8_t> grid_;
    std::optional<ChordAnnotation> annotation_;
};

} // namespace stripes
