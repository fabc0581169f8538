#include <doctest.h>

#include <cmath>

#include "stripes/error.hpp"
#include "stripes/metrics.hpp"
#include "stripes/rng.hpp"

using namespace stripes;

namespace {

Pianoroll random_roll(CounterRng& rng, std::size_t tracks = 1, std::size_t spq = 4,
                      std::size_t length = 16, double density = 0.2) {
    Pianoroll roll(tracks, spq, length);
    for (std::size_t track = 0; track < tracks; ++track)
        for (int pitch = 50; pitch < 80; ++pitch)
            for (std::size_t t = 0; t < length; ++t)
                if (rng.uniform01() < density) roll.set_cell(track, pitch, t);
    return roll;
}

Pianoroll tile_twice(const Pianoroll& roll) {
    Pianoroll tiled(roll.tracks(), roll.steps_per_quarter(), roll.length() * 2);
    for (std::size_t track = 0; track < roll.tracks(); ++track)
        for (std::size_t pitch = 0; pitch < 128; ++pitch)
            for (std::size_t t = 0; t < roll.length(); ++t)
                if (roll.cell(track, pitch, t)) {
                    tiled.set_cell(track, pitch, t);
                    tiled.set_cell(track, pitch, t + roll.length());
                }
    return tiled;
}

} // namespace

TEST_CASE("json round trip with the minimal one-note file") {
    std::string text = R"({"version":1,"tracks":1,"steps_per_quarter":4,"length":4,
                           "notes":[[0,60,0,4]]})";
    Pianoroll roll = Pianoroll::from_json(text);
    CHECK(roll.tracks() == 1);
    CHECK(roll.length() == 4);
    for (std::size_t t = 0; t < 4; ++t) CHECK(roll.cell(0, 60, t));
    CHECK_FALSE(roll.cell(0, 61, 0));

    Pianoroll again = Pianoroll::from_json(roll.to_json());
    CHECK(again.to_json() == roll.to_json());
}

TEST_CASE("empty note lists give all-zero grids") {
    Pianoroll roll = Pianoroll::from_json(
        R"({"version":1,"tracks":2,"steps_per_quarter":4,"length":8,"notes":[]})");
    bool any = false;
    for (std::size_t track = 0; track < 2; ++track)
        for (std::size_t pitch = 0; pitch < 128; ++pitch)
            for (std::size_t t = 0; t < 8; ++t) any = any || roll.cell(track, pitch, t);
    CHECK_FALSE(any);
}

TEST_CASE("loader rejects malformed files") {
    CHECK_THROWS_AS(Pianoroll::from_json("not json"), Error);
    CHECK_THROWS_AS(Pianoroll::from_json(R"({"version":2,"tracks":1})"), Error);
    // offset <= onset
    try {
        Pianoroll::from_json(
            R"({"version":1,"tracks":1,"steps_per_quarter":4,"length":8,"notes":[[0,60,4,4]]})");
        FAIL("expected FormatError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::FormatError);
    }
    CHECK_THROWS_AS(Pianoroll::from_json(
                        R"({"version":1,"tracks":1,"steps_per_quarter":4,"length":8,
                            "notes":[[0,200,0,2]]})"),
                    Error);
}

TEST_CASE("grid construction enforces binary cells") {
    std::vector<double> grid(1 * 128 * 2, 0.0);
    grid[60 * 2] = 1.0;
    CHECK_NOTHROW(Pianoroll::from_grid(1, 4, 2, grid));
    grid[60 * 2 + 1] = 0.5;
    try {
        Pianoroll::from_grid(1, 4, 2, grid);
        FAIL("expected NonBinary");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonBinary);
    }
}

TEST_CASE("length pads up to the step grid") {
    Pianoroll roll(1, 4, 10);
    CHECK(roll.length() == 12);
}

TEST_CASE("chroma onsets count rising edges per half-measure") {
    Pianoroll roll(1, 4, 24);
    roll.add_note({0, 60, 0, 24}); // sustained across all three half-measures
    auto onsets = chroma_onsets(roll);
    REQUIRE(onsets.size() == 3);
    CHECK(onsets[0][0] == 1);
    CHECK(onsets[1][0] == 0);
    CHECK(onsets[2][0] == 0);

    SUBCASE("octave folding counts both onsets in one bin") {
        Pianoroll two(1, 4, 8);
        two.add_note({0, 60, 0, 2});
        two.add_note({0, 72, 0, 2});
        auto folded = chroma_onsets(two);
        CHECK(folded[0][0] == 2);
    }
    SUBCASE("silent rolls have all-zero chroma") {
        Pianoroll silent(2, 4, 16);
        for (const auto& bin : chroma_onsets(silent))
            for (int c : bin) CHECK(c == 0);
    }
}

TEST_CASE("identical rolls score the identity bundle") {
    CounterRng rng(3);
    Pianoroll roll = random_roll(rng, 2, 4, 32, 0.3);
    CHECK(ssmd(roll, roll) == 0.0);
    CHECK(grooving_similarity(roll, roll) == 100.0);
    CHECK(note_density_distance(roll, roll) == 0.0);
    // dense enough that every half-measure has onsets
    CHECK(chroma_similarity(roll, roll) == doctest::Approx(100.0).epsilon(1e-9));
}

TEST_CASE("hand-computed two-half-measure ssmd") {
    Pianoroll target(1, 4, 16);
    target.add_note({0, 60, 0, 1});
    target.add_note({0, 62, 8, 9});
    Pianoroll pred(1, 4, 16);
    pred.add_note({0, 60, 0, 1});
    pred.add_note({0, 60, 8, 9});
    CHECK(ssmd(target, pred) == doctest::Approx(25.0).epsilon(1e-12));
}

TEST_CASE("chroma similarity extremes and conventions") {
    Pianoroll target(1, 4, 8);
    target.add_note({0, 60, 0, 1});
    Pianoroll orthogonal(1, 4, 8);
    orthogonal.add_note({0, 61, 0, 1});
    CHECK(chroma_similarity(target, orthogonal) == doctest::Approx(0.0));

    Pianoroll empty_a(1, 4, 8);
    Pianoroll empty_b(1, 4, 8);
    CHECK(chroma_similarity(empty_a, empty_b) == 0.0);
}

TEST_CASE("grooving similarity extremes") {
    Pianoroll dense(1, 4, 16);
    for (int q = 0; q < 4; ++q) dense.add_note({0, 60, q * 4, q * 4 + 1});
    Pianoroll silent(1, 4, 16);
    CHECK(grooving_similarity(dense, dense) == 100.0);
    CHECK(grooving_similarity(dense, silent) == 0.0);
    CHECK(grooving_xor_mean(dense, silent) == 1.0);

    Pianoroll half(1, 4, 16);
    half.add_note({0, 60, 0, 1});
    half.add_note({0, 60, 4, 5});
    CHECK(grooving_similarity(dense, half) == doctest::Approx(50.0));
}

TEST_CASE("note density distance counts missing pitches") {
    Pianoroll target(1, 4, 4);
    target.add_note({0, 60, 0, 1});
    target.add_note({0, 64, 0, 1});
    target.add_note({0, 67, 0, 1});
    target.add_note({0, 70, 0, 1});
    Pianoroll pred(1, 4, 4);
    pred.add_note({0, 60, 0, 1});
    pred.add_note({0, 64, 0, 1});
    pred.add_note({0, 67, 0, 1});
    CHECK(note_density_distance(target, pred) == doctest::Approx(25.0));

    Pianoroll empty(1, 4, 4);
    CHECK(note_density_distance(target, empty) == doctest::Approx(100.0));
    CHECK(note_density_distance(empty, target) == 0.0);

    Pianoroll coarse_t(1, 2, 4);
    Pianoroll coarse_p(1, 2, 4);
    try {
        note_density_distance(coarse_t, coarse_p);
        FAIL("expected ResolutionTooCoarse");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ResolutionTooCoarse);
    }
}

TEST_CASE("metrics reject mismatched shapes") {
    Pianoroll a(1, 4, 8);
    Pianoroll b(1, 4, 16);
    CHECK_THROWS_AS(ssmd(a, b), Error);
    Pianoroll c(1, 8, 8);
    CHECK_THROWS_AS(chroma_similarity(a, c), Error);
}

TEST_CASE("metrics are stable under exact time tilings") {
    CounterRng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        Pianoroll a = random_roll(rng, 1, 4, 16, 0.25);
        Pianoroll b = random_roll(rng, 1, 4, 16, 0.25);
        // keep the period boundary silent so the tiling repeats onsets exactly
        for (int pitch = 0; pitch < 128; ++pitch) {
            a.set_cell(0, pitch, 15, false);
            b.set_cell(0, pitch, 15, false);
        }
        Pianoroll a2 = tile_twice(a);
        Pianoroll b2 = tile_twice(b);
        CHECK(std::abs(ssmd(a, b) - ssmd(a2, b2)) <= 1e-9);
        CHECK(std::abs(chroma_similarity(a, b) - chroma_similarity(a2, b2)) <= 1e-9);
        CHECK(std::abs(grooving_similarity(a, b) - grooving_similarity(a2, b2)) <= 1e-9);
        CHECK(std::abs(note_density_distance(a, b) - note_density_distance(a2, b2)) <= 1e-9);
    }
}

TEST_CASE("random rolls stay inside the documented ranges") {
    CounterRng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        Pianoroll a = random_roll(rng);
        Pianoroll b = random_roll(rng);
        double v = ssmd(a, b);
        CHECK(v >= 0.0);
        CHECK(v <= 100.0);
        double cs = chroma_similarity(a, b);
        CHECK(cs >= -100.0);
        CHECK(cs <= 100.0);
        double gs = grooving_similarity(a, b);
        CHECK(gs >= 0.0);
        CHECK(gs <= 100.0);
        double ndd = note_density_distance(a, b);
        CHECK(ndd >= 0.0);
        CHECK(ndd <= 100.0);
    }
}
