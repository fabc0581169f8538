#include <doctest.h>

#include <cmath>

#include "stripes/context_mi.hpp"
#include "stripes/error.hpp"
#include "stripes/rng.hpp"

using namespace stripes;

namespace {

Pianoroll two_chord_roll() {
    // 16 steps, two chords: C major (0,4,7) then A minor (9,0,4)
    Pianoroll roll(1, 4, 16);
    roll.add_note({0, 60, 0, 4});  // C during chord 0
    roll.add_note({0, 64, 4, 8});  // E during chord 0
    roll.add_note({0, 69, 8, 12}); // A during chord 1
    roll.add_note({0, 72, 12, 16});
    ChordAnnotation annotation;
    annotation.spans.push_back({0, 8, 0, (1u << 0) | (1u << 4) | (1u << 7)});
    annotation.spans.push_back({8, 16, 9, (1u << 9) | (1u << 0) | (1u << 4)});
    annotation.key = KeySignature{0, KeyMode::Major};
    roll.set_annotation(annotation);
    return roll;
}

} // namespace

TEST_CASE("time context labels events with their step") {
    Pianoroll roll(1, 4, 16);
    for (int t = 0; t < 16; ++t) roll.add_note({0, 60 + (t % 3), t, t + 1});
    LabeledEvents events = assign_context(roll, ChordAnnotation{}, ContextType::Time);
    REQUIRE(events.pairs.size() == 16);
    std::vector<bool> seen(16, false);
    for (const auto& [pitch, label] : events.pairs) {
        CHECK(label >= 0);
        CHECK(label < 16);
        seen[static_cast<std::size_t>(label)] = true;
    }
    for (bool s : seen) CHECK(s);
}

TEST_CASE("per-cell counting emits one event per active cell") {
    Pianoroll roll(1, 4, 8);
    roll.add_note({0, 60, 0, 8}); // sustained
    LabeledEvents per_cell = assign_context(roll, ChordAnnotation{}, ContextType::Time);
    CHECK(per_cell.pairs.size() == 8);
    LabeledEvents onsets = assign_context(roll, ChordAnnotation{}, ContextType::Time,
                                          RepOrder::TokenId, EventCounting::OnsetOnly);
    CHECK(onsets.pairs.size() == 1);
}

TEST_CASE("key context transposes chords into the C frame") {
    // E minor chord in a D major song maps to a D minor token
    Pianoroll roll(1, 4, 4);
    roll.add_note({0, 64, 0, 4});
    ChordAnnotation annotation;
    unsigned e_minor = (1u << 4) | (1u << 7) | (1u << 11);
    annotation.spans.push_back({0, 4, 4, e_minor});
    annotation.key = KeySignature{2, KeyMode::Major};
    roll.set_annotation(annotation);

    LabeledEvents events = assign_context(roll, *roll.annotation(), ContextType::Key);
    REQUIRE(!events.pairs.empty());
    unsigned d_minor = (1u << 2) | (1u << 5) | (1u << 9);
    std::int64_t expected = 2 * 4096 + d_minor;
    for (const auto& [pitch, label] : events.pairs) CHECK(label == expected);
}

TEST_CASE("rep context renumbers by ascending global token id") {
    // four spans with global ids ordered 17, 3, 17, 9 (schematically)
    Pianoroll roll(1, 4, 16);
    for (int t = 0; t < 16; ++t) roll.add_note({0, 60, t, t + 1});
    ChordAnnotation annotation;
    unsigned c1 = 0b000000010001; // root 4 -> id 4*4096+17
    unsigned c2 = 0b000000000011; // root 0 -> id 3
    unsigned c3 = 0b000000001001; // root 2 -> id 2*4096+9
    annotation.spans.push_back({0, 4, 4, c1});
    annotation.spans.push_back({4, 8, 0, c2});
    annotation.spans.push_back({8, 12, 4, c1});
    annotation.spans.push_back({12, 16, 2, c3});
    roll.set_annotation(annotation);

    LabeledEvents events = assign_context(roll, *roll.annotation(), ContextType::Rep);
    // ascending ids: c2 (3) -> 0, c3 -> 1, c1 -> 2; spans map to 2,0,2,1
    std::vector<std::int64_t> expected = {2, 0, 2, 1};
    for (std::size_t i = 0; i < events.pairs.size(); ++i)
        CHECK(events.pairs[i].second == expected[i / 4]);

    SUBCASE("appearance order instead renumbers by first occurrence") {
        LabeledEvents byappear = assign_context(roll, *roll.annotation(), ContextType::Rep,
                                                RepOrder::Appearance);
        std::vector<std::int64_t> alt = {0, 1, 0, 2};
        for (std::size_t i = 0; i < byappear.pairs.size(); ++i)
            CHECK(byappear.pairs[i].second == alt[i / 4]);
    }
}

TEST_CASE("bin context uses the raw chroma mask") {
    Pianoroll roll = two_chord_roll();
    LabeledEvents events = assign_context(roll, *roll.annotation(), ContextType::Bin);
    for (const auto& [pitch, label] : events.pairs) {
        CHECK((label == ((1 << 0) | (1 << 4) | (1 << 7)) ||
               label == ((1 << 9) | (1 << 0) | (1 << 4))));
    }
}

TEST_CASE("chord contexts demand annotations and coverage") {
    Pianoroll roll(1, 4, 8);
    roll.add_note({0, 60, 0, 8});
    try {
        assign_context(roll, ChordAnnotation{}, ContextType::Bin);
        FAIL("expected MissingAnnotation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingAnnotation);
    }

    ChordAnnotation partial;
    partial.spans.push_back({0, 4, 0, 1u});
    try {
        assign_context(roll, partial, ContextType::Bin);
        FAIL("expected CoverageGap");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CoverageGap);
    }

    ChordAnnotation keyless;
    keyless.spans.push_back({0, 8, 0, 1u});
    try {
        assign_context(roll, keyless, ContextType::Key);
        FAIL("expected MissingAnnotation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingAnnotation);
    }
}

TEST_CASE("constant labels give exactly zero information") {
    LabeledEvents events;
    for (int i = 0; i < 100; ++i) events.pairs.emplace_back(i % 7, 42);
    CHECK(mutual_information(events) == 0.0);
}

TEST_CASE("a uniform bijection has entropy ln 10") {
    LabeledEvents events;
    for (int v = 0; v < 10; ++v)
        for (int rep = 0; rep < 50; ++rep) events.pairs.emplace_back(v, 1000 + v);
    CHECK(mutual_information(events) == doctest::Approx(std::log(10.0)).epsilon(1e-12));
}

TEST_CASE("plug-in estimate approaches the closed-form mixture value") {
    CounterRng rng(7);
    LabeledEvents events;
    const std::size_t n = 200000;
    events.pairs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        int label = static_cast<int>(rng.next_u64() % 10);
        int pitch = rng.uniform01() <= 0.9 ? label : static_cast<int>(rng.next_u64() % 10);
        events.pairs.emplace_back(pitch, label);
    }
    double analytic = 0.0;
    for (int x = 0; x < 10; ++x)
        for (int y = 0; y < 10; ++y) {
            double pxy = (0.9 * (x == y ? 1.0 : 0.0) + 0.01) / 10.0;
            analytic += pxy * std::log(pxy / 0.01);
        }
    CHECK(mutual_information(events) == doctest::Approx(analytic).epsilon(0.02));
}

TEST_CASE("mutual information respects its bounds and relabeling invariance") {
    CounterRng rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        LabeledEvents events;
        std::size_t n = 200 + rng.next_u64() % 800;
        for (std::size_t i = 0; i < n; ++i)
            events.pairs.emplace_back(static_cast<int>(rng.next_u64() % 12),
                                      static_cast<std::int64_t>(rng.next_u64() % 6));
        double mi = mutual_information(events);
        CHECK(mi >= 0.0);

        // entropies from the same histogram
        std::map<int, double> px;
        std::map<std::int64_t, double> py;
        for (const auto& [p, l] : events.pairs) {
            px[p] += 1.0;
            py[l] += 1.0;
        }
        double hx = 0.0, hy = 0.0;
        for (auto& [_, c] : px) hx -= c / n * std::log(c / n);
        for (auto& [_, c] : py) hy -= c / n * std::log(c / n);
        CHECK(mi <= std::min(hx, hy) + 1e-12);

        LabeledEvents relabeled = events;
        for (auto& [p, l] : relabeled.pairs) l = 5000 - 7 * l;
        CHECK(std::abs(mutual_information(relabeled) - mi) <= 1e-12);
    }
}

TEST_CASE("a single event carries no information") {
    LabeledEvents one;
    one.pairs.emplace_back(60, 3);
    CHECK(mutual_information(one) == 0.0);

    LabeledEvents none;
    CHECK_THROWS_AS(mutual_information(none), Error);
}
