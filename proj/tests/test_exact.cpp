#include <doctest.h>

#include <cmath>
#include <numbers>

#include "stripes/error.hpp"
#include "stripes/exact.hpp"
#include "stripes/rng.hpp"

using namespace stripes;

namespace {

QKMatrices random_qk(CounterRng& rng, std::size_t tq, std::size_t tk, std::size_t d) {
    QKMatrices qk;
    qk.q = Matrix(tq, d);
    qk.k = Matrix(tk, d);
    for (std::size_t i = 0; i < tq; ++i)
        for (std::size_t j = 0; j < d; ++j) qk.q(i, j) = rng.normal();
    for (std::size_t i = 0; i < tk; ++i)
        for (std::size_t j = 0; j < d; ++j) qk.k(i, j) = rng.normal();
    return qk;
}

PositionalIndexSequence random_positions(CounterRng& rng, std::size_t t, double range = 10.0) {
    std::vector<double> values(t);
    for (auto& v : values) v = rng.uniform(-range, range);
    return PositionalIndexSequence::scalars(values);
}

} // namespace

TEST_CASE("positional matrix evaluates the damped cosine directly") {
    PEParams params = make_explicit_params(Method::FStripe1, 1, {{0.5}});
    auto pq = PositionalIndexSequence::scalars({2.0});
    auto pk = PositionalIndexSequence::scalars({0.0});
    PositionalMatrix pm = positional_matrix_rff(params, 0, pq, pk);
    CHECK(pm.values(0, 0) == doctest::Approx(0.540302305868).epsilon(1e-12));

    SUBCASE("zero lag returns the gain") {
        PEParams gained = make_explicit_params(Method::FStripe1, 1, {{0.77}}, {1.9});
        auto p = PositionalIndexSequence::scalars({3.0});
        CHECK(positional_matrix_rff(gained, 0, p, p).values(0, 0) == doctest::Approx(1.9));
    }
    SUBCASE("quarter phase kills the zero-lag cosine") {
        PEParams phased =
            make_explicit_params(Method::FStripe1, 1, {{1.0}}, {2.0}, {std::numbers::pi / 2});
        auto p = PositionalIndexSequence::scalars({1.0});
        CHECK(positional_matrix_rff(phased, 0, p, p).values(0, 0) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("label dimension mismatch is rejected") {
        auto wide = PositionalIndexSequence::structural({{1.0, 2.0}});
        CHECK_THROWS_AS(positional_matrix_rff(params, 0, wide, wide), Error);
    }
}

TEST_CASE("rope with zero frequencies collapses to plain content attention") {
    CounterRng rng(7);
    QKMatrices qk = random_qk(rng, 5, 6, 4);
    PEParams params = make_explicit_params(Method::RoPE, 4, {{0.0}, {0.0}});
    auto pq = random_positions(rng, 5);
    auto pk = random_positions(rng, 6);
    ScoreMatrix scores = exact_attention(Method::RoPE, qk, pq, pk, params);
    for (std::size_t m = 0; m < 5; ++m)
        for (std::size_t n = 0; n < 6; ++n) {
            double dot = 0.0;
            for (std::size_t d = 0; d < 4; ++d) dot += qk.q(m, d) * qk.k(n, d);
            CHECK(scores.values(m, n) == doctest::Approx(dot).epsilon(1e-14));
        }
}

TEST_CASE("fstripe1 at equal positions is the plain dot product") {
    CounterRng rng(9);
    QKMatrices qk = random_qk(rng, 4, 4, 3);
    PEParams params = make_params(Method::FStripe1, 3, 1, InitScheme::RandomUniform, 10000.0, 5);
    auto pos = PositionalIndexSequence::scalars({1.5, 1.5, 1.5, 1.5});
    ScoreMatrix scores = exact_attention(Method::FStripe1, qk, pos, pos, params);
    for (std::size_t m = 0; m < 4; ++m)
        for (std::size_t n = 0; n < 4; ++n) {
            double dot = 0.0;
            for (std::size_t d = 0; d < 3; ++d) dot += qk.q(m, d) * qk.k(n, d);
            CHECK(scores.values(m, n) == doctest::Approx(dot).epsilon(1e-13));
        }
}

TEST_CASE("ropepool direct substitution at the origin") {
    QKMatrices qk;
    qk.q = Matrix(1, 2);
    qk.k = Matrix(1, 2);
    qk.q(0, 0) = 1.0;
    qk.k(0, 0) = 1.0;
    PEParams params = make_explicit_params(Method::RoPEPool, 2, {{1.0}});
    auto zero = PositionalIndexSequence::scalars({0.0});
    ScoreMatrix scores = exact_attention(Method::RoPEPool, qk, zero, zero, params);
    CHECK(scores.values(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("canonical attention with all-ones positional matrices is content attention") {
    CounterRng rng(11);
    QKMatrices qk = random_qk(rng, 3, 5, 4);
    std::vector<PositionalMatrix> pmats;
    for (std::size_t d = 0; d < 4; ++d) pmats.push_back({Matrix(3, 5, 1.0), d});
    ScoreMatrix scores = canonical_attention(qk, pmats);
    for (std::size_t m = 0; m < 3; ++m)
        for (std::size_t n = 0; n < 5; ++n) {
            double dot = 0.0;
            for (std::size_t d = 0; d < 4; ++d) dot += qk.q(m, d) * qk.k(n, d);
            CHECK(scores.values(m, n) == doctest::Approx(dot).epsilon(1e-14));
        }
}

TEST_CASE("canonical over rff positional matrices reproduces exact fstripe1") {
    CounterRng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t d = 1 + rng.next_u64() % 6;
        std::size_t tq = 1 + rng.next_u64() % 10;
        std::size_t tk = 1 + rng.next_u64() % 10;
        std::vector<std::vector<double>> freqs(d);
        std::vector<double> gains(d), phases(d);
        for (std::size_t u = 0; u < d; ++u) {
            freqs[u] = {rng.uniform01()};
            gains[u] = rng.uniform(0.0, 2.0);
            phases[u] = rng.uniform(0.0, 2.0 * std::numbers::pi);
        }
        PEParams params = make_explicit_params(Method::FStripe1, d, freqs, gains, phases);
        QKMatrices qk = random_qk(rng, tq, tk, d);
        auto pq = random_positions(rng, tq);
        auto pk = random_positions(rng, tk);

        std::vector<PositionalMatrix> pmats;
        for (std::size_t u = 0; u < d; ++u)
            pmats.push_back(positional_matrix_rff(params, u, pq, pk));
        ScoreMatrix canon = canonical_attention(qk, pmats);
        ScoreMatrix exact = exact_attention(Method::FStripe1, qk, pq, pk, params);
        CHECK(max_abs_diff(canon.values, exact.values) <= 1e-12);
    }
}

TEST_CASE("single-cell canonical product") {
    QKMatrices qk;
    qk.q = Matrix(1, 1);
    qk.k = Matrix(1, 1);
    qk.q(0, 0) = 2.0;
    qk.k(0, 0) = 5.0;
    Matrix p(1, 1);
    p(0, 0) = 3.0;
    std::vector<PositionalMatrix> pmats = {{p, 0}};
    CHECK(canonical_attention(qk, pmats).values(0, 0) == doctest::Approx(30.0));
}

TEST_CASE("canonical attention rejects a wrong unit count") {
    QKMatrices qk;
    qk.q = Matrix(1, 2);
    qk.k = Matrix(1, 2);
    std::vector<PositionalMatrix> pmats = {{Matrix(1, 1, 1.0), 0}};
    CHECK_THROWS_AS(canonical_attention(qk, pmats), Error);
}

TEST_CASE("lag-shift invariance for rope and fstripe1, broken for ropepool") {
    CounterRng rng(17);
    for (Method method : {Method::RoPE, Method::FStripe1}) {
        for (int trial = 0; trial < 30; ++trial) {
            std::size_t d = method == Method::FStripe1 ? 3 : 4;
            QKMatrices qk = random_qk(rng, 6, 6, d);
            PEParams params =
                make_params(method, d, 1, InitScheme::RandomUniform, 10000.0, rng.next_u64());
            auto pq = random_positions(rng, 6);
            auto pk = random_positions(rng, 6);
            double c = rng.uniform(-20.0, 20.0);
            ScoreMatrix base = exact_attention(method, qk, pq, pk, params);
            ScoreMatrix moved = exact_attention(method, qk, pq.shifted(c), pk.shifted(c), params);
            CHECK(max_abs_diff(base.values, moved.values) <= 1e-12);
        }
    }

    QKMatrices qk;
    qk.q = Matrix(1, 2);
    qk.k = Matrix(1, 2);
    qk.q(0, 0) = 1.0;
    qk.k(0, 0) = 1.0;
    PEParams params = make_explicit_params(Method::RoPEPool, 2, {{1.0}});
    auto zero = PositionalIndexSequence::scalars({0.0});
    ScoreMatrix base = exact_attention(Method::RoPEPool, qk, zero, zero, params);
    auto moved = zero.shifted(std::numbers::pi / 4.0);
    ScoreMatrix shifted = exact_attention(Method::RoPEPool, qk, moved, moved, params);
    CHECK(std::abs(base.values(0, 0) - shifted.values(0, 0)) > 0.1);
}

TEST_CASE("degenerate sequence lengths are legal") {
    QKMatrices qk;
    qk.q = Matrix(0, 2);
    qk.k = Matrix(0, 2);
    PEParams params = make_explicit_params(Method::RoPE, 2, {{0.5}});
    auto empty = PositionalIndexSequence::time_indices(0);
    ScoreMatrix scores = exact_attention(Method::RoPE, qk, empty, empty, params);
    CHECK(scores.values.rows() == 0);
    CHECK(scores.values.cols() == 0);

    QKMatrices one;
    one.q = Matrix(1, 2, 0.5);
    one.k = Matrix(1, 2, 0.5);
    auto single = PositionalIndexSequence::time_indices(1);
    CHECK(exact_attention(Method::RoPE, one, single, single, params).values.rows() == 1);
}

TEST_CASE("vector-valued labels use the inner-product phase") {
    PEParams params = make_explicit_params(Method::FStripe1, 1, {{0.25, 0.5, 0.75}});
    auto pq = PositionalIndexSequence::structural({{1.0, 2.0, 3.0}});
    auto pk = PositionalIndexSequence::structural({{0.0, 0.0, 1.0}});
    // phase = 0.25*1 + 0.5*2 + 0.75*2 = 2.75
    QKMatrices qk;
    qk.q = Matrix(1, 1, 1.0);
    qk.k = Matrix(1, 1, 1.0);
    ScoreMatrix scores = exact_attention(Method::FStripe1, qk, pq, pk, params);
    CHECK(scores.values(0, 0) == doctest::Approx(std::cos(2.75)).epsilon(1e-14));
}

TEST_CASE("analytic frequency gradients match central differences") {
    CounterRng rng(19);
    const double step = 1e-5;
    for (Method method : {Method::FStripe1, Method::RoPE, Method::RoPEPool}) {
        for (int trial = 0; trial < 25; ++trial) {
            std::size_t d = method == Method::FStripe1 ? 1 + rng.next_u64() % 6
                                                       : 2 * (1 + rng.next_u64() % 3);
            QKMatrices qk = random_qk(rng, 4, 5, d);
            PEParams params =
                make_params(method, d, 1, InitScheme::RandomUniform, 10000.0, rng.next_u64());
            auto pq = random_positions(rng, 4, 5.0);
            auto pk = random_positions(rng, 5, 5.0);
            std::size_t unit = rng.next_u64() % params.unit_count();

            Matrix analytic = frequency_gradient(method, qk, pq, pk, params, unit, 0);
            PEParams plus = params, minus = params;
            plus.frequencies[0][unit][0] += step;
            minus.frequencies[0][unit][0] -= step;
            ScoreMatrix up = exact_attention(method, qk, pq, pk, plus);
            ScoreMatrix down = exact_attention(method, qk, pq, pk, minus);
            for (std::size_t m = 0; m < 4; ++m)
                for (std::size_t n = 0; n < 5; ++n) {
                    double fd = (up.values(m, n) - down.values(m, n)) / (2.0 * step);
                    CHECK(std::abs(fd - analytic(m, n)) <= 1e-6);
                }
        }
    }
}

TEST_CASE("zero-lag fstripe1 gradient vanishes") {
    QKMatrices qk;
    qk.q = Matrix(1, 1, 0.7);
    qk.k = Matrix(1, 1, -0.4);
    PEParams params = make_explicit_params(Method::FStripe1, 1, {{0.3}});
    auto pos = PositionalIndexSequence::scalars({2.0});
    Matrix grad = frequency_gradient(Method::FStripe1, qk, pos, pos, params, 0);
    CHECK(grad(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("rope gradient example at zero frequency") {
    QKMatrices qk;
    qk.q = Matrix(1, 2);
    qk.k = Matrix(1, 2);
    qk.q(0, 0) = 1.0;
    qk.k(0, 0) = 1.0;
    PEParams params = make_explicit_params(Method::RoPE, 2, {{0.0}});
    auto pq = PositionalIndexSequence::scalars({1.0});
    auto pk = PositionalIndexSequence::scalars({0.0});
    Matrix grad = frequency_gradient(Method::RoPE, qk, pq, pk, params, 0);
    // -F1 sin(0) + F2 cos(0) with F2 = 0
    CHECK(grad(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("dimension mismatches raise typed errors") {
    QKMatrices qk;
    qk.q = Matrix(2, 4);
    qk.k = Matrix(2, 2);
    PEParams params = make_explicit_params(Method::RoPE, 4, {{0.5}, {0.1}});
    auto pos = PositionalIndexSequence::time_indices(2);
    CHECK_THROWS_AS(exact_attention(Method::RoPE, qk, pos, pos, params), Error);
}
