#include "stripes/linear_attention.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "stripes/error.hpp"
#include "stripes/rng.hpp"
#include "stripes/util.hpp"

namespace stripes {

namespace {
constexpr double kNormalizerFloor = 1e-30;
} // namespace

const char* to_string(PhiVariant variant) {
    return variant == PhiVariant::PositiveShift ? "positive-shift" : "exp-random-features";
}

PhiMap::PhiMap(const PhiConfig& config, std::size_t input_width)
    : config_(config), input_width_(input_width) {
    if (config.variant == PhiVariant::PositiveShift) {
        output_width_ = input_width;
        return;
    }
    if (config.random_features < 1)
        throw Error(ErrorCode::InvalidArgument, "random feature count must be >= 1");
    output_width_ = config.random_features;
    weights_ = Matrix(config.random_features, input_width);
    CounterRng rng(config.seed, mix64(0xF17u + input_width));
    for (std::size_t i = 0; i < weights_.rows(); ++i)
        for (std::size_t j = 0; j < weights_.cols(); ++j) weights_(i, j) = rng.normal();
}

std::vector<double> PhiMap::operator()(std::span<const double> x) const {
    if (x.size() != input_width_)
        throw Error(ErrorCode::DimensionMismatch, "feature width does not match the map");
    std::vector<double> out(output_width_);
    if (config_.variant == PhiVariant::PositiveShift) {
        for (std::size_t i = 0; i < x.size(); ++i)
            out[i] = x[i] >= 0.0 ? x[i] + 1.0 : std::exp(x[i]);
        return out;
    }
    double norm2 = 0.0;
    for (double v : x) norm2 += v * v;
    const double scale = 1.0 / std::sqrt(static_cast<double>(output_width_));
    for (std::size_t i = 0; i < output_width_; ++i) {
        double proj = 0.0;
        for (std::size_t j = 0; j < input_width_; ++j) proj += weights_(i, j) * x[j];
        out[i] = std::exp(proj - 0.5 * norm2) * scale;
    }
    return out;
}

std::vector<double> phi(std::span<const double> x, const PhiConfig& config) {
    return PhiMap(config, x.size())(x);
}

Pooling default_pooling(Method method) {
    return method == Method::RoPEPool ? Pooling::Pooled : Pooling::Unpooled;
}

namespace {

void check_v(const QKMatrices& qk) {
    if (!qk.v.has_value())
        throw Error(ErrorCode::InvalidArgument, "attention paths require a value matrix");
    if (qk.v->rows() != qk.k.rows())
        throw Error(ErrorCode::DimensionMismatch, "V must have one row per key");
}

} // namespace

AttentionOutput linear_path(const QKMatrices& qk, const PositionalIndexSequence& pos_q,
                            const PositionalIndexSequence& pos_k, Method method,
                            const PEParams& params, Pooling pooling,
                            const PhiConfig& phi_config) {
    check_v(qk);
    FeatureMatrix fq = transform_sequence(qk.q, pos_q, method, params, pooling);
    FeatureMatrix fk = transform_sequence(qk.k, pos_k, method, params, pooling);
    PhiMap map(phi_config, fq.rows.cols());
    const Matrix& v = *qk.v;
    const std::size_t tq = fq.rows.rows();
    const std::size_t tk = fk.rows.rows();
    const std::size_t width = map.output_width();
    const std::size_t dv = v.cols();

    // Key-side accumulators, built once in a fixed sequential order.
    Matrix summary(width, dv);
    std::vector<double> key_mass(width, 0.0);
    for (std::size_t n = 0; n < tk; ++n) {
        std::vector<double> fk_phi = map(fk.rows.row(n));
        for (std::size_t r = 0; r < width; ++r) {
            key_mass[r] += fk_phi[r];
            double scale = fk_phi[r];
            for (std::size_t c = 0; c < dv; ++c) summary(r, c) += scale * v(n, c);
        }
    }

    AttentionOutput out;
    out.y = Matrix(tq, dv);
    out.normalizers.resize(tq);
    for (std::size_t m = 0; m < tq; ++m) {
        std::vector<double> fq_phi = map(fq.rows.row(m));
        double denom = 0.0;
        for (std::size_t r = 0; r < width; ++r) denom += fq_phi[r] * key_mass[r];
        if (!(denom > kNormalizerFloor))
            throw Error(ErrorCode::ZeroNormalizer, "attention normalizer vanished");
        out.normalizers[m] = denom;
        for (std::size_t c = 0; c < dv; ++c) {
            double num = 0.0;
            for (std::size_t r = 0; r < width; ++r) num += fq_phi[r] * summary(r, c);
            out.y(m, c) = num / denom;
        }
    }
    return out;
}

AttentionOutput quadratic_path(const QKMatrices& qk, const PositionalIndexSequence& pos_q,
                               const PositionalIndexSequence& pos_k, Method method,
                               const PEParams& params, Pooling pooling,
                               const PhiConfig& phi_config) {
    check_v(qk);
    FeatureMatrix fq = transform_sequence(qk.q, pos_q, method, params, pooling);
    FeatureMatrix fk = transform_sequence(qk.k, pos_k, method, params, pooling);
    PhiMap map(phi_config, fq.rows.cols());
    const Matrix& v = *qk.v;
    const std::size_t tq = fq.rows.rows();
    const std::size_t tk = fk.rows.rows();
    const std::size_t width = map.output_width();
    const std::size_t dv = v.cols();

    Matrix phi_q(tq, width);
    for (std::size_t m = 0; m < tq; ++m) {
        std::vector<double> row = map(fq.rows.row(m));
        for (std::size_t r = 0; r < width; ++r) phi_q(m, r) = row[r];
    }
    Matrix phi_k(tk, width);
    for (std::size_t n = 0; n < tk; ++n) {
        std::vector<double> row = map(fk.rows.row(n));
        for (std::size_t r = 0; r < width; ++r) phi_k(n, r) = row[r];
    }

    Matrix scores(tq, tk);
    for (std::size_t m = 0; m < tq; ++m) {
        auto qrow = phi_q.row(m);
        for (std::size_t n = 0; n < tk; ++n) {
            auto krow = phi_k.row(n);
            double acc = 0.0;
            for (std::size_t r = 0; r < width; ++r) acc += qrow[r] * krow[r];
            scores(m, n) = acc;
        }
    }

    AttentionOutput out;
    out.y = Matrix(tq, dv);
    out.normalizers.resize(tq);
    for (std::size_t m = 0; m < tq; ++m) {
        double denom = 0.0;
        for (std::size_t n = 0; n < tk; ++n) denom += scores(m, n);
        if (!(denom > kNormalizerFloor))
            throw Error(ErrorCode::ZeroNormalizer, "attention normalizer vanished");
        out.normalizers[m] = denom;
        for (std::size_t c = 0; c < dv; ++c) {
            double num = 0.0;
            for (std::size_t n = 0; n < tk; ++n) num += scores(m, n) * v(n, c);
            out.y(m, c) = num / denom;
        }
    }
    return out;
}

namespace {

volatile double benchmark_sink = 0.0;

double median_of(std::vector<double>& samples) {
    std::sort(samples.begin(), samples.end());
    std::size_t n = samples.size();
    return n % 2 == 1 ? samples[n / 2] : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
}

} // namespace

std::vector<BenchmarkRow> benchmark_scaling(Method method, std::span<const std::size_t> lengths,
                                            std::size_t dim, std::size_t repeats,
                                            std::uint64_t seed) {
    if (repeats < 1) throw Error(ErrorCode::InvalidArgument, "repeats must be >= 1");
    for (std::size_t i = 1; i < lengths.size(); ++i)
        if (lengths[i] < lengths[i - 1])
            throw Error(ErrorCode::InvalidArgument, "lengths must be non-decreasing");

    ThreadCapGuard single_thread(1);
    Pooling pooling = default_pooling(method);
    PEParams params = make_params(method, dim, 1, InitScheme::ExponentialShared, 10000.0, 0);

    std::vector<BenchmarkRow> rows;
    for (std::size_t t : lengths) {
        CounterRng rng(seed, t);
        QKMatrices qk;
        qk.q = Matrix(t, dim);
        qk.k = Matrix(t, dim);
        qk.v = Matrix(t, dim);
        for (std::size_t i = 0; i < t; ++i)
            for (std::size_t j = 0; j < dim; ++j) {
                qk.q(i, j) = rng.normal();
                qk.k(i, j) = rng.normal();
                (*qk.v)(i, j) = rng.normal();
            }
        PositionalIndexSequence pos = PositionalIndexSequence::time_indices(t);
        PhiConfig phi_config;

        for (const char* path : {"linear", "quadratic"}) {
            std::vector<double> samples;
            samples.reserve(repeats);
            for (std::size_t rep = 0; rep < repeats; ++rep) {
                auto begin = std::chrono::steady_clock::now();
                AttentionOutput out =
                    path[0] == 'l'
                        ? linear_path(qk, pos, pos, method, params, pooling, phi_config)
                        : quadratic_path(qk, pos, pos, method, params, pooling, phi_config);
                auto end = std::chrono::steady_clock::now();
                benchmark_sink = benchmark_sink + out.y(0, 0);
                samples.push_back(
                    std::chrono::duration_cast<std::chrono::nanoseconds>(end - begin).count());
            }
            rows.push_back({to_string(method), t, dim, path, median_of(samples), repeats});
        }
    }
    return rows;
}

std::string benchmark_csv(const std::vector<BenchmarkRow>& rows) {
    std::string out = "method,T,D,path,median_ns,repeats\n";
    char line[256];
    for (const auto& row : rows) {
        std::snprintf(line, sizeof(line), "%s,%zu,%zu,%s,%.17g,%zu\n", row.method.c_str(), row.t,
                      row.d, row.path.c_str(), row.median_ns, row.repeats);
        out += line;
    }
    return out;
}

} // namespace stripes
