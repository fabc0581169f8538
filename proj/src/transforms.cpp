#include "stripes/transforms.hpp"

#include <cmath>

#include "stripes/error.hpp"
#include "stripes/util.hpp"

namespace stripes {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

void check_combination(Method method, Pooling pooling) {
    if (method == Method::RoPE && pooling == Pooling::Pooled)
        throw Error(ErrorCode::InvalidArgument,
                    "pooled rotary features are exposed as ropepool, not rope");
    if (method == Method::RoPEPool && pooling == Pooling::Unpooled)
        throw Error(ErrorCode::InvalidArgument, "ropepool is defined with pooling");
}

void check_params(const PEParams& params, Method method, std::size_t dim, std::size_t label_dim) {
    if (params.method != method)
        throw Error(ErrorCode::InvalidArgument, "params were built for a different method");
    if (params.dim != dim)
        throw Error(ErrorCode::DimensionMismatch, "params dimension does not match input");
    std::size_t units = unit_count_for(method, dim);
    if (params.unit_count() != units)
        throw Error(ErrorCode::UnitCountMismatch, "params unit count does not match dimension");
    for (std::size_t u = 0; u < units; ++u) {
        if (params.frequency(u).size() != label_dim)
            throw Error(ErrorCode::DimensionMismatch,
                        "frequency vector dimension does not match positional labels");
        if (params.phase(u) != 0.0)
            throw Error(ErrorCode::InvalidArgument,
                        "feature transforms represent zero-phase parameter sets");
    }
}

} // namespace

const char* to_string(Pooling pooling) {
    return pooling == Pooling::Unpooled ? "unpooled" : "pooled";
}

std::array<double, 2> h_fstripe1(double a, std::span<const double> p, std::span<const double> f) {
    if (p.size() != f.size())
        throw Error(ErrorCode::DimensionMismatch, "label and frequency dimensions differ");
    double theta = dot(f, p);
    return {a * std::cos(theta), a * std::sin(theta)};
}

std::array<double, 2> h_rope(std::array<double, 2> pair, std::span<const double> p,
                             std::span<const double> f) {
    if (p.size() != f.size())
        throw Error(ErrorCode::DimensionMismatch, "label and frequency dimensions differ");
    double theta = dot(f, p);
    double c = std::cos(theta), s = std::sin(theta);
    return {pair[0] * c - pair[1] * s, pair[1] * c + pair[0] * s};
}

std::size_t feature_width(Method method, std::size_t dim, Pooling pooling) {
    check_combination(method, pooling);
    switch (method) {
        case Method::FStripe1: return pooling == Pooling::Unpooled ? 2 * dim : 2;
        case Method::RoPE: return dim;
        case Method::RoPEPool: return unit_count_for(method, dim);
    }
    return 0;
}

std::vector<double> transform_row(std::span<const double> x, std::span<const double> p,
                                  Method method, const PEParams& params, Pooling pooling) {
    check_combination(method, pooling);
    check_params(params, method, x.size(), p.size());
    const std::size_t units = params.unit_count();
    std::vector<double> out(feature_width(method, x.size(), pooling), 0.0);

    switch (method) {
        case Method::FStripe1: {
            for (std::size_t d = 0; d < units; ++d) {
                double scale = std::sqrt(params.gain(d));
                auto hv = h_fstripe1(scale * x[d], p, params.frequency(d));
                if (pooling == Pooling::Unpooled) {
                    out[2 * d] = hv[0];
                    out[2 * d + 1] = hv[1];
                } else {
                    out[0] += hv[0];
                    out[1] += hv[1];
                }
            }
            break;
        }
        case Method::RoPE: {
            for (std::size_t d = 0; d < units; ++d) {
                double scale = std::sqrt(params.gain(d));
                auto hv = h_rope({scale * x[2 * d], scale * x[2 * d + 1]}, p, params.frequency(d));
                out[2 * d] = hv[0];
                out[2 * d + 1] = hv[1];
            }
            break;
        }
        case Method::RoPEPool: {
            for (std::size_t d = 0; d < units; ++d) {
                double scale = std::sqrt(params.gain(d));
                auto hv = h_rope({scale * x[2 * d], scale * x[2 * d + 1]}, p, params.frequency(d));
                out[d] = hv[0] + hv[1];
            }
            break;
        }
    }
    return out;
}

FeatureMatrix transform_sequence(const Matrix& x, const PositionalIndexSequence& pos,
                                 Method method, const PEParams& params, Pooling pooling) {
    if (pos.length() != x.rows())
        throw Error(ErrorCode::DimensionMismatch, "positional sequence length must match rows");
    FeatureMatrix out;
    out.pooling = pooling;
    out.method = method;
    out.rows = Matrix(x.rows(), feature_width(method, x.cols(), pooling));
    for (std::size_t t = 0; t < x.rows(); ++t) {
        auto row = transform_row(x.row(t), pos.at(t), method, params, pooling);
        for (std::size_t j = 0; j < row.size(); ++j) out.rows(t, j) = row[j];
    }
    return out;
}

ScoreMatrix transform_attention(const QKMatrices& qk, const PositionalIndexSequence& pos_q,
                                const PositionalIndexSequence& pos_k, Method method,
                                const PEParams& params, Pooling pooling) {
    if (qk.q.cols() != qk.k.cols())
        throw Error(ErrorCode::DimensionMismatch, "Q and K must share dimension D");
    FeatureMatrix fq = transform_sequence(qk.q, pos_q, method, params, pooling);
    FeatureMatrix fk = transform_sequence(qk.k, pos_k, method, params, pooling);

    ScoreMatrix out;
    out.tag = pooling == Pooling::Unpooled ? ScoreTag::TransformUnpooled : ScoreTag::TransformPooled;
    out.values = Matrix(fq.rows.rows(), fk.rows.rows());
    const std::size_t width = fq.rows.cols();
    parallel_for(fq.rows.rows(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t m = begin; m < end; ++m) {
            auto qrow = fq.rows.row(m);
            for (std::size_t n = 0; n < fk.rows.rows(); ++n) {
                auto krow = fk.rows.row(n);
                double acc = 0.0;
                for (std::size_t j = 0; j < width; ++j) acc += qrow[j] * krow[j];
                out.values(m, n) = acc;
            }
        }
    });
    return out;
}

ResidualStats cross_dimension_residual(const QKMatrices& qk, const PositionalIndexSequence& pos_q,
                                       const PositionalIndexSequence& pos_k,
                                       const PEParams& params) {
    if (params.method != Method::FStripe1)
        throw Error(ErrorCode::InvalidArgument, "residual statistics are defined for fstripe1");
    ScoreMatrix unpooled =
        transform_attention(qk, pos_q, pos_k, Method::FStripe1, params, Pooling::Unpooled);
    ScoreMatrix pooled =
        transform_attention(qk, pos_q, pos_k, Method::FStripe1, params, Pooling::Pooled);

    ResidualStats stats;
    std::size_t cells = unpooled.values.rows() * unpooled.values.cols();
    if (cells == 0) return stats;
    double total = 0.0;
    for (std::size_t m = 0; m < unpooled.values.rows(); ++m) {
        for (std::size_t n = 0; n < unpooled.values.cols(); ++n) {
            double diff = std::abs(pooled.values(m, n) - unpooled.values(m, n));
            total += diff;
            if (diff > stats.max_abs) stats.max_abs = diff;
        }
    }
    stats.mean_abs = total / static_cast<double>(cells);
    return stats;
}

} // namespace stripes
