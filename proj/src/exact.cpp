#include "stripes/exact.hpp"

#include <cmath>

#include "stripes/error.hpp"
#include "stripes/util.hpp"

namespace stripes {

namespace {

void check_inputs(Method method, const QKMatrices& qk, const PositionalIndexSequence& pos_q,
                  const PositionalIndexSequence& pos_k, const PEParams& params) {
    if (qk.q.cols() != qk.k.cols())
        throw Error(ErrorCode::DimensionMismatch, "Q and K must share dimension D");
    if (qk.q.cols() != params.dim)
        throw Error(ErrorCode::DimensionMismatch, "Q/K dimension does not match params");
    if (pos_q.length() != qk.q.rows() || pos_k.length() != qk.k.rows())
        throw Error(ErrorCode::DimensionMismatch, "positional sequence lengths must match Q/K rows");
    if (pos_q.dim() != pos_k.dim())
        throw Error(ErrorCode::DimensionMismatch, "query/key label dimensions differ");
    if (params.method != method)
        throw Error(ErrorCode::InvalidArgument, "params were built for a different method");
    std::size_t units = unit_count_for(method, params.dim);
    if (params.unit_count() != units)
        throw Error(ErrorCode::UnitCountMismatch, "params unit count does not match dimension");
    for (std::size_t u = 0; u < units; ++u)
        if (params.frequency(u).size() != pos_q.dim())
            throw Error(ErrorCode::DimensionMismatch,
                        "frequency vector dimension does not match positional labels");
}

double dot(std::span<const double> f, std::span<const double> p) {
    double acc = 0.0;
    for (std::size_t l = 0; l < f.size(); ++l) acc += f[l] * p[l];
    return acc;
}

} // namespace

PositionalMatrix positional_matrix_rff(const PEParams& params, std::size_t unit,
                                       const PositionalIndexSequence& pos_q,
                                       const PositionalIndexSequence& pos_k) {
    if (unit >= params.unit_count()) throw Error(ErrorCode::IndexOutOfRange, "unit out of range");
    const auto& freq = params.frequency(unit);
    if (freq.size() != pos_q.dim() || pos_q.dim() != pos_k.dim())
        throw Error(ErrorCode::DimensionMismatch,
                    "frequency vector dimension does not match positional labels");
    double gain = params.gain(unit);
    double phase = params.phase(unit);

    PositionalMatrix out;
    out.unit = unit;
    out.values = Matrix(pos_q.length(), pos_k.length());
    for (std::size_t m = 0; m < pos_q.length(); ++m) {
        auto pm = pos_q.at(m);
        for (std::size_t n = 0; n < pos_k.length(); ++n) {
            auto pn = pos_k.at(n);
            double lagdot = 0.0;
            for (std::size_t l = 0; l < freq.size(); ++l) lagdot += freq[l] * (pm[l] - pn[l]);
            out.values(m, n) = gain * std::cos(lagdot + phase);
        }
    }
    return out;
}

ScoreMatrix exact_attention(Method method, const QKMatrices& qk,
                            const PositionalIndexSequence& pos_q,
                            const PositionalIndexSequence& pos_k, const PEParams& params) {
    check_inputs(method, qk, pos_q, pos_k, params);
    const std::size_t tq = qk.q.rows();
    const std::size_t tk = qk.k.rows();
    const std::size_t units = params.unit_count();

    ScoreMatrix out;
    out.tag = ScoreTag::Exact;
    out.values = Matrix(tq, tk);

    parallel_for(tq, [&](std::size_t begin, std::size_t end) {
        for (std::size_t m = begin; m < end; ++m) {
            auto qrow = qk.q.row(m);
            auto pm = pos_q.at(m);
            for (std::size_t n = 0; n < tk; ++n) {
                auto krow = qk.k.row(n);
                auto pn = pos_k.at(n);
                double score = 0.0;
                switch (method) {
                    case Method::FStripe1: {
                        for (std::size_t d = 0; d < units; ++d) {
                            const auto& f = params.frequency(d);
                            double lag = 0.0;
                            for (std::size_t l = 0; l < f.size(); ++l) lag += f[l] * (pm[l] - pn[l]);
                            score += params.gain(d) * qrow[d] * krow[d] *
                                     std::cos(lag + params.phase(d));
                        }
                        break;
                    }
                    case Method::RoPE: {
                        for (std::size_t d = 0; d < units; ++d) {
                            const auto& f = params.frequency(d);
                            double lag = 0.0;
                            for (std::size_t l = 0; l < f.size(); ++l) lag += f[l] * (pm[l] - pn[l]);
                            double q1 = qrow[2 * d], q2 = qrow[2 * d + 1];
                            double k1 = krow[2 * d], k2 = krow[2 * d + 1];
                            score += params.gain(d) * ((q1 * k1 + q2 * k2) * std::cos(lag) +
                                                       (q1 * k2 - q2 * k1) * std::sin(lag));
                        }
                        break;
                    }
                    case Method::RoPEPool: {
                        for (std::size_t d = 0; d < units; ++d) {
                            const auto& f = params.frequency(d);
                            double lag = dot(f, pm) - dot(f, pn);
                            double sum = dot(f, pm) + dot(f, pn);
                            double q1 = qrow[2 * d], q2 = qrow[2 * d + 1];
                            double k1 = krow[2 * d], k2 = krow[2 * d + 1];
                            score += params.gain(d) * ((q1 * k1 + q2 * k2) * std::cos(lag) +
                                                       (q1 * k2 - q2 * k1) * std::sin(lag) +
                                                       (q1 * k1 - q2 * k2) * std::sin(sum) +
                                                       (q1 * k2 + q2 * k1) * std::cos(sum));
                        }
                        break;
                    }
                }
                out.values(m, n) = score;
            }
        }
    });
    return out;
}

ScoreMatrix canonical_attention(const QKMatrices& qk, std::span<const PositionalMatrix> pmats) {
    if (qk.q.cols() != qk.k.cols())
        throw Error(ErrorCode::DimensionMismatch, "Q and K must share dimension D");
    if (pmats.size() != qk.q.cols())
        throw Error(ErrorCode::UnitCountMismatch, "expected one positional matrix per dimension");
    const std::size_t tq = qk.q.rows();
    const std::size_t tk = qk.k.rows();
    for (const auto& p : pmats)
        if (p.values.rows() != tq || p.values.cols() != tk)
            throw Error(ErrorCode::DimensionMismatch, "positional matrix shape mismatch");

    ScoreMatrix out;
    out.tag = ScoreTag::Exact;
    out.values = Matrix(tq, tk);
    for (std::size_t m = 0; m < tq; ++m) {
        for (std::size_t n = 0; n < tk; ++n) {
            double score = 0.0;
            for (std::size_t d = 0; d < pmats.size(); ++d)
                score += qk.q(m, d) * pmats[d].values(m, n) * qk.k(n, d);
            out.values(m, n) = score;
        }
    }
    return out;
}

Matrix frequency_gradient(Method method, const QKMatrices& qk,
                          const PositionalIndexSequence& pos_q,
                          const PositionalIndexSequence& pos_k, const PEParams& params,
                          std::size_t unit, std::size_t component) {
    check_inputs(method, qk, pos_q, pos_k, params);
    if (unit >= params.unit_count()) throw Error(ErrorCode::IndexOutOfRange, "unit out of range");
    if (component >= pos_q.dim())
        throw Error(ErrorCode::IndexOutOfRange, "label component out of range");

    const std::size_t tq = qk.q.rows();
    const std::size_t tk = qk.k.rows();
    const auto& f = params.frequency(unit);
    const double gain = params.gain(unit);

    Matrix grad(tq, tk);
    for (std::size_t m = 0; m < tq; ++m) {
        auto qrow = qk.q.row(m);
        auto pm = pos_q.at(m);
        for (std::size_t n = 0; n < tk; ++n) {
            auto krow = qk.k.row(n);
            auto pn = pos_k.at(n);
            double lag_l = pm[component] - pn[component];
            switch (method) {
                case Method::FStripe1: {
                    double lag = 0.0;
                    for (std::size_t l = 0; l < f.size(); ++l) lag += f[l] * (pm[l] - pn[l]);
                    grad(m, n) = -gain * qrow[unit] * krow[unit] *
                                 std::sin(lag + params.phase(unit)) * lag_l;
                    break;
                }
                case Method::RoPE: {
                    double lag = 0.0;
                    for (std::size_t l = 0; l < f.size(); ++l) lag += f[l] * (pm[l] - pn[l]);
                    double q1 = qrow[2 * unit], q2 = qrow[2 * unit + 1];
                    double k1 = krow[2 * unit], k2 = krow[2 * unit + 1];
                    grad(m, n) = gain * (-(q1 * k1 + q2 * k2) * std::sin(lag) +
                                         (q1 * k2 - q2 * k1) * std::cos(lag)) * lag_l;
                    break;
                }
                case Method::RoPEPool: {
                    // product rule on the per-pair scalar features
                    double theta_m = dot(f, pm);
                    double theta_n = dot(f, pn);
                    double q1 = qrow[2 * unit], q2 = qrow[2 * unit + 1];
                    double k1 = krow[2 * unit], k2 = krow[2 * unit + 1];
                    double sq = (q1 + q2) * std::cos(theta_m) + (q1 - q2) * std::sin(theta_m);
                    double sk = (k1 + k2) * std::cos(theta_n) + (k1 - k2) * std::sin(theta_n);
                    double dsq = -(q1 + q2) * std::sin(theta_m) + (q1 - q2) * std::cos(theta_m);
                    double dsk = -(k1 + k2) * std::sin(theta_n) + (k1 - k2) * std::cos(theta_n);
                    grad(m, n) = gain * (dsq * pm[component] * sk + sq * dsk * pn[component]);
                    break;
                }
            }
        }
    }
    return grad;
}

} // namespace stripes
