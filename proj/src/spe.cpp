#include "stripes/spe.hpp"

#include <cmath>

#include "stripes/error.hpp"
#include "stripes/rng.hpp"

namespace stripes {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

std::uint64_t z_stream(const SFFConfig& cfg, Side side, std::size_t unit) {
    std::uint64_t s = mix64(0x5FFu + unit);
    if (!cfg.share_z) s = mix64(s + (side == Side::Query ? 1 : 2));
    return s;
}

Matrix draw_z(const SFFConfig& cfg, Side side, std::size_t unit) {
    Matrix z(2 * cfg.freq_count, cfg.realizations);
    CounterRng rng(cfg.seed, z_stream(cfg, side, unit));
    for (std::size_t i = 0; i < z.rows(); ++i)
        for (std::size_t r = 0; r < z.cols(); ++r) z(i, r) = rng.normal();
    return z;
}

/// T x 2N_f sinusoidal features: columns alternate cos/sin per frequency.
Matrix omega(const PositionalIndexSequence& pos, const SFFConfig& cfg, Side side,
             std::size_t unit) {
    const auto& freqs = cfg.frequencies[unit];
    const auto& phases = side == Side::Query ? cfg.phases_q[unit] : cfg.phases_k[unit];
    Matrix om(pos.length(), 2 * cfg.freq_count);
    for (std::size_t t = 0; t < pos.length(); ++t) {
        auto p = pos.at(t);
        for (std::size_t w = 0; w < cfg.freq_count; ++w) {
            double theta = dot(freqs[w], p) + phases[w];
            om(t, 2 * w) = std::cos(theta);
            om(t, 2 * w + 1) = std::sin(theta);
        }
    }
    return om;
}

Matrix apply_mixing(const Matrix& om, const SFFConfig& cfg, std::size_t unit, const Matrix& z) {
    const auto& gains = cfg.gains[unit];
    const double norm = 1.0 / std::sqrt(2.0 * static_cast<double>(cfg.freq_count));
    Matrix out(om.rows(), z.cols());
    for (std::size_t t = 0; t < om.rows(); ++t) {
        for (std::size_t r = 0; r < z.cols(); ++r) {
            double acc = 0.0;
            for (std::size_t w = 0; w < cfg.freq_count; ++w) {
                acc += om(t, 2 * w) * gains[w] * z(2 * w, r);
                acc += om(t, 2 * w + 1) * gains[w] * z(2 * w + 1, r);
            }
            out(t, r) = acc * norm;
        }
    }
    return out;
}

void check_qk(const QKMatrices& qk, const PositionalIndexSequence& pos_q,
              const PositionalIndexSequence& pos_k, const SFFConfig& cfg) {
    cfg.validate();
    if (qk.q.cols() != qk.k.cols())
        throw Error(ErrorCode::DimensionMismatch, "Q and K must share dimension D");
    if (qk.q.cols() != cfg.unit_count())
        throw Error(ErrorCode::DimensionMismatch, "config must carry one unit per dimension");
    if (pos_q.length() != qk.q.rows() || pos_k.length() != qk.k.rows())
        throw Error(ErrorCode::DimensionMismatch, "positional sequence lengths must match Q/K rows");
    if (pos_q.dim() != cfg.label_dim() || pos_k.dim() != cfg.label_dim())
        throw Error(ErrorCode::DimensionMismatch, "label dimension does not match config");
}

} // namespace

std::size_t SFFConfig::label_dim() const {
    if (frequencies.empty() || frequencies.front().empty()) return 1;
    return frequencies.front().front().size();
}

void SFFConfig::validate() const {
    if (realizations < 1) throw Error(ErrorCode::InvalidArgument, "realizations must be >= 1");
    if (freq_count < 1) throw Error(ErrorCode::InvalidArgument, "frequency count must be >= 1");
    if (gains.size() != frequencies.size() || phases_q.size() != frequencies.size() ||
        phases_k.size() != frequencies.size())
        throw Error(ErrorCode::UnitCountMismatch, "config arrays must have one entry per unit");
    std::size_t l = label_dim();
    for (std::size_t u = 0; u < frequencies.size(); ++u) {
        if (frequencies[u].size() != freq_count || gains[u].size() != freq_count ||
            phases_q[u].size() != freq_count || phases_k[u].size() != freq_count)
            throw Error(ErrorCode::UnitCountMismatch, "config arrays must have N_f entries per unit");
        for (const auto& f : frequencies[u])
            if (f.size() != l)
                throw Error(ErrorCode::DimensionMismatch, "frequency vectors have mixed dimensions");
    }
}

SFFConfig sff_config_for(const PEParams& params, std::size_t realizations, std::uint64_t seed) {
    if (params.method != Method::FStripe1)
        throw Error(ErrorCode::InvalidArgument, "stochastic features mirror fstripe1 units");
    SFFConfig cfg;
    cfg.realizations = realizations;
    cfg.freq_count = 1;
    cfg.seed = seed;
    const std::size_t units = params.unit_count();
    cfg.frequencies.resize(units);
    cfg.gains.resize(units);
    cfg.phases_q.resize(units);
    cfg.phases_k.resize(units);
    for (std::size_t u = 0; u < units; ++u) {
        cfg.frequencies[u] = {params.frequency(u)};
        cfg.gains[u] = {std::sqrt(2.0 * params.gain(u))};
        cfg.phases_q[u] = {params.phase(u)};
        cfg.phases_k[u] = {0.0};
    }
    return cfg;
}

Matrix sff_features(const PositionalIndexSequence& pos, const SFFConfig& cfg, Side side,
                    std::size_t unit) {
    cfg.validate();
    if (unit >= cfg.unit_count()) throw Error(ErrorCode::IndexOutOfRange, "unit out of range");
    if (pos.dim() != cfg.label_dim())
        throw Error(ErrorCode::DimensionMismatch, "label dimension does not match config");
    Matrix z = draw_z(cfg, side, unit);
    return apply_mixing(omega(pos, cfg, side, unit), cfg, unit, z);
}

Matrix limit_features(const PositionalIndexSequence& pos, const SFFConfig& cfg, Side side,
                      std::size_t unit) {
    cfg.validate();
    if (unit >= cfg.unit_count()) throw Error(ErrorCode::IndexOutOfRange, "unit out of range");
    Matrix om = omega(pos, cfg, side, unit);
    const auto& gains = cfg.gains[unit];
    const double norm = 1.0 / std::sqrt(2.0 * static_cast<double>(cfg.freq_count));
    for (std::size_t t = 0; t < om.rows(); ++t)
        for (std::size_t w = 0; w < cfg.freq_count; ++w) {
            om(t, 2 * w) *= gains[w] * norm;
            om(t, 2 * w + 1) *= gains[w] * norm;
        }
    return om;
}

Matrix ideal_positional_matrix(const SFFConfig& cfg, std::size_t unit,
                               const PositionalIndexSequence& pos_q,
                               const PositionalIndexSequence& pos_k) {
    cfg.validate();
    if (unit >= cfg.unit_count()) throw Error(ErrorCode::IndexOutOfRange, "unit out of range");
    const auto& freqs = cfg.frequencies[unit];
    const auto& gains = cfg.gains[unit];
    const auto& phq = cfg.phases_q[unit];
    const auto& phk = cfg.phases_k[unit];
    Matrix out(pos_q.length(), pos_k.length());
    for (std::size_t m = 0; m < pos_q.length(); ++m) {
        auto pm = pos_q.at(m);
        for (std::size_t n = 0; n < pos_k.length(); ++n) {
            auto pn = pos_k.at(n);
            double acc = 0.0;
            for (std::size_t w = 0; w < cfg.freq_count; ++w) {
                double lag = 0.0;
                for (std::size_t l = 0; l < freqs[w].size(); ++l)
                    lag += freqs[w][l] * (pm[l] - pn[l]);
                acc += 0.5 * gains[w] * gains[w] * std::cos(lag + phq[w] - phk[w]);
            }
            out(m, n) = acc / static_cast<double>(cfg.freq_count);
        }
    }
    return out;
}

namespace {

ScoreMatrix attention_from_features(const QKMatrices& qk,
                                    const std::vector<Matrix>& fq,
                                    const std::vector<Matrix>& fk, double scale,
                                    Pooling pooling) {
    const std::size_t tq = qk.q.rows();
    const std::size_t tk = qk.k.rows();
    const std::size_t units = fq.size();
    ScoreMatrix out;
    out.tag = ScoreTag::Spe;
    out.values = Matrix(tq, tk);

    if (pooling == Pooling::Unpooled) {
        for (std::size_t d = 0; d < units; ++d) {
            const Matrix& a = fq[d];
            const Matrix& b = fk[d];
            for (std::size_t m = 0; m < tq; ++m) {
                for (std::size_t n = 0; n < tk; ++n) {
                    double acc = 0.0;
                    for (std::size_t r = 0; r < a.cols(); ++r) acc += a(m, r) * b(n, r);
                    out.values(m, n) += qk.q(m, d) * acc * scale * qk.k(n, d);
                }
            }
        }
        return out;
    }

    const std::size_t width = units == 0 ? 0 : fq.front().cols();
    Matrix pooled_q(tq, width);
    Matrix pooled_k(tk, width);
    double side_scale = std::sqrt(scale);
    for (std::size_t d = 0; d < units; ++d) {
        for (std::size_t m = 0; m < tq; ++m)
            for (std::size_t r = 0; r < width; ++r)
                pooled_q(m, r) += qk.q(m, d) * fq[d](m, r) * side_scale;
        for (std::size_t n = 0; n < tk; ++n)
            for (std::size_t r = 0; r < width; ++r)
                pooled_k(n, r) += qk.k(n, d) * fk[d](n, r) * side_scale;
    }
    for (std::size_t m = 0; m < tq; ++m)
        for (std::size_t n = 0; n < tk; ++n) {
            double acc = 0.0;
            for (std::size_t r = 0; r < width; ++r) acc += pooled_q(m, r) * pooled_k(n, r);
            out.values(m, n) = acc;
        }
    return out;
}

} // namespace

ScoreMatrix spe_attention(const QKMatrices& qk, const PositionalIndexSequence& pos_q,
                          const PositionalIndexSequence& pos_k, const SFFConfig& cfg,
                          Pooling pooling) {
    check_qk(qk, pos_q, pos_k, cfg);
    std::vector<Matrix> fq, fk;
    fq.reserve(cfg.unit_count());
    fk.reserve(cfg.unit_count());
    for (std::size_t d = 0; d < cfg.unit_count(); ++d) {
        fq.push_back(sff_features(pos_q, cfg, Side::Query, d));
        fk.push_back(sff_features(pos_k, cfg, Side::Key, d));
    }
    return attention_from_features(qk, fq, fk, 1.0 / static_cast<double>(cfg.realizations),
                                   pooling);
}

ScoreMatrix rff_attention(const QKMatrices& qk, const PositionalIndexSequence& pos_q,
                          const PositionalIndexSequence& pos_k, const SFFConfig& cfg,
                          Pooling pooling) {
    check_qk(qk, pos_q, pos_k, cfg);
    std::vector<Matrix> fq, fk;
    fq.reserve(cfg.unit_count());
    fk.reserve(cfg.unit_count());
    for (std::size_t d = 0; d < cfg.unit_count(); ++d) {
        fq.push_back(limit_features(pos_q, cfg, Side::Query, d));
        fk.push_back(limit_features(pos_k, cfg, Side::Key, d));
    }
    return attention_from_features(qk, fq, fk, 1.0, pooling);
}

CovarianceStats covariance_stats(std::size_t realizations, std::size_t trials,
                                 std::uint64_t seed) {
    if (realizations < 1) throw Error(ErrorCode::InvalidArgument, "realizations must be >= 1");
    if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
    CovarianceStats stats;
    stats.alpha.resize(trials);
    stats.beta.resize(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        CounterRng rng(seed, mix64(0xC0Fu + t));
        double a = 0.0, b = 0.0;
        for (std::size_t i = 0; i < realizations; ++i) {
            double u = rng.normal();
            double v = rng.normal();
            a += u * u;
            b += u * v;
        }
        stats.alpha[t] = a / static_cast<double>(realizations);
        stats.beta[t] = b / static_cast<double>(realizations);
    }
    return stats;
}

namespace spe_detail {

Matrix sff_features_with_z(const PositionalIndexSequence& pos, const SFFConfig& cfg, Side side,
                           std::size_t unit, const Matrix& z) {
    cfg.validate();
    if (z.rows() != 2 * cfg.freq_count)
        throw Error(ErrorCode::DimensionMismatch, "mixing matrix must have 2*N_f rows");
    return apply_mixing(omega(pos, cfg, side, unit), cfg, unit, z);
}

} // namespace spe_detail

} // namespace stripes
