#pragma once

#include <cstdint>
#include <vector>

#include "stripes/params.hpp"
#include "stripes/positions.hpp"
#include "stripes/qk.hpp"
#include "stripes/transforms.hpp"

namespace stripes {

enum class Side { Query, Key };

/// Stochastic positional feature configuration: R noisy realizations of
/// sinusoidal features with N_f frequencies per unit. Frequencies, gains and
/// per-side phases are caller-supplied.
struct SFFConfig {
    std::size_t realizations = 1; // R
    std::size_t freq_count = 1;   // N_f

    // indexed [unit][frequency]; frequency entries are L-vectors
    std::vector<std::vector<std::vector<double>>> frequencies;
    std::vector<std::vector<double>> gains; // sinusoid gains, squared/2 is the score-level gain
    std::vector<std::vector<double>> phases_q;
    std::vector<std::vector<double>> phases_k;

    std::uint64_t seed = 0;

    // Diagnostic switch: the query/key sides share the Gaussian mixing matrix
    // by contract; turning this off is the negative control.
    bool share_z = true;

    std::size_t unit_count() const { return frequencies.size(); }
    std::size_t label_dim() const;
    void validate() const;
};

/// Config matching a single-frequency fstripe1 parameter set: the stochastic
/// scores then converge to exact_attention(FStripe1, params) as R grows.
SFFConfig sff_config_for(const PEParams& params, std::size_t realizations, std::uint64_t seed);

/// T x R noisy positional features for one unit and side. The Gaussian
/// mixing matrix depends on (seed, unit) only, so query and key calls share
/// it; draws are counter-based and bit-reproducible.
Matrix sff_features(const PositionalIndexSequence& pos, const SFFConfig& cfg, Side side,
                    std::size_t unit);

/// Noise-free limit of sff_features: T x 2*N_f deterministic sinusoidal
/// features whose products equal ideal_positional_matrix exactly.
Matrix limit_features(const PositionalIndexSequence& pos, const SFFConfig& cfg, Side side,
                      std::size_t unit);

/// The R -> infinity positional matrix for one unit:
/// (1/N_f) sum_w (gain_w^2 / 2) cos(<f_w, p_m - p_n> + phase_q_w - phase_k_w).
Matrix ideal_positional_matrix(const SFFConfig& cfg, std::size_t unit,
                               const PositionalIndexSequence& pos_q,
                               const PositionalIndexSequence& pos_k);

/// Stochastic PE-enriched attention. Unpooled keeps per-dimension feature
/// products separate; pooled sums the enriched features across dimensions
/// before the product.
ScoreMatrix spe_attention(const QKMatrices& qk, const PositionalIndexSequence& pos_q,
                          const PositionalIndexSequence& pos_k, const SFFConfig& cfg,
                          Pooling pooling);

/// Deterministic limit of spe_attention built from limit_features.
ScoreMatrix rff_attention(const QKMatrices& qk, const PositionalIndexSequence& pos_q,
                          const PositionalIndexSequence& pos_k, const SFFConfig& cfg,
                          Pooling pooling);

/// Empirical-covariance convergence samples: per trial,
/// alpha = mean of R squared standard normals (diagonal entries),
/// beta  = mean of R products of independent standard normals (off-diagonal).
struct CovarianceStats {
    std::vector<double> alpha;
    std::vector<double> beta;
};

CovarianceStats covariance_stats(std::size_t realizations, std::size_t trials, std::uint64_t seed);

namespace spe_detail {
/// Test hook: run the feature pipeline with an explicit mixing matrix
/// (2*N_f x R) in place of the Gaussian draw.
Matrix sff_features_with_z(const PositionalIndexSequence& pos, const SFFConfig& cfg, Side side,
                           std::size_t unit, const Matrix& z);
} // namespace spe_detail

} // namespace stripes
