#pragma once

#include <array>
#include <span>
#include <vector>

#include "stripes/params.hpp"
#include "stripes/positions.hpp"
#include "stripes/qk.hpp"

namespace stripes {

enum class Pooling { Unpooled, Pooled };

const char* to_string(Pooling pooling);

/// Per-unit feature for single-dimension units: [a cos<f,p>, a sin<f,p>].
std::array<double, 2> h_fstripe1(double a, std::span<const double> p, std::span<const double> f);

/// Rotation of a dimension pair by the label-dependent angle <f,p>.
/// Norm-preserving.
std::array<double, 2> h_rope(std::array<double, 2> pair, std::span<const double> p,
                             std::span<const double> f);

/// Per-timestep PE-enriched features.
///   FStripe1 unpooled: per-dimension h outputs concatenated (width 2D)
///   FStripe1 pooled:   per-dimension h outputs summed (width 2)
///   RoPE unpooled:     rotated pairs concatenated (width D)
///   RoPEPool pooled:   each rotated pair collapsed to the sum of its two
///                      components, one scalar per pair (width D/2)
/// Other method/pooling combinations are rejected. Gains enter as sqrt(gain)
/// per unit; parameter sets with nonzero phases are rejected (the feature
/// path represents the zero-phase form).
struct FeatureMatrix {
    Matrix rows;
    Pooling pooling = Pooling::Unpooled;
    Method method = Method::FStripe1;
};

std::size_t feature_width(Method method, std::size_t dim, Pooling pooling);

std::vector<double> transform_row(std::span<const double> x, std::span<const double> p,
                                  Method method, const PEParams& params, Pooling pooling);

FeatureMatrix transform_sequence(const Matrix& x, const PositionalIndexSequence& pos,
                                 Method method, const PEParams& params, Pooling pooling);

/// Attention scores as inner products of transformed rows:
/// a_mn = <transform(q_m), transform(k_n)>.
ScoreMatrix transform_attention(const QKMatrices& qk, const PositionalIndexSequence& pos_q,
                                const PositionalIndexSequence& pos_k, Method method,
                                const PEParams& params, Pooling pooling);

/// Elementwise statistics of (pooled - unpooled) score differences for
/// FStripe1; the pooled path is exact only up to the cross-dimension terms.
struct ResidualStats {
    double mean_abs = 0.0;
    double max_abs = 0.0;
};

ResidualStats cross_dimension_residual(const QKMatrices& qk, const PositionalIndexSequence& pos_q,
                                       const PositionalIndexSequence& pos_k,
                                       const PEParams& params);

} // namespace stripes
