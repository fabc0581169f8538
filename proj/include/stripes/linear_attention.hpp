#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stripes/params.hpp"
#include "stripes/positions.hpp"
#include "stripes/qk.hpp"
#include "stripes/transforms.hpp"

namespace stripes {

enum class PhiVariant { PositiveShift, ExpRandomFeatures };

const char* to_string(PhiVariant variant);

/// Nonnegative feature map applied to PE-enriched queries/keys before the
/// associativity trick.
struct PhiConfig {
    PhiVariant variant = PhiVariant::PositiveShift;
    std::size_t random_features = 64; // r, ExpRandomFeatures only
    std::uint64_t seed = 0;
};

/// Materialized feature map for a fixed input width. PositiveShift maps each
/// coordinate through x+1 (x >= 0) / exp(x) (x < 0): continuous, positive,
/// monotone, width-preserving. ExpRandomFeatures draws r Gaussian directions
/// w_i and emits exp(<w_i,x> - |x|^2/2)/sqrt(r), the softmax-kernel
/// estimator.
class PhiMap {
public:
    PhiMap(const PhiConfig& config, std::size_t input_width);

    std::vector<double> operator()(std::span<const double> x) const;
    std::size_t output_width() const { return output_width_; }

private:
    PhiConfig config_;
    std::size_t input_width_;
    std::size_t output_width_;
    Matrix weights_; // r x input_width
};

/// One-shot convenience for a single vector.
std::vector<double> phi(std::span<const double> x, const PhiConfig& config);

struct AttentionOutput {
    Matrix y;                        // T_Q x D_v
    std::vector<double> normalizers; // per-query denominators
};

/// O(T) kernelized attention over PE-enriched features: accumulates the
/// key-side sums once, never materializing the T_Q x T_K score matrix.
/// Throws ZeroNormalizer if any denominator falls below 1e-30.
AttentionOutput linear_path(const QKMatrices& qk, const PositionalIndexSequence& pos_q,
                            const PositionalIndexSequence& pos_k, Method method,
                            const PEParams& params, Pooling pooling, const PhiConfig& phi_config);

/// O(T^2) reference: materializes the feature products, then normalizes.
AttentionOutput quadratic_path(const QKMatrices& qk, const PositionalIndexSequence& pos_q,
                               const PositionalIndexSequence& pos_k, Method method,
                               const PEParams& params, Pooling pooling,
                               const PhiConfig& phi_config);

Pooling default_pooling(Method method);

struct BenchmarkRow {
    std::string method;
    std::size_t t = 0;
    std::size_t d = 0;
    std::string path; // "linear" | "quadratic"
    double median_ns = 0.0;
    std::size_t repeats = 0;
};

/// Wall-clock medians for both paths at each length; lengths must be
/// non-decreasing. Runs single-threaded so ratios reflect algorithmic
/// scaling.
std::vector<BenchmarkRow> benchmark_scaling(Method method, std::span<const std::size_t> lengths,
                                            std::size_t dim, std::size_t repeats,
                                            std::uint64_t seed = 0);

std::string benchmark_csv(const std::vector<BenchmarkRow>& rows);

} // namespace stripes
