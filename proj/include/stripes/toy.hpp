#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "stripes/matrix.hpp"
#include "stripes/params.hpp"

namespace stripes {

/// One synthetic point: a content angle drawn around its context's center
/// angle, plus the center itself as the context label.
struct ToyPoint {
    double psi = 0.0;
    double xi = 0.0;
    std::size_t context_id = 0;
};

struct ToyDataset {
    std::vector<ToyPoint> points;
    std::size_t context_count = 0;
    double sigma = 0.0;
    std::uint64_t seed = 0;

    /// Context centers, evenly spaced over (0, pi).
    std::vector<double> centers() const;
    /// Point indices in ascending psi order.
    std::vector<std::size_t> order_by_psi() const;
};

/// Round-robin context assignment; psi_j ~ Normal(center_k, sigma^2),
/// xi_j = center_k. Deterministic for a fixed seed.
ToyDataset generate_toy(std::size_t contexts, std::size_t points, double sigma,
                        std::uint64_t seed);

/// Angular score formulas for the unit-norm D=2 setting:
///   RoPE:      cos((psi_q - psi_k) + f (xi_q - xi_k))
///   FStripe1:  cos(psi_q - psi_k) * cos(f (xi_q - xi_k))
///   RoPEPool:  2 cos(psi_q + f xi_q - pi/4) * cos(psi_k + f xi_k - pi/4)
double toy_score(Method method, double psi_q, double xi_q, double psi_k, double xi_k, double f);

/// Scores of one query against every point, one row per frequency, columns
/// in ascending-psi order. query_index refers to the sorted order.
struct Heatmap {
    Matrix values; // |f_grid| x P
    std::vector<double> f_grid;
    std::size_t query_index = 0;
    std::vector<double> sorted_psi;
    std::vector<std::size_t> sorted_context;
};

Heatmap heatmap(Method method, const ToyDataset& ds, std::size_t query_index,
                std::span<const double> f_grid);

/// Scores of the keys at (psi+dpsi, xi+dxi) and (psi-dpsi, xi-dxi) against
/// the query at (psi, xi).
std::pair<double, double> mirror_asymmetry(Method method, double psi, double xi, double dpsi,
                                           double dxi, double f);

/// Mean same-context score minus mean different-context score for the query
/// at the given sorted index.
double discriminability(Method method, const ToyDataset& ds, std::size_t query_index, double f);

} // namespace stripes
