#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stripes/exact.hpp"
#include "stripes/params.hpp"

namespace stripes {

/// One (content, position) point used as both query and key in Gram
/// constructions.
struct KernelSample {
    std::vector<double> content;
    std::vector<double> position;
};

/// A sample set together with the parameters that produced a Gram matrix;
/// serialized as a regression fixture when a search succeeds.
struct WitnessSet {
    std::vector<KernelSample> samples;
    PEParams params;
};

struct PDReport {
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    std::size_t matrix_size = 0;
    bool is_pd = false;
    std::optional<WitnessSet> witness;
    std::size_t trials_used = 0;
    double min_quadratic_form = 0.0; // min over random probes of x'Sx / |x|^2
};

/// Eigenvalues of a symmetric matrix via cyclic Jacobi rotations, sorted
/// ascending. off_tol bounds the final off-diagonal Frobenius norm relative
/// to the matrix norm.
std::vector<double> jacobi_eigenvalues(const Matrix& symmetric, double off_tol = 1e-10);

/// Gram matrix of exact attention scores: G[i][j] = score of sample i as
/// query against sample j as key.
Matrix gram_matrix(Method method, const std::vector<KernelSample>& samples,
                   const PEParams& params);

/// Symmetrizes G, computes eigenvalues, and verdicts
/// is_pd = (min_eig >= -tol * max(1, |max_eig|)).
PDReport pd_check(const Matrix& g, double tol);

/// Randomized search for a sample set whose symmetrized Gram has
/// min_eig < -1e-6 * scale. Returns the first success by trial index or a
/// no-witness report after the budget. dim is the content dimension of the
/// generated samples.
PDReport pd_witness_search(Method method, std::size_t n_points, std::size_t budget,
                           std::uint64_t seed, std::size_t dim = 2);

/// Same machinery over an arbitrary score function (content dim given by the
/// generator); lets tests prove witnesses are found when they exist.
using SampleScorer =
    std::function<double(const KernelSample& query, const KernelSample& key)>;
PDReport pd_witness_search_fn(const SampleScorer& scorer, std::size_t content_dim,
                              std::size_t n_points, std::size_t budget, std::uint64_t seed);

/// Max abs error between exact fstripe1 scores and the tensor-product route
/// (per-dimension content products times positional matrices).
double factorization_check(const std::vector<KernelSample>& samples, const PEParams& params);

std::string witness_to_json(const PDReport& report);
std::optional<WitnessSet> witness_from_json(const std::string& text);

} // namespace stripes
