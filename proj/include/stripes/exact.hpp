#pragma once

#include <span>

#include "stripes/params.hpp"
#include "stripes/positions.hpp"
#include "stripes/qk.hpp"

namespace stripes {

/// One unit's positional interaction matrix: values[m][n] depends only on the
/// label pair and the unit's parameters.
struct PositionalMatrix {
    Matrix values;
    std::size_t unit = 0;
};

/// Single-frequency RFF form of the positional matrix:
/// values[m][n] = gain * cos(<f_unit, p_m - p_n> + phase).
PositionalMatrix positional_matrix_rff(const PEParams& params, std::size_t unit,
                                       const PositionalIndexSequence& pos_q,
                                       const PositionalIndexSequence& pos_k);

/// Brute-force O(T_Q * T_K * D) PE-enriched attention, the reference every
/// fast path is tested against. Score formulas per method:
///   FStripe1:  sum_d gain_d * q_md * k_nd * cos(<f_d, dp> + phase_d)
///   RoPE:      per pair, content dot and cross terms against cos/sin of the
///              frequency-scaled label lag
///   RoPEPool:  the four-term pair form that also involves the label sum
ScoreMatrix exact_attention(Method method, const QKMatrices& qk,
                            const PositionalIndexSequence& pos_q,
                            const PositionalIndexSequence& pos_k, const PEParams& params);

/// Canonical-form attention from explicit positional matrices, one per
/// content dimension: a_mn = sum_d q_md * P_d[m][n] * k_nd.
ScoreMatrix canonical_attention(const QKMatrices& qk, std::span<const PositionalMatrix> pmats);

/// Analytic derivative of the exact score with respect to one component of
/// one unit's frequency vector.
Matrix frequency_gradient(Method method, const QKMatrices& qk,
                          const PositionalIndexSequence& pos_q,
                          const PositionalIndexSequence& pos_k, const PEParams& params,
                          std::size_t unit, std::size_t component = 0);

} // namespace stripes
