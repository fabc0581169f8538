#pragma once

#include <optional>

#include "stripes/matrix.hpp"

namespace stripes {

/// Query/key (and optionally value) matrices. Q is T_Q x D, K is T_K x D.
struct QKMatrices {
    Matrix q;
    Matrix k;
    std::optional<Matrix> v;
};

enum class ScoreTag { Exact, TransformUnpooled, TransformPooled, Spe, LinearPath };

const char* to_string(ScoreTag tag);

/// T_Q x T_K attention coefficients with a provenance label.
struct ScoreMatrix {
    Matrix values;
    ScoreTag tag = ScoreTag::Exact;
};

} // namespace stripes
