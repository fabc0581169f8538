#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stripes {

enum class PositionKind { Time, StructuralToken, StructuralVector };

/// Per-timestep positional labels: T entries, each an L-dimensional label.
/// Time indices are the special case L = 1, entries 0, 1, ..., T-1; structural
/// labels carry chord tokens or chroma vectors.
class PositionalIndexSequence {
public:
    PositionalIndexSequence() = default;

    /// [0], [1], ..., [T-1].
    static PositionalIndexSequence time_indices(std::size_t length);

    /// Structural labels; every entry must have the same dimension.
    static PositionalIndexSequence structural(std::vector<std::vector<double>> entries,
                                              PositionKind kind = PositionKind::StructuralVector);

    /// Scalar labels (L = 1) from raw values.
    static PositionalIndexSequence scalars(const std::vector<double>& values,
                                           PositionKind kind = PositionKind::StructuralToken);

    std::size_t length() const noexcept { return length_; }
    std::size_t dim() const noexcept { return dim_; }
    PositionKind kind() const noexcept { return kind_; }

    std::span<const double> at(std::size_t i) const { return {flat_.data() + i * dim_, dim_}; }

    /// Every label component shifted by c (lag-shift experiments).
    PositionalIndexSequence shifted(double c) const;

private:
    std::size_t length_ = 0;
    std::size_t dim_ = 1;
    PositionKind kind_ = PositionKind::Time;
    std::vector<double> flat_;
};

} // namespace stripes
