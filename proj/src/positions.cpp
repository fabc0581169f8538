#include "stripes/positions.hpp"

#include "stripes/error.hpp"

namespace stripes {

PositionalIndexSequence PositionalIndexSequence::time_indices(std::size_t length) {
    PositionalIndexSequence seq;
    seq.length_ = length;
    seq.dim_ = 1;
    seq.kind_ = PositionKind::Time;
    seq.flat_.resize(length);
    for (std::size_t i = 0; i < length; ++i) seq.flat_[i] = static_cast<double>(i);
    return seq;
}

PositionalIndexSequence PositionalIndexSequence::structural(std::vector<std::vector<double>> entries,
                                                            PositionKind kind) {
    PositionalIndexSequence seq;
    seq.kind_ = kind;
    seq.length_ = entries.size();
    seq.dim_ = entries.empty() ? 1 : entries.front().size();
    if (seq.dim_ == 0)
        throw Error(ErrorCode::DimensionMismatch, "positional labels must have dimension >= 1");
    seq.flat_.reserve(seq.length_ * seq.dim_);
    for (const auto& entry : entries) {
        if (entry.size() != seq.dim_)
            throw Error(ErrorCode::DimensionMismatch, "positional labels have mixed dimensions");
        seq.flat_.insert(seq.flat_.end(), entry.begin(), entry.end());
    }
    if (kind == PositionKind::Time) {
        if (seq.dim_ != 1)
            throw Error(ErrorCode::DimensionMismatch, "time labels must be scalar");
        for (std::size_t i = 0; i < seq.length_; ++i)
            if (seq.flat_[i] != static_cast<double>(i))
                throw Error(ErrorCode::InvalidArgument, "time labels must be 0, 1, ..., T-1");
    }
    return seq;
}

PositionalIndexSequence PositionalIndexSequence::scalars(const std::vector<double>& values,
                                                         PositionKind kind) {
    PositionalIndexSequence seq;
    seq.kind_ = kind;
    seq.length_ = values.size();
    seq.dim_ = 1;
    seq.flat_ = values;
    if (kind == PositionKind::Time) {
        for (std::size_t i = 0; i < seq.length_; ++i)
            if (seq.flat_[i] != static_cast<double>(i))
                throw Error(ErrorCode::InvalidArgument, "time labels must be 0, 1, ..., T-1");
    }
    return seq;
}

PositionalIndexSequence PositionalIndexSequence::shifted(double c) const {
    PositionalIndexSequence seq(*this);
    if (seq.kind_ == PositionKind::Time) seq.kind_ = PositionKind::StructuralToken;
    for (double& v : seq.flat_) v += c;
    return seq;
}

} // namespace stripes
