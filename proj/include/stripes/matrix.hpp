#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stripes {

/// Dense row-major matrix of doubles. Deliberately small: the library needs
/// exact control over accumulation order, so everything is explicit loops.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    static Matrix identity(std::size_t n);

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    double* data() noexcept { return data_.data(); }
    const double* data() const noexcept { return data_.data(); }

    Matrix transposed() const;
    double max_abs() const;
    bool all_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

double max_abs_diff(const Matrix& a, const Matrix& b);

/// Peak single-Matrix allocation size (in elements) since the last reset.
/// Lets tests assert structurally that a code path never materializes a
/// T_Q x T_K buffer.
namespace alloc_stats {
void reset();
std::size_t peak_elements();
} // namespace alloc_stats

} // namespace stripes
