#include "stripes/matrix.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

namespace stripes {

namespace alloc_stats {
namespace {
std::atomic<std::size_t> peak{0};
}

void reset() { peak.store(0, std::memory_order_relaxed); }
std::size_t peak_elements() { return peak.load(std::memory_order_relaxed); }

namespace detail {
void record(std::size_t elements) {
    std::size_t prev = peak.load(std::memory_order_relaxed);
    while (elements > prev && !peak.compare_exchange_weak(prev, elements, std::memory_order_relaxed)) {
    }
}
} // namespace detail
} // namespace alloc_stats

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    alloc_stats::detail::record(data_.size());
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

bool Matrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

} // namespace stripes
