#ifndef EMBENS_MATRIX_HPP
#define EMBENS_MATRIX_HPP

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "embens/errors.hpp"

namespace embens {

using Index = std::int64_t;

// Dense row-major matrix of doubles. Rows are contiguous so per-word
// vectors can be handed out as spans.
class Matrix {
public:
    Matrix() = default;

    Matrix(Index rows, Index cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), 0.0) {
        if (rows < 0 || cols < 0) throw data_error("matrix dimensions must be non-negative");
    }

    // Convenience for literals in tests and fixtures.
    static Matrix of(std::initializer_list<std::initializer_list<double>> rows) {
        Matrix m(static_cast<Index>(rows.size()),
                 rows.size() ? static_cast<Index>(rows.begin()->size()) : 0);
        Index i = 0;
        for (const auto& r : rows) {
            if (static_cast<Index>(r.size()) != m.cols_)
                throw data_error("ragged initializer for Matrix::of");
            Index j = 0;
            for (double v : r) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    static Matrix identity(Index n) {
        Matrix m(n, n);
        for (Index i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(Index i, Index j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
    double operator()(Index i, Index j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

    std::span<double> row(Index i) {
        return {data_.data() + i * cols_, static_cast<std::size_t>(cols_)};
    }
    std::span<const double> row(Index i) const {
        return {data_.data() + i * cols_, static_cast<std::size_t>(cols_)};
    }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<double> data_;
};

// Largest absolute elementwise difference; shapes must match.
double max_abs_diff(const Matrix& a, const Matrix& b);

// True when every entry is finite.
bool all_finite(const Matrix& m);

} // namespace embens

#endif
