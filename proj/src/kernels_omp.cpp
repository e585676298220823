#include "embens/kernels.hpp"

#include <cmath>

#include "embens/parallel.hpp"
#include "kernels_common.hpp"

namespace embens::kernels {

namespace {

// Below this many flops the fork/join overhead dominates.
constexpr Index kSmallWork = 1 << 14;

} // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
    detail::require(a.cols() == b.rows(), "matmul: inner dimensions differ");
    if (a.rows() * a.cols() * b.cols() < kSmallWork) return serial::matmul(a, b);
    Matrix out(a.rows(), b.cols());
    const Index n = a.rows();
    const Index m = b.cols();
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < m; ++j)
            out(i, j) = detail::matmul_element(a, b, i, j);
    return out;
}

Matrix crossprod(const Matrix& a, const Matrix& b) {
    detail::require(a.rows() == b.rows(), "crossprod: row counts differ");
    if (a.rows() * a.cols() * b.cols() < kSmallWork) return serial::crossprod(a, b);
    Matrix out(a.cols(), b.cols());
    const Index p = a.cols();
    const Index q = b.cols();
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (Index j = 0; j < p; ++j)
        detail::crossprod_fill_row(a, b, j, out.data() + j * q);
    return out;
}

Matrix mean_of(std::span<const Matrix> ms) {
    detail::require(!ms.empty(), "mean_of: empty list");
    for (const Matrix& m : ms)
        detail::require(m.same_shape(ms.front()), "mean_of: shape mismatch");
    const Index n = ms.front().rows();
    const Index c = ms.front().cols();
    if (n * c * static_cast<Index>(ms.size()) < kSmallWork) return serial::mean_of(ms);
    Matrix out(n, c);
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (Index v = 0; v < n; ++v)
        detail::mean_fill_row(ms, v, out.data() + v * c);
    return out;
}

double frobenius_sq_diff(const Matrix& a, const Matrix& b) {
    detail::require(a.same_shape(b), "frobenius_sq_diff: shape mismatch");
    if (a.rows() * a.cols() < kSmallWork) return serial::frobenius_sq_diff(a, b);
    const Index n = a.rows();
    std::vector<double> parts(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (Index v = 0; v < n; ++v)
        parts[static_cast<std::size_t>(v)] = detail::row_sq_diff(a, b, v);
    return detail::reduce_partials(parts);
}

std::vector<double> row_sq_dist(const Matrix& a, const Matrix& b) {
    detail::require(a.same_shape(b), "row_sq_dist: shape mismatch");
    if (a.rows() * a.cols() < kSmallWork) return serial::row_sq_dist(a, b);
    const Index n = a.rows();
    std::vector<double> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (Index v = 0; v < n; ++v)
        out[static_cast<std::size_t>(v)] = detail::row_sq_diff(a, b, v);
    return out;
}

std::vector<double> column_stddev(const Matrix& m) {
    detail::require(m.rows() >= 1, "column_stddev: empty matrix");
    if (m.rows() * m.cols() < kSmallWork) return serial::column_stddev(m);
    const Index c = m.cols();
    std::vector<double> out(static_cast<std::size_t>(c));
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (Index j = 0; j < c; ++j)
        out[static_cast<std::size_t>(j)] = detail::column_stddev_one(m, j);
    return out;
}

Matrix scale_columns(const Matrix& m, std::span<const double> scale) {
    detail::require(static_cast<Index>(scale.size()) == m.cols(),
                    "scale_columns: scale length mismatch");
    if (m.rows() * m.cols() < kSmallWork) return serial::scale_columns(m, scale);
    Matrix out(m.rows(), m.cols());
    const Index n = m.rows();
    const Index c = m.cols();
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (Index v = 0; v < n; ++v)
        detail::scale_fill_row(m, scale, v, out.data() + v * c);
    return out;
}

std::vector<double> cosine_scan(const Matrix& m, std::span<const double> q) {
    detail::require(static_cast<Index>(q.size()) == m.cols(),
                    "cosine_scan: query length mismatch");
    if (m.rows() * m.cols() < kSmallWork) return serial::cosine_scan(m, q);
    const double qn = std::sqrt(detail::dot_span(q, q));
    const Index n = m.rows();
    std::vector<double> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (Index v = 0; v < n; ++v)
        out[static_cast<std::size_t>(v)] = detail::cosine_row(m, v, q, qn);
    return out;
}

} // namespace embens::kernels
