#include "embens/kernels.hpp"

#include <cmath>

#include "kernels_common.hpp"

namespace embens {

double max_abs_diff(const Matrix& a, const Matrix& b) {
    kernels::detail::require(a.same_shape(b), "max_abs_diff: shape mismatch");
    double m = 0.0;
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

bool all_finite(const Matrix& m) {
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            if (!std::isfinite(m(i, j))) return false;
    return true;
}

} // namespace embens

namespace embens::kernels {

double dot(std::span<const double> u, std::span<const double> v) {
    detail::require(u.size() == v.size(), "dot: length mismatch");
    return detail::dot_span(u, v);
}

double norm(std::span<const double> u) {
    return std::sqrt(detail::dot_span(u, u));
}

double cosine(std::span<const double> u, std::span<const double> v) {
    detail::require(u.size() == v.size(), "cosine: length mismatch");
    const double nu = norm(u);
    const double nv = norm(v);
    if (nu == 0.0 || nv == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return detail::clamp_cosine(detail::dot_span(u, v) / (nu * nv));
}

namespace serial {

Matrix matmul(const Matrix& a, const Matrix& b) {
    detail::require(a.cols() == b.rows(), "matmul: inner dimensions differ");
    Matrix out(a.rows(), b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < b.cols(); ++j)
            out(i, j) = detail::matmul_element(a, b, i, j);
    return out;
}

Matrix crossprod(const Matrix& a, const Matrix& b) {
    detail::require(a.rows() == b.rows(), "crossprod: row counts differ");
    Matrix out(a.cols(), b.cols());
    for (Index j = 0; j < a.cols(); ++j)
        detail::crossprod_fill_row(a, b, j, out.data() + j * b.cols());
    return out;
}

Matrix mean_of(std::span<const Matrix> ms) {
    detail::require(!ms.empty(), "mean_of: empty list");
    for (const Matrix& m : ms)
        detail::require(m.same_shape(ms.front()), "mean_of: shape mismatch");
    Matrix out(ms.front().rows(), ms.front().cols());
    for (Index v = 0; v < out.rows(); ++v)
        detail::mean_fill_row(ms, v, out.data() + v * out.cols());
    return out;
}

double frobenius_sq_diff(const Matrix& a, const Matrix& b) {
    detail::require(a.same_shape(b), "frobenius_sq_diff: shape mismatch");
    std::vector<double> parts(static_cast<std::size_t>(a.rows()));
    for (Index v = 0; v < a.rows(); ++v)
        parts[static_cast<std::size_t>(v)] = detail::row_sq_diff(a, b, v);
    return detail::reduce_partials(parts);
}

std::vector<double> row_sq_dist(const Matrix& a, const Matrix& b) {
    detail::require(a.same_shape(b), "row_sq_dist: shape mismatch");
    std::vector<double> out(static_cast<std::size_t>(a.rows()));
    for (Index v = 0; v < a.rows(); ++v)
        out[static_cast<std::size_t>(v)] = detail::row_sq_diff(a, b, v);
    return out;
}

std::vector<double> column_stddev(const Matrix& m) {
    detail::require(m.rows() >= 1, "column_stddev: empty matrix");
    std::vector<double> out(static_cast<std::size_t>(m.cols()));
    for (Index j = 0; j < m.cols(); ++j)
        out[static_cast<std::size_t>(j)] = detail::column_stddev_one(m, j);
    return out;
}

Matrix scale_columns(const Matrix& m, std::span<const double> scale) {
    detail::require(static_cast<Index>(scale.size()) == m.cols(),
                    "scale_columns: scale length mismatch");
    Matrix out(m.rows(), m.cols());
    for (Index v = 0; v < m.rows(); ++v)
        detail::scale_fill_row(m, scale, v, out.data() + v * m.cols());
    return out;
}

std::vector<double> cosine_scan(const Matrix& m, std::span<const double> q) {
    detail::require(static_cast<Index>(q.size()) == m.cols(),
                    "cosine_scan: query length mismatch");
    const double qn = std::sqrt(detail::dot_span(q, q));
    std::vector<double> out(static_cast<std::size_t>(m.rows()));
    for (Index v = 0; v < m.rows(); ++v)
        out[static_cast<std::size_t>(v)] = detail::cosine_row(m, v, q, qn);
    return out;
}

} // namespace serial
} // namespace embens::kernels
