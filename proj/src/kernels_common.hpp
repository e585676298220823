#ifndef EMBENS_KERNELS_COMMON_HPP
#define EMBENS_KERNELS_COMMON_HPP

// Per-element routines shared by the serial and OpenMP kernel variants.
// Keeping the element computation in one place is what makes the two
// variants bit-identical: parallelism only ever distributes these calls.

#include <cmath>
#include <limits>
#include <span>

#include "embens/errors.hpp"
#include "embens/matrix.hpp"

namespace embens::kernels::detail {

inline void require(bool ok, const char* msg) {
    if (!ok) throw data_error(msg);
}

inline double matmul_element(const Matrix& a, const Matrix& b, Index i, Index j) {
    double acc = 0.0;
    const Index k = a.cols();
    for (Index t = 0; t < k; ++t) acc += a(i, t) * b(t, j);
    return acc;
}

// Row j of aT*b, accumulated over observations in row order.
inline void crossprod_fill_row(const Matrix& a, const Matrix& b, Index j, double* out) {
    const Index n = a.rows();
    const Index q = b.cols();
    for (Index t = 0; t < q; ++t) out[t] = 0.0;
    for (Index v = 0; v < n; ++v) {
        const double aj = a(v, j);
        const double* brow = b.data() + v * q;
        for (Index t = 0; t < q; ++t) out[t] += aj * brow[t];
    }
}

inline void mean_fill_row(std::span<const Matrix> ms, Index v, double* out) {
    const Index c = ms.front().cols();
    const double inv = 1.0 / static_cast<double>(ms.size());
    for (Index t = 0; t < c; ++t) out[t] = 0.0;
    for (const Matrix& m : ms) {
        const double* row = m.data() + v * c;
        for (Index t = 0; t < c; ++t) out[t] += row[t];
    }
    for (Index t = 0; t < c; ++t) out[t] *= inv;
}

inline double row_sq_diff(const Matrix& a, const Matrix& b, Index v) {
    const Index c = a.cols();
    const double* pa = a.data() + v * c;
    const double* pb = b.data() + v * c;
    double acc = 0.0;
    for (Index t = 0; t < c; ++t) {
        const double d = pa[t] - pb[t];
        acc += d * d;
    }
    return acc;
}

inline double column_stddev_one(const Matrix& m, Index j) {
    const Index n = m.rows();
    double sum = 0.0;
    for (Index v = 0; v < n; ++v) sum += m(v, j);
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (Index v = 0; v < n; ++v) {
        const double d = m(v, j) - mean;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(n));
}

inline void scale_fill_row(const Matrix& m, std::span<const double> scale, Index v, double* out) {
    const Index c = m.cols();
    const double* row = m.data() + v * c;
    for (Index t = 0; t < c; ++t) out[t] = row[t] * scale[t];
}

inline double dot_span(std::span<const double> u, std::span<const double> v) {
    double acc = 0.0;
    for (std::size_t t = 0; t < u.size(); ++t) acc += u[t] * v[t];
    return acc;
}

inline double clamp_cosine(double c) {
    if (c > 1.0) return 1.0;
    if (c < -1.0) return -1.0;
    return c; // NaN falls through
}

inline double cosine_row(const Matrix& m, Index v, std::span<const double> q, double q_norm) {
    const Index c = m.cols();
    const double* row = m.data() + v * c;
    double d = 0.0, ss = 0.0;
    for (Index t = 0; t < c; ++t) {
        d += row[t] * q[static_cast<std::size_t>(t)];
        ss += row[t] * row[t];
    }
    const double rn = std::sqrt(ss);
    if (rn == 0.0 || q_norm == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return clamp_cosine(d / (rn * q_norm));
}

// Reduction over stored per-row partials, always in row order.
inline double reduce_partials(const std::vector<double>& parts) {
    double acc = 0.0;
    for (double p : parts) acc += p;
    return acc;
}

} // namespace embens::kernels::detail

#endif
