#ifndef EMBENS_KERNELS_HPP
#define EMBENS_KERNELS_HPP

#include <span>
#include <vector>

#include "embens/matrix.hpp"

namespace embens::kernels {

// Data-parallel building blocks. Every kernel computes each output element
// with a fixed left-to-right accumulation order and parallelizes only across
// independent output elements, so the OpenMP variants below and the
// reference implementations in kernels::serial agree bit-for-bit for any
// thread count.

// a (n x k) * b (k x m) -> n x m
Matrix matmul(const Matrix& a, const Matrix& b);

// aT * b for a (n x p), b (n x q) -> p x q
Matrix crossprod(const Matrix& a, const Matrix& b);

// Elementwise mean of equally shaped matrices, summed in list order.
Matrix mean_of(std::span<const Matrix> ms);

// sum((a - b)^2) over all entries.
double frobenius_sq_diff(const Matrix& a, const Matrix& b);

// Per-row squared Euclidean distance between a and b.
std::vector<double> row_sq_dist(const Matrix& a, const Matrix& b);

// Population standard deviation (divisor n) of each column.
std::vector<double> column_stddev(const Matrix& m);

// Returns a copy of m with column j multiplied by scale[j].
Matrix scale_columns(const Matrix& m, std::span<const double> scale);

// cos(row_i, q) for every row, clamped to [-1, 1].
// Rows (or q) with zero norm yield NaN; callers decide the policy.
std::vector<double> cosine_scan(const Matrix& m, std::span<const double> q);

double dot(std::span<const double> u, std::span<const double> v);
double norm(std::span<const double> u);

// Clamped cosine; NaN when either vector has zero norm.
double cosine(std::span<const double> u, std::span<const double> v);

namespace serial {

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix crossprod(const Matrix& a, const Matrix& b);
Matrix mean_of(std::span<const Matrix> ms);
double frobenius_sq_diff(const Matrix& a, const Matrix& b);
std::vector<double> row_sq_dist(const Matrix& a, const Matrix& b);
std::vector<double> column_stddev(const Matrix& m);
Matrix scale_columns(const Matrix& m, std::span<const double> scale);
std::vector<double> cosine_scan(const Matrix& m, std::span<const double> q);

} // namespace serial

} // namespace embens::kernels

#endif
