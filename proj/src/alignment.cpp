#include "embens/alignment.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <ostream>

#include "embens/errors.hpp"
#include "embens/kernels.hpp"
#include "embens/model.hpp"

namespace embens {

namespace {

constexpr double kMaxConditionNumber = 1e12;

Eigen::MatrixXd to_eigen(const Matrix& m) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    return e;
}

Matrix from_eigen(const Eigen::MatrixXd& e) {
    Matrix m(e.rows(), e.cols());
    for (Index i = 0; i < e.rows(); ++i)
        for (Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
    return m;
}

void check_same_shape(const Matrix& w, const Matrix& y, const char* who) {
    if (!w.same_shape(y)) throw data_error(std::string(who) + ": W and Y must have equal shapes");
}

} // namespace

std::string to_string(CombineMethod m) {
    return m == CombineMethod::sols ? "sols" : "sopp";
}

CombineMethod combine_method_from_string(const std::string& s) {
    if (s == "sols") return CombineMethod::sols;
    if (s == "sopp") return CombineMethod::sopp;
    throw usage_error("unknown combine method '" + s + "' (expected sols or sopp)");
}

Matrix solve_ols_projection(const Matrix& w, const Matrix& y) {
    check_same_shape(w, y, "solve_ols_projection");
    const Matrix gram = kernels::crossprod(w, w);
    const Matrix rhs = kernels::crossprod(w, y);

    const Eigen::MatrixXd g = to_eigen(gram);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || hi / lo > kMaxConditionNumber)
        throw solver_error("normal equations are rank-deficient or ill-conditioned (condition "
                           "number above 1e12)");

    Eigen::LDLT<Eigen::MatrixXd> ldlt(g);
    return from_eigen(ldlt.solve(to_eigen(rhs)));
}

Matrix solve_procrustes_projection(const Matrix& w, const Matrix& y) {
    check_same_shape(w, y, "solve_procrustes_projection");
    const Matrix s = kernels::crossprod(w, y);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(s), Eigen::ComputeFullU | Eigen::ComputeFullV);
    return from_eigen(svd.matrixU() * svd.matrixV().transpose());
}

Matrix rescale_columns_unit_variance(const Matrix& y) {
    const std::vector<double> sd = kernels::column_stddev(y);
    std::vector<double> inv(sd.size());
    for (std::size_t j = 0; j < sd.size(); ++j) {
        if (!(sd[j] > 0.0))
            throw solver_error("column " + std::to_string(j) +
                               " has zero variance; cannot rescale");
        inv[j] = 1.0 / sd[j];
    }
    return kernels::scale_columns(y, inv);
}

double residual_error(const Matrix& y, std::span<const Matrix> models,
                      const ProjectionSet& projections) {
    if (models.size() != projections.size())
        throw data_error("residual_error: one projection per model required");
    if (models.empty()) throw data_error("residual_error: no models");
    const double denom = std::sqrt(static_cast<double>(y.rows()) * static_cast<double>(y.cols()));
    double acc = 0.0;
    for (std::size_t i = 0; i < models.size(); ++i) {
        const Matrix t = kernels::matmul(models[i], projections[i]);
        acc += std::sqrt(kernels::frobenius_sq_diff(y, t)) / denom;
    }
    return acc / static_cast<double>(models.size());
}

double objective_value(const Matrix& y, std::span<const Matrix> models,
                       const ProjectionSet& projections) {
    if (models.size() != projections.size())
        throw data_error("objective_value: one projection per model required");
    double acc = 0.0;
    for (std::size_t i = 0; i < models.size(); ++i) {
        const Matrix t = kernels::matmul(models[i], projections[i]);
        acc += kernels::frobenius_sq_diff(y, t);
    }
    return acc;
}

double orthogonality_defect(const Matrix& p) {
    return max_abs_diff(kernels::crossprod(p, p), Matrix::identity(p.cols()));
}

EnsembleResult combine(const std::vector<EmbeddingModel>& models, const CombineConfig& config,
                       const IterationObserver& observer) {
    if (models.size() < 2) throw usage_error("combine needs at least two models");
    if (!(config.threshold > 0.0)) throw usage_error("threshold must be positive");
    if (config.max_iterations < 1) throw usage_error("max_iterations must be at least 1");

    const EmbeddingModel& first = models.front();
    for (const EmbeddingModel& m : models) {
        if (m.dim() != first.dim())
            throw data_error("combine: all models must share one dimensionality");
        if (m.words() != first.words())
            throw data_error("combine: vocabularies differ; run align_vocabularies first");
    }

    const std::size_t r = models.size();
    std::vector<Matrix> w;
    w.reserve(r);
    for (const EmbeddingModel& m : models) w.push_back(m.matrix());

    Matrix y = config.init == InitRule::mean_of_inputs ? kernels::mean_of(w) : w.front();

    ProjectionSet proj;
    proj.projections.resize(r);
    std::vector<Matrix> translated(r);

    std::vector<double> residuals;
    std::vector<double> objectives;
    bool converged = false;

    const double denom = std::sqrt(static_cast<double>(y.rows()) * static_cast<double>(y.cols()));

    for (Index iter = 1; iter <= config.max_iterations; ++iter) {
        if (config.method == CombineMethod::sols) {
            try {
                y = rescale_columns_unit_variance(y);
            } catch (const solver_error& e) {
                throw solver_error(std::string("iteration ") + std::to_string(iter) + ": " + e.what());
            }
        }

        for (std::size_t i = 0; i < r; ++i) {
            try {
                proj.projections[i] = config.method == CombineMethod::sols
                                          ? solve_ols_projection(w[i], y)
                                          : solve_procrustes_projection(w[i], y);
            } catch (const solver_error& e) {
                throw solver_error("model " + std::to_string(i + 1) + ": " + e.what());
            }
        }

        for (std::size_t i = 0; i < r; ++i)
            translated[i] = kernels::matmul(w[i], proj.projections[i]);
        y = kernels::mean_of(translated);

        double res = 0.0;
        double obj = 0.0;
        for (std::size_t i = 0; i < r; ++i) {
            const double sq = kernels::frobenius_sq_diff(y, translated[i]);
            res += std::sqrt(sq) / denom;
            obj += sq;
        }
        res /= static_cast<double>(r);
        residuals.push_back(res);
        objectives.push_back(obj);

        if (observer) observer(iter, y, proj);

        const std::size_t t = residuals.size();
        if (t >= 2 && std::abs(residuals[t - 1] - residuals[t - 2]) < config.threshold) {
            converged = true;
            break;
        }
    }

    if (!all_finite(y))
        throw solver_error("combination diverged to non-finite values");

    EnsembleResult result{EmbeddingModel(first.words(), std::move(y)),
                          std::move(proj),
                          std::move(residuals),
                          std::move(objectives),
                          0,
                          config.method,
                          config.threshold,
                          converged};
    result.iterations = static_cast<Index>(result.residual_history.size());
    return result;
}

void write_residual_csv(std::ostream& out, const EnsembleResult& result) {
    out << "iteration,residual\n";
    for (std::size_t t = 0; t < result.residual_history.size(); ++t)
        out << (t + 1) << ',' << format_double(result.residual_history[t]) << '\n';
}

} // namespace embens
