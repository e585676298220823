#ifndef EMBENS_ALIGNMENT_HPP
#define EMBENS_ALIGNMENT_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "embens/matrix.hpp"
#include "embens/model.hpp"

namespace embens {

enum class CombineMethod { sols, sopp };
enum class InitRule { mean_of_inputs, first_model };

std::string to_string(CombineMethod m);
CombineMethod combine_method_from_string(const std::string& s);

struct CombineConfig {
    CombineMethod method = CombineMethod::sopp;
    double threshold = 1e-3;
    Index max_iterations = 200;
    InitRule init = InitRule::mean_of_inputs;
};

// One d x d transformation per input model, in input order.
struct ProjectionSet {
    std::vector<Matrix> projections;

    std::size_t size() const { return projections.size(); }
    const Matrix& operator[](std::size_t i) const { return projections[i]; }
};

struct EnsembleResult {
    EmbeddingModel combined;
    ProjectionSet projections;
    std::vector<double> residual_history;  // one averaged normalized residual per iteration
    std::vector<double> objective_history; // sum of squared Frobenius residuals per iteration
    Index iterations = 0;
    CombineMethod method = CombineMethod::sopp;
    double threshold = 0.0;
    bool converged = false; // false when the iteration cap stopped the loop
};

// Least-squares projection: the P minimizing ||Y - W*P||_F^2, solved from
// the normal equations with an LDLT factorization. Throws solver_error when
// WT*W has condition number above 1e12 (rank deficiency).
Matrix solve_ols_projection(const Matrix& w, const Matrix& y);

// Orthogonal Procrustes projection: P = U*VT from the SVD of WT*Y. The
// result ranges over the full orthogonal group (reflections included).
Matrix solve_procrustes_projection(const Matrix& w, const Matrix& y);

// Divides each column by its population standard deviation so every column
// has unit variance. Columns are scaled only, never re-centered. Throws
// solver_error on a zero-variance column.
Matrix rescale_columns_unit_variance(const Matrix& y);

// Averaged normalized residual: (1/r) * sum_i ||Y - W_i*P_i||_F / sqrt(|V|*d).
double residual_error(const Matrix& y, std::span<const Matrix> models,
                      const ProjectionSet& projections);

// Combination objective: sum_i ||Y - W_i*P_i||_F^2.
double objective_value(const Matrix& y, std::span<const Matrix> models,
                       const ProjectionSet& projections);

// max |PT*P - I|; zero for a perfectly orthogonal matrix.
double orthogonality_defect(const Matrix& p);

// Called after each full iteration with the iteration number (1-based),
// the current combined matrix, and the current projections.
using IterationObserver = std::function<void(Index, const Matrix&, const ProjectionSet&)>;

// Iterative combination: repeat { [SOLS: rescale Y] ; solve all projections
// against Y ; Y <- mean of translated models ; record residual } until the
// change in residual drops below config.threshold or the iteration cap is
// hit. Models must share vocabulary, order and dimensionality (use
// align_vocabularies first). All reductions use a fixed summation order, so
// results are identical across runs and thread counts.
EnsembleResult combine(const std::vector<EmbeddingModel>& models, const CombineConfig& config,
                       const IterationObserver& observer = {});

// Residual history rows: "iteration,residual".
void write_residual_csv(std::ostream& out, const EnsembleResult& result);

} // namespace embens

#endif
