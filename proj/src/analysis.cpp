#include "embens/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "embens/errors.hpp"
#include "embens/evaluation.hpp"
#include "embens/kernels.hpp"
#include "embens/parallel.hpp"
#include "embens/rng.hpp"

namespace embens {

namespace {

void check_consistent(const EmbeddingModel& combined, const ProjectionSet& projections,
                      const std::vector<EmbeddingModel>& inputs) {
    if (inputs.empty()) throw data_error("analysis: no input models");
    if (projections.size() != inputs.size())
        throw data_error("analysis: one projection per input model required");
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (inputs[i].words() != combined.words())
            throw data_error("analysis: input model " + std::to_string(i + 1) +
                             " vocabulary differs from the combined model");
        if (inputs[i].dim() != combined.dim())
            throw data_error("analysis: input model " + std::to_string(i + 1) +
                             " dimensionality differs from the combined model");
        const Matrix& p = projections[i];
        if (p.rows() != combined.dim() || p.cols() != combined.dim())
            throw data_error("analysis: projection " + std::to_string(i + 1) +
                             " is not d x d");
    }
}

} // namespace

ScatterReport scatter_distances(const EmbeddingModel& combined, const ProjectionSet& projections,
                                const std::vector<EmbeddingModel>& inputs) {
    check_consistent(combined, projections, inputs);
    const Index n = combined.size();
    std::vector<double> msd(static_cast<std::size_t>(n), 0.0);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const Matrix t = kernels::matmul(inputs[i].matrix(), projections[i]);
        const std::vector<double> sq = kernels::row_sq_dist(combined.matrix(), t);
        for (Index j = 0; j < n; ++j) msd[static_cast<std::size_t>(j)] += sq[static_cast<std::size_t>(j)];
    }
    const double inv_r = 1.0 / static_cast<double>(inputs.size());

    ScatterReport report;
    report.per_word.reserve(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j)
        report.per_word.push_back({combined.word(j), j, msd[static_cast<std::size_t>(j)] * inv_r});
    return report;
}

ScatterReport scatter_distances(const EnsembleResult& result,
                                const std::vector<EmbeddingModel>& inputs) {
    return scatter_distances(result.combined, result.projections, inputs);
}

PairSimilarityReport sample_pair_similarities(const EmbeddingModel& combined,
                                              const ProjectionSet& projections,
                                              const std::vector<EmbeddingModel>& inputs,
                                              Index n_pairs, std::uint64_t seed,
                                              bool translated_spaces) {
    check_consistent(combined, projections, inputs);
    if (n_pairs < 1) throw usage_error("n_pairs must be at least 1");
    const Index n = combined.size();
    if (n < 2) throw data_error("pair sampling needs at least two words");

    const std::uint64_t total =
        static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2;
    if (static_cast<std::uint64_t>(n_pairs) > total)
        throw data_error("n_pairs exceeds the number of distinct word pairs (" +
                         std::to_string(total) + ")");

    // Sample distinct unordered pairs (a < b). Small universes are shuffled
    // exhaustively; large ones are rejection-sampled.
    Rng rng(seed);
    std::vector<std::pair<Index, Index>> pairs;
    pairs.reserve(static_cast<std::size_t>(n_pairs));
    if (total <= 200000) {
        std::vector<std::pair<Index, Index>> all;
        all.reserve(static_cast<std::size_t>(total));
        for (Index a = 0; a < n; ++a)
            for (Index b = a + 1; b < n; ++b) all.emplace_back(a, b);
        for (Index k = 0; k < n_pairs; ++k) {
            const std::uint64_t pick =
                static_cast<std::uint64_t>(k) + rng.uniform_below(total - static_cast<std::uint64_t>(k));
            std::swap(all[static_cast<std::size_t>(k)], all[static_cast<std::size_t>(pick)]);
            pairs.push_back(all[static_cast<std::size_t>(k)]);
        }
    } else {
        std::unordered_set<std::uint64_t> seen;
        while (pairs.size() < static_cast<std::size_t>(n_pairs)) {
            Index a = static_cast<Index>(rng.uniform_below(static_cast<std::uint64_t>(n)));
            Index b = static_cast<Index>(rng.uniform_below(static_cast<std::uint64_t>(n)));
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            const std::uint64_t key =
                (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
            if (seen.insert(key).second) pairs.emplace_back(a, b);
        }
    }

    // Inputs are compared in their original spaces by default; with
    // translated_spaces the rows are first mapped through P_i.
    std::vector<Matrix> spaces;
    if (translated_spaces) {
        spaces.reserve(inputs.size());
        for (std::size_t i = 0; i < inputs.size(); ++i)
            spaces.push_back(kernels::matmul(inputs[i].matrix(), projections[i]));
    }

    PairSimilarityReport report;
    report.seed = seed;
    report.translated_spaces = translated_spaces;
    report.per_pair.resize(pairs.size());

    // kernels::cosine yields NaN on zero vectors; checked after the loop so
    // no exception crosses the parallel region.
    const Index count = static_cast<Index>(pairs.size());
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (Index k = 0; k < count; ++k) {
        const auto [a, b] = pairs[static_cast<std::size_t>(k)];
        PairSimilarityRow row;
        row.word_a = combined.word(a);
        row.word_b = combined.word(b);
        row.sim_combined = kernels::cosine(combined.vector_of(a), combined.vector_of(b));
        double lo = 2.0, hi = -2.0, sum = 0.0;
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            const Matrix& space = translated_spaces ? spaces[i] : inputs[i].matrix();
            const double s = kernels::cosine(space.row(a), space.row(b));
            lo = std::min(lo, s);
            hi = std::max(hi, s);
            sum += s;
        }
        row.sim_min = lo;
        row.sim_max = hi;
        row.sim_mean = sum / static_cast<double>(inputs.size());
        report.per_pair[static_cast<std::size_t>(k)] = std::move(row);
    }
    for (const PairSimilarityRow& row : report.per_pair)
        if (std::isnan(row.sim_combined) || std::isnan(row.sim_mean))
            throw data_error("pair sampling hit a zero vector for ('" + row.word_a + "', '" +
                             row.word_b + "')");

    std::sort(report.per_pair.begin(), report.per_pair.end(),
              [](const PairSimilarityRow& x, const PairSimilarityRow& y) {
                  if (x.sim_combined != y.sim_combined) return x.sim_combined < y.sim_combined;
                  if (x.word_a != y.word_a) return x.word_a < y.word_a;
                  return x.word_b < y.word_b;
              });
    return report;
}

PairSimilarityReport sample_pair_similarities(const EnsembleResult& result,
                                              const std::vector<EmbeddingModel>& inputs,
                                              Index n_pairs, std::uint64_t seed,
                                              bool translated_spaces) {
    return sample_pair_similarities(result.combined, result.projections, inputs, n_pairs, seed,
                                    translated_spaces);
}

void write_scatter_csv(std::ostream& out, const ScatterReport& report) {
    out << "rank,word,msd\n";
    for (const ScatterRow& row : report.per_word)
        out << row.rank << ',' << csv_field(row.word) << ',' << format_double(row.msd) << '\n';
}

void write_pair_similarity_csv(std::ostream& out, const PairSimilarityReport& report) {
    out << "word_a,word_b,sim_combined,sim_min,sim_mean,sim_max\n";
    for (const PairSimilarityRow& row : report.per_pair)
        out << csv_field(row.word_a) << ',' << csv_field(row.word_b) << ','
            << format_double(row.sim_combined) << ',' << format_double(row.sim_min) << ','
            << format_double(row.sim_mean) << ',' << format_double(row.sim_max) << '\n';
}

} // namespace embens
