#ifndef EMBENS_ANALYSIS_HPP
#define EMBENS_ANALYSIS_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "embens/alignment.hpp"
#include "embens/model.hpp"

namespace embens {

struct ScatterRow {
    std::string word;
    Index rank = 0;   // row index, the frequency proxy
    double msd = 0.0; // mean over models of the squared row distance to Y
};

// Ordered by frequency rank ascending; one row per word.
struct ScatterReport {
    std::vector<ScatterRow> per_word;
};

struct PairSimilarityRow {
    std::string word_a;
    std::string word_b;
    double sim_combined = 0.0;
    double sim_min = 0.0;
    double sim_mean = 0.0;
    double sim_max = 0.0;
};

// Seeded random sample of distinct unordered word pairs, sorted ascending
// by the pair's similarity in the combined model.
struct PairSimilarityReport {
    std::uint64_t seed = 0;
    bool translated_spaces = false; // input sims measured in T_i instead of W_i
    std::vector<PairSimilarityRow> per_pair;
};

// Per-word scattering of the translated models around the combined model:
// msd_j = (1/r) * sum_i ||Y_j - (W_i P_i)_j||^2.
ScatterReport scatter_distances(const EmbeddingModel& combined, const ProjectionSet& projections,
                                const std::vector<EmbeddingModel>& inputs);
ScatterReport scatter_distances(const EnsembleResult& result,
                                const std::vector<EmbeddingModel>& inputs);

// Draws n_pairs distinct unordered pairs uniformly (deterministic per seed)
// and compares each pair's cosine in the combined model with the minimum,
// mean and maximum cosine across the input models. Input similarities are
// measured in the original W_i spaces unless translated_spaces is set.
PairSimilarityReport sample_pair_similarities(const EmbeddingModel& combined,
                                              const ProjectionSet& projections,
                                              const std::vector<EmbeddingModel>& inputs,
                                              Index n_pairs, std::uint64_t seed,
                                              bool translated_spaces = false);
PairSimilarityReport sample_pair_similarities(const EnsembleResult& result,
                                              const std::vector<EmbeddingModel>& inputs,
                                              Index n_pairs, std::uint64_t seed,
                                              bool translated_spaces = false);

// CSV schemas (header row mandatory):
//   scatter: rank,word,msd
//   pairs:   word_a,word_b,sim_combined,sim_min,sim_mean,sim_max
void write_scatter_csv(std::ostream& out, const ScatterReport& report);
void write_pair_similarity_csv(std::ostream& out, const PairSimilarityReport& report);

} // namespace embens

#endif
