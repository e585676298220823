#ifndef EMBENS_SYNTHETIC_HPP
#define EMBENS_SYNTHETIC_HPP

#include <cstdint>
#include <vector>

#include "embens/evaluation.hpp"
#include "embens/matrix.hpp"
#include "embens/model.hpp"

namespace embens {

enum class SyntheticStructure { flat, clustered };

struct ClusteredParams {
    Index n_clusters = 20;
    double spread = 0.3; // intra-cluster offset scale relative to the unit cluster centers
};

// Parameters for a family of models derived from one ground truth: each
// input is the ground truth under a random orthogonal map plus i.i.d.
// Gaussian entry noise. Clustered structure additionally plants
// mutual-nearest-neighbor synonym pairs and exact analogy parallelograms.
struct SyntheticSpec {
    Index vocab_size = 1000;
    Index dim = 20;
    Index n_models = 2;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
    SyntheticStructure structure = SyntheticStructure::flat;
    ClusteredParams clustered;
};

struct SyntheticFamily {
    EmbeddingModel ground_truth;
    std::vector<EmbeddingModel> inputs;
    SynonymDataset planted_synonyms;   // empty for flat structure
    AnalogyDataset planted_analogies;  // empty for flat structure
    std::vector<Matrix> rotations;     // the orthogonal maps actually used
};

// Deterministic for a given spec: the ground truth uses one derived seed
// stream and every model i its own, so per-model generation order cannot
// change the output. Clustered generation verifies the planted structures
// (mutual nearest neighbors; analogy Hit@1 = 1 on the ground truth) and
// throws data_error when the parameters cannot host them.
SyntheticFamily generate_family(const SyntheticSpec& spec);

// Alignment-invariant distance to the ground truth:
// ||G*Q - M||_F / sqrt(|V|*d) with Q the orthogonal Procrustes map of G
// onto M. Zero for any pure rotation/reflection of the ground truth.
double recovery_error(const SyntheticFamily& family, const EmbeddingModel& model);
double recovery_error(const EmbeddingModel& ground_truth, const EmbeddingModel& model);

} // namespace embens

#endif
