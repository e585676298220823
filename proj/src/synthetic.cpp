#include "embens/synthetic.hpp"

#include <cmath>
#include <cstdio>

#include "embens/alignment.hpp"
#include "embens/errors.hpp"
#include "embens/kernels.hpp"
#include "embens/rng.hpp"

namespace embens {

namespace {

constexpr Index kPairsPerCluster = 3; // analogy pairs; plus one synonym companion

std::string token_for(Index row) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "w%06lld", static_cast<long long>(row));
    return buf;
}

void add_scaled_gaussian(Rng& rng, std::span<double> out, double scale) {
    for (double& v : out) v += scale * rng.normal();
}

void validate(const SyntheticSpec& spec) {
    if (spec.vocab_size < 1) throw usage_error("vocab_size must be at least 1");
    if (spec.dim < 1) throw usage_error("dim must be at least 1");
    if (spec.n_models < 2) throw usage_error("n_models must be at least 2");
    if (spec.noise_sigma < 0.0) throw usage_error("noise_sigma must be non-negative");
    if (spec.structure == SyntheticStructure::clustered) {
        if (spec.clustered.n_clusters < 1) throw usage_error("n_clusters must be at least 1");
        if (!(spec.clustered.spread > 0.0)) throw usage_error("spread must be positive");
        if (spec.dim < 2)
            throw data_error("clustered structure needs dim >= 2 to separate planted neighbors");
        const Index needed = spec.clustered.n_clusters * (2 * kPairsPerCluster + 1);
        if (spec.vocab_size < needed)
            throw data_error("vocab_size " + std::to_string(spec.vocab_size) +
                             " cannot host " + std::to_string(spec.clustered.n_clusters) +
                             " planted clusters (needs at least " + std::to_string(needed) + ")");
    }
}

// Ground truth geometry. Clustered layout per cluster: three analogy base
// words a_j with partners b_j = a_j + u (a shared relation offset), plus a
// synonym companion hugging a_0. Cluster centers are unit vectors, so with
// offsets of size `spread` the planted neighbors dominate every
// cross-cluster similarity.
void build_clustered(const SyntheticSpec& spec, Rng& rng, Matrix& g, SynonymDataset& synonyms,
                     AnalogyDataset& analogies) {
    const Index d = spec.dim;
    const double unit = 1.0 / std::sqrt(static_cast<double>(d));
    const double spread = spec.clustered.spread;
    Index row = 0;

    for (Index c = 0; c < spec.clustered.n_clusters; ++c) {
        std::vector<double> center(static_cast<std::size_t>(d));
        double nc = 0.0;
        for (double& v : center) {
            v = rng.normal();
            nc += v * v;
        }
        nc = std::sqrt(nc);
        for (double& v : center) v /= nc > 0 ? nc : 1.0;

        std::vector<double> relation(static_cast<std::size_t>(d));
        for (double& v : relation) v = spread * unit * rng.normal();

        const Index base_row = row;
        for (Index p = 0; p < kPairsPerCluster; ++p) {
            auto a = g.row(row);
            for (Index j = 0; j < d; ++j) a[static_cast<std::size_t>(j)] = center[static_cast<std::size_t>(j)];
            add_scaled_gaussian(rng, a, spread * unit);
            auto b = g.row(row + 1);
            for (Index j = 0; j < d; ++j)
                b[static_cast<std::size_t>(j)] =
                    a[static_cast<std::size_t>(j)] + relation[static_cast<std::size_t>(j)];
            row += 2;
        }
        // Synonym companion: a slightly offset copy of the first base word.
        auto s = g.row(row);
        auto first = g.row(base_row);
        for (Index j = 0; j < d; ++j) s[static_cast<std::size_t>(j)] = first[static_cast<std::size_t>(j)];
        add_scaled_gaussian(rng, s, 0.1 * spread * unit);
        synonyms.pairs.push_back({token_for(base_row), token_for(row)});
        ++row;

        const std::string category = "cluster" + std::to_string(c);
        for (Index p = 0; p + 1 < kPairsPerCluster; ++p) {
            const Index a1 = base_row + 2 * p;
            const Index a2 = base_row + 2 * (p + 1);
            analogies.quartets.push_back({token_for(a1), token_for(a1 + 1), token_for(a2),
                                          token_for(a2 + 1), category});
        }
    }

    // Filler words: isotropic, same norm scale as the cluster centers.
    for (; row < spec.vocab_size; ++row) {
        auto v = g.row(row);
        for (Index j = 0; j < d; ++j) v[static_cast<std::size_t>(j)] = unit * rng.normal();
    }
}

void verify_planting(const EmbeddingModel& gt, const SynonymDataset& synonyms,
                     const AnalogyDataset& analogies) {
    for (const SynonymPair& p : synonyms.pairs) {
        if (synonym_rank(gt, p.query, p.synonym) != 1 || synonym_rank(gt, p.synonym, p.query) != 1)
            throw data_error("planting failed: pair ('" + p.query + "', '" + p.synonym +
                             "') is not mutual-nearest-neighbor; adjust seed, spread or cluster count");
    }
    const AnalogyReport report = run_analogy_test(gt, analogies);
    if (report.hit_at_1 != 1.0)
        throw data_error("planting failed: ground-truth analogy Hit@1 is " +
                         std::to_string(report.hit_at_1) +
                         "; adjust seed, spread or cluster count");
}

} // namespace

SyntheticFamily generate_family(const SyntheticSpec& spec) {
    validate(spec);

    std::vector<std::string> words;
    words.reserve(static_cast<std::size_t>(spec.vocab_size));
    for (Index i = 0; i < spec.vocab_size; ++i) words.push_back(token_for(i));

    Rng gt_rng(derive_seed(spec.seed, 0));
    Matrix g(spec.vocab_size, spec.dim);
    SynonymDataset synonyms;
    AnalogyDataset analogies;

    if (spec.structure == SyntheticStructure::clustered) {
        build_clustered(spec, gt_rng, g, synonyms, analogies);
    } else {
        const double unit = 1.0 / std::sqrt(static_cast<double>(spec.dim));
        for (Index i = 0; i < spec.vocab_size; ++i)
            for (Index j = 0; j < spec.dim; ++j) g(i, j) = unit * gt_rng.normal();
    }

    EmbeddingModel ground_truth(words, std::move(g));
    if (spec.structure == SyntheticStructure::clustered)
        verify_planting(ground_truth, synonyms, analogies);

    // Each model draws from its own derived stream, so families are stable
    // no matter how generation is scheduled.
    std::vector<EmbeddingModel> inputs;
    std::vector<Matrix> rotations;
    inputs.reserve(static_cast<std::size_t>(spec.n_models));
    rotations.reserve(static_cast<std::size_t>(spec.n_models));
    for (Index i = 1; i <= spec.n_models; ++i) {
        Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(i)));
        Matrix rot = random_orthogonal(rng, spec.dim);
        Matrix m = kernels::matmul(ground_truth.matrix(), rot);
        if (spec.noise_sigma > 0.0)
            for (Index v = 0; v < m.rows(); ++v) add_scaled_gaussian(rng, m.row(v), spec.noise_sigma);
        rotations.push_back(std::move(rot));
        inputs.emplace_back(words, std::move(m));
    }

    return {std::move(ground_truth), std::move(inputs), std::move(synonyms), std::move(analogies),
            std::move(rotations)};
}

double recovery_error(const EmbeddingModel& ground_truth, const EmbeddingModel& model) {
    if (ground_truth.size() != model.size() || ground_truth.dim() != model.dim())
        throw data_error("recovery_error: model shape differs from the ground truth");
    const Matrix q = solve_procrustes_projection(ground_truth.matrix(), model.matrix());
    const Matrix aligned = kernels::matmul(ground_truth.matrix(), q);
    const double denom = std::sqrt(static_cast<double>(ground_truth.size()) *
                                   static_cast<double>(ground_truth.dim()));
    return std::sqrt(kernels::frobenius_sq_diff(aligned, model.matrix())) / denom;
}

double recovery_error(const SyntheticFamily& family, const EmbeddingModel& model) {
    return recovery_error(family.ground_truth, model);
}

} // namespace embens
