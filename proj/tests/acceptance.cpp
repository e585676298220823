// Acceptance suite: every release-gating requirement as one pass/fail line.
// Exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "embens/alignment.hpp"
#include "embens/analysis.hpp"
#include "embens/cli.hpp"
#include "embens/evaluation.hpp"
#include "embens/kernels.hpp"
#include "embens/model.hpp"
#include "embens/rng.hpp"
#include "embens/synthetic.hpp"

using namespace embens;

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void criterion(int number, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s — %s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double objective_naive(const Matrix& w, const Matrix& y, const Matrix& p) {
    double acc = 0.0;
    for (Index i = 0; i < w.rows(); ++i)
        for (Index j = 0; j < p.cols(); ++j) {
            double t = 0.0;
            for (Index k = 0; k < w.cols(); ++k) t += w(i, k) * p(k, j);
            const double d = y(i, j) - t;
            acc += d * d;
        }
    return acc;
}

// ---- criterion 1 -----------------------------------------------------------

void run_solver_correctness() {
    const auto start = Clock::now();
    bool ok = true;
    std::string detail;
    int instances = 0;

    for (std::uint64_t k = 0; k < 100 && ok; ++k) {
        Rng rng(derive_seed(0xACC1, k));
        const Index d = 2 + static_cast<Index>(rng.uniform_below(7));      // [2, 8]
        const Index lo = std::max<Index>(5, d + 2);
        const Index v = lo + static_cast<Index>(rng.uniform_below(
                                 static_cast<std::uint64_t>(50 - lo + 1))); // [lo, 50]
        const Matrix w = gaussian_matrix(rng, v, d);
        const Matrix y = gaussian_matrix(rng, v, d);
        ++instances;

        // Least squares: the normal equations must balance.
        const Matrix p = solve_ols_projection(w, y);
        const Matrix wp = kernels::matmul(w, p);
        Matrix diff(v, d);
        for (Index i = 0; i < v; ++i)
            for (Index j = 0; j < d; ++j) diff(i, j) = y(i, j) - wp(i, j);
        const Matrix lhs = kernels::crossprod(w, diff);
        const Matrix wty = kernels::crossprod(w, y);
        double lhs_max = 0.0, scale = 0.0;
        for (Index i = 0; i < d; ++i)
            for (Index j = 0; j < d; ++j) {
                lhs_max = std::max(lhs_max, std::abs(lhs(i, j)));
                scale = std::max(scale, std::abs(wty(i, j)));
            }
        if (lhs_max > 1e-8 * scale) {
            ok = false;
            detail = "OLS normal-equations residual " + format_double(lhs_max) + " above bound";
            break;
        }

        // Procrustes: orthogonal, and at least as good as 1000 sampled rotations.
        const Matrix q = solve_procrustes_projection(w, y);
        if (orthogonality_defect(q) > 1e-6) {
            ok = false;
            detail = "Procrustes projection not orthogonal";
            break;
        }
        const double best = objective_naive(w, y, q);
        for (int s = 0; s < 1000; ++s) {
            const Matrix sample = random_orthogonal(rng, d);
            if (best > objective_naive(w, y, sample) + 1e-12) {
                ok = false;
                detail = "a sampled rotation beat the Procrustes solution";
                break;
            }
        }
    }

    const double elapsed = seconds_since(start);
    if (ok && elapsed >= 30.0) {
        ok = false;
        detail = "runtime " + format_double(elapsed) + "s exceeds 30s";
    }
    if (ok)
        detail = std::to_string(instances) + " instances, 1000 rotation samples each, " +
                 format_double(elapsed) + "s";
    criterion(1, "solver correctness vs oracles", ok, detail);
}

// ---- criterion 2 -----------------------------------------------------------

void run_exact_recovery() {
    const auto start = Clock::now();
    SyntheticSpec spec;
    spec.vocab_size = 2000;
    spec.dim = 50;
    spec.n_models = 10;
    spec.noise_sigma = 0.0;
    spec.seed = 20260001;
    const SyntheticFamily family = generate_family(spec);

    CombineConfig config;
    config.method = CombineMethod::sopp;
    config.threshold = 1e-12;
    config.max_iterations = 100;
    const EnsembleResult result = combine(family.inputs, config);

    double worst_defect = 0.0;
    for (const Matrix& p : result.projections.projections)
        worst_defect = std::max(worst_defect, orthogonality_defect(p));
    const double residual = result.residual_history.back();
    const double recovery = recovery_error(family, result.combined);
    const double elapsed = seconds_since(start);

    bool ok = residual < 1e-6 && worst_defect <= 1e-6 && recovery < 1e-6 && elapsed < 60.0;
    // Monotonicity bookkeeping for criterion 5 happens on every SOPP run.
    for (std::size_t t = 1; t < result.objective_history.size(); ++t)
        if (result.objective_history[t] > result.objective_history[t - 1] + 1e-9) ok = false;

    criterion(2, "exact recovery from pure rotations", ok,
              "residual " + format_double(residual) + ", recovery " + format_double(recovery) +
                  ", max orthogonality defect " + format_double(worst_defect) + ", " +
                  std::to_string(result.iterations) + " iterations, " + format_double(elapsed) +
                  "s");
}

// ---- criteria 3-6 share the noisy families ---------------------------------

// Noise level chosen so the planted-analogy Hit@1 of individual inputs sits
// in the required [0.3, 0.7] window for every acceptance seed below.
constexpr double kNoisySigma = 0.11;
constexpr std::uint64_t kNoisySeeds[5] = {101, 102, 103, 104, 105};

SyntheticSpec noisy_spec(std::uint64_t seed) {
    SyntheticSpec spec;
    spec.vocab_size = 2000;
    spec.dim = 50;
    spec.n_models = 10;
    spec.noise_sigma = kNoisySigma;
    spec.seed = seed;
    spec.structure = SyntheticStructure::clustered;
    spec.clustered.n_clusters = 150;
    spec.clustered.spread = 0.3;
    return spec;
}

struct SeedOutcome {
    double input_mean_rank = 0.0;
    double input_hit1 = 0.0;
    double input_hit10 = 0.0;
    double combined_mean_rank = 0.0;
    double combined_hit1 = 0.0;
    double combined_hit10 = 0.0;
    Index sopp_iterations = 0;
    Index sols_iterations = 0;
    bool sols_finite = true;
    bool sopp_monotone = true;
};

SeedOutcome evaluate_seed(const SyntheticFamily& family, const EnsembleResult& sopp,
                          const EnsembleResult& sols) {
    SeedOutcome out;
    out.sopp_iterations = sopp.iterations;
    out.sols_iterations = sols.iterations;

    for (std::size_t t = 1; t < sopp.objective_history.size(); ++t)
        if (sopp.objective_history[t] > sopp.objective_history[t - 1] + 1e-9)
            out.sopp_monotone = false;
    for (double r : sols.residual_history)
        if (!std::isfinite(r)) out.sols_finite = false;
    if (!all_finite(sols.combined.matrix())) out.sols_finite = false;

    const Index top_n = 1000;
    for (const EmbeddingModel& input : family.inputs) {
        out.input_mean_rank += run_synonym_test(input, family.planted_synonyms, top_n).mean_rank;
        const AnalogyReport r = run_analogy_test(input, family.planted_analogies);
        out.input_hit1 += r.hit_at_1;
        out.input_hit10 += r.hit_at_10;
    }
    const double r = static_cast<double>(family.inputs.size());
    out.input_mean_rank /= r;
    out.input_hit1 /= r;
    out.input_hit10 /= r;

    out.combined_mean_rank =
        run_synonym_test(sopp.combined, family.planted_synonyms, top_n).mean_rank;
    const AnalogyReport cr = run_analogy_test(sopp.combined, family.planted_analogies);
    out.combined_hit1 = cr.hit_at_1;
    out.combined_hit10 = cr.hit_at_10;
    return out;
}

void run_noisy_family_criteria() {
    std::vector<SeedOutcome> outcomes;
    const SyntheticFamily* first_family = nullptr;
    const EnsembleResult* first_sopp = nullptr;
    static std::vector<SyntheticFamily> families; // keep alive for criterion 6
    static std::vector<EnsembleResult> sopp_results;

    for (std::uint64_t seed : kNoisySeeds) {
        families.push_back(generate_family(noisy_spec(seed)));
        const SyntheticFamily& family = families.back();

        CombineConfig sopp_config;
        sopp_config.method = CombineMethod::sopp;
        sopp_config.threshold = 0.001;
        sopp_config.max_iterations = 200;
        sopp_results.push_back(combine(family.inputs, sopp_config));

        CombineConfig sols_config = sopp_config;
        sols_config.method = CombineMethod::sols;
        const EnsembleResult sols = combine(family.inputs, sols_config);

        outcomes.push_back(evaluate_seed(family, sopp_results.back(), sols));
    }
    first_family = &families.front();
    first_sopp = &sopp_results.front();

    // Criterion 3: ensemble beats the input mean on the planted tests.
    {
        int band_ok = 0, rank_wins = 0, hit1_wins = 0, hit10_wins = 0;
        double rank_gain = 0.0, hit1_gain = 0.0, hit10_gain = 0.0;
        for (const SeedOutcome& o : outcomes) {
            if (o.input_hit1 >= 0.3 && o.input_hit1 <= 0.7) ++band_ok;
            if (o.combined_mean_rank < o.input_mean_rank) ++rank_wins;
            if (o.combined_hit1 > o.input_hit1) ++hit1_wins;
            if (o.combined_hit10 > o.input_hit10) ++hit10_wins;
            rank_gain += (o.input_mean_rank - o.combined_mean_rank) / o.input_mean_rank;
            hit1_gain += (o.combined_hit1 - o.input_hit1) / o.input_hit1;
            hit10_gain += (o.combined_hit10 - o.input_hit10) / o.input_hit10;
        }
        rank_gain /= outcomes.size();
        hit1_gain /= outcomes.size();
        hit10_gain /= outcomes.size();
        const bool ok = band_ok == 5 && rank_wins == 5 && hit10_wins == 5 && hit1_wins >= 4 &&
                        rank_gain >= 0.05 && hit1_gain >= 0.05 && hit10_gain >= 0.05;
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "noise band %d/5, rank wins %d/5 (avg +%.0f%%), hit@1 wins %d/5 (avg "
                      "+%.0f%%), hit@10 wins %d/5 (avg +%.0f%%)",
                      band_ok, rank_wins, rank_gain * 100, hit1_wins, hit1_gain * 100, hit10_wins,
                      hit10_gain * 100);
        criterion(3, "ensemble beats the input mean", ok, buf);
    }

    // Criterion 4: SOPP converges fast, SOLS slower but safely.
    {
        bool ok = true;
        std::string detail;
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            const SeedOutcome& o = outcomes[i];
            detail += (i ? ", " : "") + std::to_string(o.sopp_iterations) + " vs " +
                      std::to_string(o.sols_iterations);
            if (o.sopp_iterations > 10 || o.sopp_iterations >= o.sols_iterations ||
                !o.sols_finite)
                ok = false;
        }
        criterion(4, "SOPP converges in fewer iterations than SOLS", ok,
                  "iterations (sopp vs sols): " + detail);
    }

    // Criterion 5: SOPP objective never increased on any run above.
    {
        bool ok = true;
        for (const SeedOutcome& o : outcomes) ok = ok && o.sopp_monotone;
        criterion(5, "SOPP objective is non-increasing", ok,
                  ok ? "held on all noisy-family runs" : "violated");
    }

    // Criterion 6: angles survive the SOPP translation, pairwise.
    {
        Rng rng(derive_seed(0xA6, 0));
        const Index n = first_family->ground_truth.size();
        double worst = 0.0;
        for (std::size_t i = 0; i < first_family->inputs.size(); ++i) {
            const Matrix& w = first_family->inputs[i].matrix();
            const Matrix t = kernels::matmul(w, first_sopp->projections[i]);
            for (int s = 0; s < 1000; ++s) {
                const Index a = static_cast<Index>(rng.uniform_below(static_cast<std::uint64_t>(n)));
                Index b = static_cast<Index>(rng.uniform_below(static_cast<std::uint64_t>(n)));
                if (a == b) b = (b + 1) % n;
                worst = std::max(worst, std::abs(kernels::cosine(w.row(a), w.row(b)) -
                                                 kernels::cosine(t.row(a), t.row(b))));
            }
        }
        criterion(6, "angle preservation under SOPP", worst <= 1e-9,
                  "max |cos(W) - cos(T)| = " + format_double(worst) + " over 1000 pairs x " +
                      std::to_string(first_family->inputs.size()) + " models");
    }
}

// ---- criterion 7 -----------------------------------------------------------

std::vector<std::string> brute_force_predict(const EmbeddingModel& m, const std::string& a,
                                             const std::string& b, const std::string& x,
                                             Index k) {
    const Index ia = *m.find(a), ib = *m.find(b), ix = *m.find(x);
    std::vector<double> q(static_cast<std::size_t>(m.dim()));
    for (Index j = 0; j < m.dim(); ++j)
        q[static_cast<std::size_t>(j)] = m.matrix()(ib, j) - m.matrix()(ia, j) + m.matrix()(ix, j);
    std::vector<std::pair<double, Index>> scored;
    for (Index w = 0; w < m.size(); ++w) {
        if (w == ia || w == ib || w == ix) continue;
        double d = 0.0, nn = 0.0, nq = 0.0;
        for (Index j = 0; j < m.dim(); ++j) {
            d += m.matrix()(w, j) * q[static_cast<std::size_t>(j)];
            nn += m.matrix()(w, j) * m.matrix()(w, j);
            nq += q[static_cast<std::size_t>(j)] * q[static_cast<std::size_t>(j)];
        }
        double c = d / (std::sqrt(nn) * std::sqrt(nq));
        c = std::min(1.0, std::max(-1.0, c));
        scored.emplace_back(c, w);
    }
    std::stable_sort(scored.begin(), scored.end(), [](const auto& l, const auto& r) {
        if (l.first != r.first) return l.first > r.first;
        return l.second < r.second;
    });
    std::vector<std::string> out;
    for (Index i = 0; i < std::min<Index>(k, static_cast<Index>(scored.size())); ++i)
        out.push_back(m.word(scored[static_cast<std::size_t>(i)].second));
    return out;
}

void run_harness_fidelity() {
    bool ok = true;
    std::string detail = "fixture + 50 oracle models";

    // Exact parallelogram with a planted nearest neighbor.
    const EmbeddingModel fixture({"man", "king", "woman", "queen", "twin", "far"},
                                 Matrix::of({{1, 0, 0},
                                             {1, 1, 0},
                                             {0.2, 0, 1},
                                             {0.2, 1, 1},
                                             {0.98, 0.01, 0.0},
                                             {-5, -5, -5}}));
    AnalogyDataset quartet{{{"man", "king", "woman", "queen", ""}}};
    if (run_analogy_test(fixture, quartet).hit_at_1 != 1.0) {
        ok = false;
        detail = "fixture analogy missed";
    }
    if (synonym_rank(fixture, "man", "twin") != 1) {
        ok = false;
        detail = "fixture synonym not rank 1";
    }

    for (std::uint64_t s = 0; s < 50 && ok; ++s) {
        Rng rng(derive_seed(0xF1D0, s));
        const Index n = 6 + static_cast<Index>(rng.uniform_below(25));
        const Index d = 2 + static_cast<Index>(rng.uniform_below(5));
        std::vector<std::string> words;
        for (Index i = 0; i < n; ++i) words.push_back("t" + std::to_string(i));
        const EmbeddingModel m(words, gaussian_matrix(rng, n, d));
        const Index k = std::min<Index>(10, n - 3);
        if (analogy_predict(m, m.word(0), m.word(1), m.word(2), k) !=
            brute_force_predict(m, m.word(0), m.word(1), m.word(2), k)) {
            ok = false;
            detail = "oracle mismatch at model " + std::to_string(s);
        }
    }
    criterion(7, "evaluation-harness fidelity", ok, detail);
}

// ---- criterion 8 -----------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string scrub(std::string json) {
    json = std::regex_replace(json, std::regex("\"timestamp_utc\": \"[^\"]*\""), "\"T\"");
    json = std::regex_replace(json, std::regex("\"duration_ms\": [0-9.e+-]+"), "\"D\"");
    return json;
}

void run_determinism() {
    bool ok = true;
    std::string detail = "two pipeline runs byte-identical; model round-trip exact";

    const auto root = std::filesystem::temp_directory_path() /
                      ("embens-acceptance-" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(root);

    auto pipeline = [&root](const std::string& tag) {
        const std::string fam = (root / ("fam" + tag)).string();
        const std::string combined = (root / ("c" + tag + ".vec")).string();
        int rc = run_cli({"synth", "--vocab-size", "300", "--dim", "12", "--models", "4",
                          "--noise-sigma", "0.03", "--seed", "2718", "--structure", "clustered",
                          "--clusters", "20", "--out-dir", fam});
        rc |= run_cli({"combine", fam + "/input01.vec", fam + "/input02.vec",
                       fam + "/input03.vec", fam + "/input04.vec", "--method", "sopp", "--out",
                       combined, "--residuals-csv", (root / ("r" + tag + ".csv")).string()});
        rc |= run_cli({"analyze", combined, fam + "/input01.vec", fam + "/input02.vec",
                       fam + "/input03.vec", fam + "/input04.vec", "--projections",
                       combined + ".manifest.json", "--pairs", "200", "--seed", "5",
                       "--scatter-csv", (root / ("s" + tag + ".csv")).string(), "--pairs-csv",
                       (root / ("p" + tag + ".csv")).string()});
        rc |= run_cli({"eval", "--model", combined, "--synonyms", fam + "/synonyms.tsv",
                       "--analogies", fam + "/analogies.tsv", "--report-csv",
                       (root / ("e" + tag + ".csv")).string()});
        return rc;
    };

    if (pipeline("A") != 0 || pipeline("B") != 0) {
        ok = false;
        detail = "pipeline command failed";
    } else {
        const std::vector<std::pair<std::string, std::string>> same_bytes = {
            {"famA/ground_truth.vec", "famB/ground_truth.vec"},
            {"famA/input03.vec", "famB/input03.vec"},
            {"cA.vec", "cB.vec"},
            {"rA.csv", "rB.csv"},
            {"sA.csv", "sB.csv"},
            {"pA.csv", "pB.csv"},
        };
        for (const auto& [a, b] : same_bytes)
            if (slurp(root / a) != slurp(root / b)) {
                ok = false;
                detail = a + " differs between runs";
                break;
            }
        if (ok) {
            std::string ea = std::regex_replace(slurp(root / "eA.csv"), std::regex("cA\\.vec"), "c");
            std::string eb = std::regex_replace(slurp(root / "eB.csv"), std::regex("cB\\.vec"), "c");
            if (ea != eb) {
                ok = false;
                detail = "eval CSV differs between runs";
            }
        }
        if (ok) {
            std::string ma = scrub(slurp(root / "cA.vec.manifest.json"));
            std::string mb = scrub(slurp(root / "cB.vec.manifest.json"));
            ma = std::regex_replace(ma, std::regex("famA|cA|rA"), "X");
            mb = std::regex_replace(mb, std::regex("famB|cB|rB"), "X");
            if (ma != mb) {
                ok = false;
                detail = "combine manifest differs beyond timestamp/duration";
            }
        }
        if (ok) {
            const EmbeddingModel a = load_model(root / "famA" / "input01.vec");
            save_model(a, root / "roundtrip.vec");
            const EmbeddingModel b = load_model(root / "roundtrip.vec");
            if (a.words() != b.words() || max_abs_diff(a.matrix(), b.matrix()) > 1e-6) {
                ok = false;
                detail = "model round-trip drifted beyond 1e-6";
            }
        }
    }
    std::error_code ec;
    std::filesystem::remove_all(root, ec);
    criterion(8, "determinism and round-trips", ok, detail);
}

// ---- criterion 9 -----------------------------------------------------------

void run_invariance() {
    bool ok = true;
    std::string detail = "orthogonal-transform and permutation invariance held";

    // Reports are unchanged when the model is rotated as a whole.
    SyntheticSpec spec;
    spec.vocab_size = 300;
    spec.dim = 12;
    spec.n_models = 2;
    spec.noise_sigma = 0.02;
    spec.seed = 31415;
    spec.structure = SyntheticStructure::clustered;
    spec.clustered.n_clusters = 20;
    const SyntheticFamily family = generate_family(spec);
    const EmbeddingModel& base = family.inputs[0];

    Rng rot_rng(derive_seed(0xAA, 1));
    const Matrix r = random_orthogonal(rot_rng, base.dim());
    const EmbeddingModel rotated(base.words(), kernels::matmul(base.matrix(), r));

    const SynonymReport s0 = run_synonym_test(base, family.planted_synonyms, 1000);
    const SynonymReport s1 = run_synonym_test(rotated, family.planted_synonyms, 1000);
    if (std::abs(s0.mean_rank - s1.mean_rank) > 1e-9) ok = false;
    for (std::size_t i = 0; ok && i < s0.entries.size(); ++i)
        if (s0.entries[i].rank != s1.entries[i].rank) ok = false;

    const AnalogyReport a0 = run_analogy_test(base, family.planted_analogies);
    const AnalogyReport a1 = run_analogy_test(rotated, family.planted_analogies);
    if (std::abs(a0.hit_at_1 - a1.hit_at_1) > 1e-9 ||
        std::abs(a0.hit_at_10 - a1.hit_at_10) > 1e-9)
        ok = false;
    for (std::size_t i = 0; ok && i < a0.per_quartet.size(); ++i)
        if (a0.per_quartet[i].predicted != a1.per_quartet[i].predicted) ok = false;
    if (!ok) detail = "reports changed under a common orthogonal transform";

    // Residual history is invariant under one shared row permutation.
    if (ok) {
        const Index n = family.ground_truth.size();
        std::vector<Index> perm(static_cast<std::size_t>(n));
        for (Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
        Rng shuffle_rng(derive_seed(0xAB, 2));
        for (Index i = n - 1; i > 0; --i)
            std::swap(perm[static_cast<std::size_t>(i)],
                      perm[static_cast<std::size_t>(
                          shuffle_rng.uniform_below(static_cast<std::uint64_t>(i + 1)))]);

        std::vector<std::string> pwords(static_cast<std::size_t>(n));
        for (Index i = 0; i < n; ++i)
            pwords[static_cast<std::size_t>(i)] =
                family.ground_truth.word(perm[static_cast<std::size_t>(i)]);

        std::vector<EmbeddingModel> permuted;
        for (const EmbeddingModel& m : family.inputs) {
            Matrix pm(n, m.dim());
            for (Index i = 0; i < n; ++i)
                for (Index j = 0; j < m.dim(); ++j)
                    pm(i, j) = m.matrix()(perm[static_cast<std::size_t>(i)], j);
            permuted.emplace_back(pwords, std::move(pm));
        }

        CombineConfig config;
        config.method = CombineMethod::sopp;
        config.threshold = 1e-6;
        const EnsembleResult plain = combine(family.inputs, config);
        const EnsembleResult shuffled = combine(permuted, config);
        if (plain.residual_history.size() != shuffled.residual_history.size()) {
            ok = false;
            detail = "iteration counts differ under permutation";
        } else {
            for (std::size_t t = 0; t < plain.residual_history.size(); ++t)
                if (std::abs(plain.residual_history[t] - shuffled.residual_history[t]) > 1e-9) {
                    ok = false;
                    detail = "residual history changed under permutation";
                    break;
                }
        }
    }
    criterion(9, "invariance suite", ok, detail);
}

} // namespace

int main() {
    run_solver_correctness();
    run_exact_recovery();
    run_noisy_family_criteria();
    run_harness_fidelity();
    run_determinism();
    run_invariance();

    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return 1;
}
