#include "embens/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "embens/alignment.hpp"
#include "embens/analysis.hpp"
#include "embens/errors.hpp"
#include "embens/evaluation.hpp"
#include "embens/manifest.hpp"
#include "embens/model.hpp"
#include "embens/synthetic.hpp"
#include "embens/version.hpp"

namespace embens {

namespace {

namespace fs = std::filesystem;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string two_digit(std::size_t i) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%02zu", i);
    return buf;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw io_error("write failure on " + path.string());
}

struct CombineOptions {
    std::vector<std::string> inputs;
    std::string method = "sopp";
    double threshold = 1e-3;
    Index max_iters = 200;
    std::string init = "mean";
    std::string out;
    std::string residuals_csv;
    std::string manifest;
};

int cmd_combine(const CombineOptions& opt) {
    const auto start = Clock::now();
    if (!(opt.threshold > 0.0)) throw usage_error("--threshold must be > 0");
    if (opt.max_iters < 1) throw usage_error("--max-iters must be >= 1");

    CombineConfig config;
    config.method = combine_method_from_string(opt.method);
    config.threshold = opt.threshold;
    config.max_iterations = opt.max_iters;
    if (opt.init == "mean")
        config.init = InitRule::mean_of_inputs;
    else if (opt.init == "first")
        config.init = InitRule::first_model;
    else
        throw usage_error("--init must be 'mean' or 'first'");

    std::vector<EmbeddingModel> models;
    models.reserve(opt.inputs.size());
    for (const std::string& path : opt.inputs) models.push_back(load_model(path));

    auto [alignment, aligned] = align_vocabularies(models);
    for (std::size_t i = 0; i < aligned.size(); ++i)
        if (alignment.dropped_per_model[i] > 0)
            std::cerr << "warning: " << opt.inputs[i] << ": dropped "
                      << alignment.dropped_per_model[i] << " tokens outside the shared vocabulary\n";

    const EnsembleResult result = combine(aligned, config);

    save_model(result.combined, opt.out);
    std::vector<std::string> projection_files;
    for (std::size_t i = 0; i < result.projections.size(); ++i) {
        const std::string p = opt.out + ".proj" + two_digit(i + 1) + ".txt";
        save_matrix_text(result.projections[i], p);
        projection_files.push_back(p);
    }

    if (!opt.residuals_csv.empty()) {
        std::ostringstream csv;
        write_residual_csv(csv, result);
        write_text_file(opt.residuals_csv, csv.str());
    }

    RunManifest manifest;
    manifest.command = "combine";
    manifest.config = {
        {"method", to_string(result.method)},
        {"threshold", result.threshold},
        {"max_iterations", opt.max_iters},
        {"init", opt.init},
        {"iterations", result.iterations},
        {"converged", result.converged},
        {"final_residual", result.residual_history.back()},
        {"shared_vocabulary", result.combined.size()},
        {"dim", result.combined.dim()},
        {"projection_files", projection_files},
    };
    for (const std::string& path : opt.inputs)
        manifest.inputs.push_back({path, fnv1a64_file(path)});
    manifest.outputs.push_back(opt.out);
    for (const std::string& p : projection_files) manifest.outputs.push_back(p);
    if (!opt.residuals_csv.empty()) manifest.outputs.push_back(opt.residuals_csv);
    manifest.timestamp_utc = utc_timestamp_now();
    manifest.duration_ms = ms_since(start);
    const std::string manifest_path =
        opt.manifest.empty() ? opt.out + ".manifest.json" : opt.manifest;
    write_manifest(manifest, manifest_path);

    std::cout << "combined " << aligned.size() << " models over " << result.combined.size()
              << " shared words (d=" << result.combined.dim() << ") with " << to_string(result.method)
              << " in " << result.iterations << " iterations ("
              << (result.converged ? "converged" : "iteration cap") << "), final residual "
              << format_double(result.residual_history.back()) << "\n";

    return result.converged ? kExitOk : kExitNoConvergence;
}

struct EvalOptions {
    std::vector<std::string> models;
    std::string synonyms;
    std::string analogies;
    Index top_n = 1000;
    std::string report_csv;
    std::string manifest;
};

int cmd_eval(const EvalOptions& opt) {
    const auto start = Clock::now();
    if (opt.synonyms.empty() && opt.analogies.empty())
        throw usage_error("nothing to evaluate: pass --synonyms and/or --analogies");
    if (opt.top_n < 1) throw usage_error("--top-n must be >= 1");

    SynonymDataset synonyms;
    AnalogyDataset analogies;
    if (!opt.synonyms.empty()) synonyms = load_synonym_dataset(opt.synonyms);
    if (!opt.analogies.empty()) analogies = load_analogy_dataset(opt.analogies);

    std::ostringstream csv;
    write_eval_csv_header(csv);

    // Summary table mirrors the usual reporting layout: one row per model,
    // synonym metrics first, analogy metrics second.
    std::printf("%-28s %12s %9s %9s %8s %8s %9s %9s\n", "model", "mean_rank", "syn_eval",
                "syn_skip", "hit@1", "hit@10", "ana_eval", "ana_skip");
    for (const std::string& path : opt.models) {
        const EmbeddingModel model = load_model(path);
        std::string mean_rank = "-", syn_eval = "-", syn_skip = "-";
        std::string hit1 = "-", hit10 = "-", ana_eval = "-", ana_skip = "-";
        if (!opt.synonyms.empty()) {
            const SynonymReport report = run_synonym_test(model, synonyms, opt.top_n);
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.2f", report.mean_rank);
            mean_rank = buf;
            syn_eval = std::to_string(report.evaluated_count);
            syn_skip = std::to_string(report.skipped_count);
            write_synonym_csv_rows(csv, path, report);
        }
        if (!opt.analogies.empty()) {
            const AnalogyReport report = run_analogy_test(model, analogies);
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.3f", report.hit_at_1);
            hit1 = buf;
            std::snprintf(buf, sizeof(buf), "%.3f", report.hit_at_10);
            hit10 = buf;
            ana_eval = std::to_string(report.evaluated_count);
            ana_skip = std::to_string(report.skipped_count);
            write_analogy_csv_rows(csv, path, report);
        }
        std::printf("%-28s %12s %9s %9s %8s %8s %9s %9s\n", path.c_str(), mean_rank.c_str(),
                    syn_eval.c_str(), syn_skip.c_str(), hit1.c_str(), hit10.c_str(),
                    ana_eval.c_str(), ana_skip.c_str());
    }

    if (!opt.report_csv.empty()) write_text_file(opt.report_csv, csv.str());

    const std::string manifest_path =
        !opt.manifest.empty() ? opt.manifest
                              : (!opt.report_csv.empty() ? opt.report_csv + ".manifest.json" : "");
    if (!manifest_path.empty()) {
        RunManifest manifest;
        manifest.command = "eval";
        manifest.config = {{"top_n", opt.top_n},
                           {"synonyms", opt.synonyms},
                           {"analogies", opt.analogies}};
        for (const std::string& path : opt.models)
            manifest.inputs.push_back({path, fnv1a64_file(path)});
        if (!opt.synonyms.empty()) manifest.inputs.push_back({opt.synonyms, fnv1a64_file(opt.synonyms)});
        if (!opt.analogies.empty())
            manifest.inputs.push_back({opt.analogies, fnv1a64_file(opt.analogies)});
        if (!opt.report_csv.empty()) manifest.outputs.push_back(opt.report_csv);
        manifest.timestamp_utc = utc_timestamp_now();
        manifest.duration_ms = ms_since(start);
        write_manifest(manifest, manifest_path);
    }
    return kExitOk;
}

struct AnalyzeOptions {
    std::string combined;
    std::vector<std::string> inputs;
    std::string projections; // manifest written by `combine`
    Index pairs = 1000;
    std::uint64_t seed = 0;
    std::string scatter_csv;
    std::string pairs_csv;
    bool translated = false;
    std::string manifest;
};

ProjectionSet load_projections_from_manifest(const fs::path& manifest_path) {
    std::ifstream in(manifest_path, std::ios::binary);
    if (!in) throw io_error("cannot open " + manifest_path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(manifest_path.string() + ": not valid JSON (" + e.what() + ")");
    }
    if (!doc.contains("config") || !doc["config"].contains("projection_files"))
        throw parse_error(manifest_path.string() + ": no config.projection_files entry");

    ProjectionSet set;
    for (const auto& entry : doc["config"]["projection_files"]) {
        fs::path p = entry.get<std::string>();
        if (p.is_relative() && manifest_path.has_parent_path()) {
            const fs::path sibling = manifest_path.parent_path() / p.filename();
            if (!fs::exists(p) && fs::exists(sibling)) p = sibling;
        }
        set.projections.push_back(load_matrix_text(p));
    }
    if (set.projections.empty())
        throw data_error(manifest_path.string() + ": empty projection list");
    return set;
}

int cmd_analyze(const AnalyzeOptions& opt) {
    const auto start = Clock::now();
    if (opt.scatter_csv.empty() && opt.pairs_csv.empty())
        throw usage_error("nothing to do: pass --scatter-csv and/or --pairs-csv");
    if (opt.pairs < 1) throw usage_error("--pairs must be >= 1");

    const EmbeddingModel combined = load_model(opt.combined);
    std::vector<EmbeddingModel> inputs;
    inputs.reserve(opt.inputs.size());
    for (const std::string& path : opt.inputs) inputs.push_back(load_model(path));

    // Inputs may still carry their full vocabularies; reduce them to the
    // shared one the combiner used and require an exact match.
    bool same_vocab = true;
    for (const EmbeddingModel& m : inputs)
        if (m.words() != combined.words()) same_vocab = false;
    if (!same_vocab) {
        if (inputs.size() < 2)
            throw data_error("input model vocabulary differs from the combined model");
        auto [alignment, aligned] = align_vocabularies(inputs);
        if (alignment.shared_words != combined.words())
            throw data_error("shared vocabulary of the inputs does not match the combined model");
        inputs = std::move(aligned);
    }

    const ProjectionSet projections = load_projections_from_manifest(opt.projections);

    std::vector<std::string> outputs;
    if (!opt.scatter_csv.empty()) {
        const ScatterReport report = scatter_distances(combined, projections, inputs);
        std::ostringstream os;
        write_scatter_csv(os, report);
        write_text_file(opt.scatter_csv, os.str());
        outputs.push_back(opt.scatter_csv);
    }
    if (!opt.pairs_csv.empty()) {
        const PairSimilarityReport report = sample_pair_similarities(
            combined, projections, inputs, opt.pairs, opt.seed, opt.translated);
        std::ostringstream os;
        write_pair_similarity_csv(os, report);
        write_text_file(opt.pairs_csv, os.str());
        outputs.push_back(opt.pairs_csv);
    }

    RunManifest manifest;
    manifest.command = "analyze";
    manifest.config = {{"pairs", opt.pairs},
                       {"seed", opt.seed},
                       {"translated_spaces", opt.translated},
                       {"projections_manifest", opt.projections}};
    manifest.inputs.push_back({opt.combined, fnv1a64_file(opt.combined)});
    for (const std::string& path : opt.inputs)
        manifest.inputs.push_back({path, fnv1a64_file(path)});
    manifest.outputs = outputs;
    manifest.timestamp_utc = utc_timestamp_now();
    manifest.duration_ms = ms_since(start);
    const std::string manifest_path = !opt.manifest.empty()
                                          ? opt.manifest
                                          : outputs.front() + ".manifest.json";
    write_manifest(manifest, manifest_path);
    return kExitOk;
}

struct SynthOptions {
    Index vocab_size = 1000;
    Index dim = 20;
    Index n_models = 2;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
    std::string structure = "flat";
    Index clusters = 20;
    double spread = 0.3;
    std::string out_dir;
    std::string manifest;
};

int cmd_synth(const SynthOptions& opt) {
    const auto start = Clock::now();
    SyntheticSpec spec;
    spec.vocab_size = opt.vocab_size;
    spec.dim = opt.dim;
    spec.n_models = opt.n_models;
    spec.noise_sigma = opt.noise_sigma;
    spec.seed = opt.seed;
    if (opt.structure == "flat")
        spec.structure = SyntheticStructure::flat;
    else if (opt.structure == "clustered")
        spec.structure = SyntheticStructure::clustered;
    else
        throw usage_error("--structure must be 'flat' or 'clustered'");
    spec.clustered.n_clusters = opt.clusters;
    spec.clustered.spread = opt.spread;

    if (spec.vocab_size <= spec.dim)
        std::cerr << "warning: vocab_size <= dim makes the family rank-deficient for regression\n";

    const SyntheticFamily family = generate_family(spec);

    const fs::path dir = opt.out_dir;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw io_error("cannot create directory " + dir.string() + ": " + ec.message());

    std::vector<std::string> outputs;
    auto emit = [&outputs](const fs::path& p) { outputs.push_back(p.string()); };

    save_model(family.ground_truth, dir / "ground_truth.vec");
    emit(dir / "ground_truth.vec");
    std::vector<std::string> input_files;
    for (std::size_t i = 0; i < family.inputs.size(); ++i) {
        const fs::path p = dir / ("input" + two_digit(i + 1) + ".vec");
        save_model(family.inputs[i], p);
        emit(p);
        input_files.push_back(p.string());
    }
    for (std::size_t i = 0; i < family.rotations.size(); ++i) {
        const fs::path p = dir / ("rotation" + two_digit(i + 1) + ".txt");
        save_matrix_text(family.rotations[i], p);
        emit(p);
    }
    if (spec.structure == SyntheticStructure::clustered) {
        save_synonym_dataset(family.planted_synonyms, dir / "synonyms.tsv");
        emit(dir / "synonyms.tsv");
        save_analogy_dataset(family.planted_analogies, dir / "analogies.tsv");
        emit(dir / "analogies.tsv");
    }

    RunManifest manifest;
    manifest.command = "synth";
    manifest.config = {{"vocab_size", spec.vocab_size},
                       {"dim", spec.dim},
                       {"n_models", spec.n_models},
                       {"noise_sigma", spec.noise_sigma},
                       {"seed", spec.seed},
                       {"structure", opt.structure},
                       {"n_clusters", spec.clustered.n_clusters},
                       {"spread", spec.clustered.spread},
                       {"input_files", input_files}};
    manifest.outputs = outputs;
    manifest.timestamp_utc = utc_timestamp_now();
    manifest.duration_ms = ms_since(start);
    const std::string manifest_path =
        opt.manifest.empty() ? (dir / "manifest.json").string() : opt.manifest;
    write_manifest(manifest, manifest_path);

    std::cout << "wrote " << outputs.size() << " files to " << dir.string() << "\n";
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"embens: combine word embedding models into an ensemble and evaluate them"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    CombineOptions combine_opt;
    CLI::App* combine = app.add_subcommand(
        "combine", "Iteratively align >=2 models into one combined model");
    combine->add_option("inputs", combine_opt.inputs, "input model files (.vec)")
        ->required()
        ->expected(2, -1);
    combine->add_option("--method", combine_opt.method, "sols or sopp")
        ->check(CLI::IsMember({"sols", "sopp"}));
    combine->add_option("--threshold", combine_opt.threshold,
                        "stop when the residual change drops below this");
    combine->add_option("--max-iters", combine_opt.max_iters, "iteration cap");
    combine->add_option("--init", combine_opt.init, "Y initialization: mean or first")
        ->check(CLI::IsMember({"mean", "first"}));
    combine->add_option("--out", combine_opt.out, "combined model output path")->required();
    combine->add_option("--residuals-csv", combine_opt.residuals_csv,
                        "write per-iteration residuals here");
    combine->add_option("--manifest", combine_opt.manifest,
                        "manifest path (default: <out>.manifest.json)");

    EvalOptions eval_opt;
    CLI::App* eval = app.add_subcommand("eval", "Synonym-rank and analogy tests for models");
    eval->add_option("--model", eval_opt.models, "model file; repeat for several models")
        ->required();
    eval->add_option("--synonyms", eval_opt.synonyms, "synonym pairs file (query<TAB>synonym)");
    eval->add_option("--analogies", eval_opt.analogies, "analogy quartets file");
    eval->add_option("--top-n", eval_opt.top_n, "evaluate the N most frequent synonym pairs");
    eval->add_option("--report-csv", eval_opt.report_csv, "per-item CSV dump");
    eval->add_option("--manifest", eval_opt.manifest, "manifest path");

    AnalyzeOptions analyze_opt;
    CLI::App* analyze = app.add_subcommand(
        "analyze", "Scatter and pair-similarity reports for a combined model");
    analyze->add_option("combined", analyze_opt.combined, "combined model file")->required();
    analyze->add_option("inputs", analyze_opt.inputs, "the input model files")
        ->required()
        ->expected(1, -1);
    analyze->add_option("--projections", analyze_opt.projections,
                        "manifest written by `combine` (locates projection files)")
        ->required();
    analyze->add_option("--pairs", analyze_opt.pairs, "number of sampled word pairs");
    analyze->add_option("--seed", analyze_opt.seed, "pair sampling seed");
    analyze->add_option("--scatter-csv", analyze_opt.scatter_csv, "scatter report output");
    analyze->add_option("--pairs-csv", analyze_opt.pairs_csv, "pair similarity report output");
    analyze->add_flag("--translated", analyze_opt.translated,
                      "measure input similarities in the translated spaces");
    analyze->add_option("--manifest", analyze_opt.manifest, "manifest path");

    SynthOptions synth_opt;
    CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic model family");
    synth->add_option("--vocab-size", synth_opt.vocab_size, "words per model");
    synth->add_option("--dim", synth_opt.dim, "vector dimensionality");
    synth->add_option("--models", synth_opt.n_models, "number of input models");
    synth->add_option("--noise-sigma", synth_opt.noise_sigma, "per-entry Gaussian noise scale");
    synth->add_option("--seed", synth_opt.seed, "family seed");
    synth->add_option("--structure", synth_opt.structure, "flat or clustered")
        ->check(CLI::IsMember({"flat", "clustered"}));
    synth->add_option("--clusters", synth_opt.clusters, "clusters hosting planted structures");
    synth->add_option("--spread", synth_opt.spread, "intra-cluster offset scale");
    synth->add_option("--out-dir", synth_opt.out_dir, "output directory")->required();
    synth->add_option("--manifest", synth_opt.manifest,
                      "manifest path (default: <out-dir>/manifest.json)");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("embens");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (combine->parsed()) return cmd_combine(combine_opt);
        if (eval->parsed()) return cmd_eval(eval_opt);
        if (analyze->parsed()) return cmd_analyze(analyze_opt);
        return cmd_synth(synth_opt);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const solver_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const error& e) { // io/parse/data
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace embens
