#include "embens/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "embens/errors.hpp"
#include "embens/kernels.hpp"

namespace embens {

namespace {

// Similarity scans map NaN (zero-norm rows) to a sentinel below any real
// cosine so ordering stays total and deterministic.
constexpr double kLowestSimilarity = -2.0;

std::vector<double> similarity_to(const EmbeddingModel& model, std::span<const double> query) {
    std::vector<double> sims = kernels::cosine_scan(model.matrix(), query);
    for (double& s : sims)
        if (std::isnan(s)) s = kLowestSimilarity;
    return sims;
}

Index require_token(const EmbeddingModel& model, std::string_view token, const char* role) {
    auto idx = model.find(token);
    if (!idx)
        throw data_error(std::string(role) + " token '" + std::string(token) +
                         "' is not in the vocabulary");
    return *idx;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        std::size_t next = line.find('\t', pos);
        if (next == std::string::npos) next = line.size();
        out.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

[[noreturn]] void dataset_fail(const std::filesystem::path& path, std::size_t line,
                               const std::string& msg) {
    std::ostringstream os;
    os << path.string() << ":" << line << ": " << msg;
    throw parse_error(os.str());
}

template <typename LineSink>
void read_dataset_lines(const std::filesystem::path& path, LineSink&& sink) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        sink(line, lineno);
    }
    if (in.bad()) throw io_error("read failure on " + path.string());
}

} // namespace

SynonymDataset load_synonym_dataset(const std::filesystem::path& path) {
    SynonymDataset data;
    read_dataset_lines(path, [&](const std::string& line, std::size_t lineno) {
        auto fields = split_tabs(line);
        if (fields.size() != 2) dataset_fail(path, lineno, "expected 'query<TAB>synonym'");
        if (fields[0].empty() || fields[1].empty()) dataset_fail(path, lineno, "empty token");
        if (fields[0] == fields[1])
            dataset_fail(path, lineno, "query and synonym must differ");
        data.pairs.push_back({std::move(fields[0]), std::move(fields[1])});
    });
    return data;
}

void save_synonym_dataset(const SynonymDataset& data, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");
    for (const SynonymPair& p : data.pairs) out << p.query << '\t' << p.synonym << '\n';
    out.flush();
    if (!out) throw io_error("write failure on " + path.string());
}

AnalogyDataset load_analogy_dataset(const std::filesystem::path& path) {
    AnalogyDataset data;
    read_dataset_lines(path, [&](const std::string& line, std::size_t lineno) {
        auto fields = split_tabs(line);
        if (fields.size() != 4 && fields.size() != 5)
            dataset_fail(path, lineno, "expected 'a<TAB>b<TAB>x<TAB>y[<TAB>category]'");
        for (std::size_t i = 0; i < 4; ++i)
            if (fields[i].empty()) dataset_fail(path, lineno, "empty token");
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j)
                if (fields[i] == fields[j])
                    dataset_fail(path, lineno, "quartet tokens must be distinct ('" + fields[i] + "')");
        AnalogyQuartet q{std::move(fields[0]), std::move(fields[1]), std::move(fields[2]),
                         std::move(fields[3]), fields.size() == 5 ? std::move(fields[4]) : ""};
        data.quartets.push_back(std::move(q));
    });
    return data;
}

void save_analogy_dataset(const AnalogyDataset& data, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");
    for (const AnalogyQuartet& q : data.quartets) {
        out << q.a << '\t' << q.b << '\t' << q.x << '\t' << q.y;
        if (!q.category.empty()) out << '\t' << q.category;
        out << '\n';
    }
    out.flush();
    if (!out) throw io_error("write failure on " + path.string());
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
    const double c = kernels::cosine(u, v);
    if (std::isnan(c)) throw data_error("cosine_similarity: zero vector");
    return c;
}

Index synonym_rank(const EmbeddingModel& model, std::string_view query, std::string_view target) {
    const Index qi = require_token(model, query, "query");
    const Index ti = require_token(model, target, "target");
    if (qi == ti) throw data_error("query and target are the same word");
    if (kernels::norm(model.vector_of(qi)) == 0.0)
        throw data_error("query word has a zero vector");

    const std::vector<double> sims = similarity_to(model, model.vector_of(qi));
    const double st = sims[static_cast<std::size_t>(ti)];
    Index rank = 1;
    for (Index w = 0; w < model.size(); ++w) {
        if (w == qi || w == ti) continue;
        const double sw = sims[static_cast<std::size_t>(w)];
        if (sw > st || (sw == st && w < ti)) ++rank;
    }
    return rank;
}

SynonymReport run_synonym_test(const EmbeddingModel& model, const SynonymDataset& data,
                               Index top_n, const HistogramSpec& bins) {
    if (top_n < 1) throw usage_error("top_n must be at least 1");

    SynonymReport report;
    report.bins = bins;
    report.histogram.assign(bins.bin_count(), 0);

    // Separate out-of-vocabulary pairs, then order the rest by the query's
    // row index (most frequent first) and keep the top_n.
    struct Candidate {
        std::size_t pair_index;
        Index query_row;
    };
    std::vector<Candidate> candidates;
    for (std::size_t p = 0; p < data.pairs.size(); ++p) {
        const SynonymPair& pair = data.pairs[p];
        const auto qi = model.find(pair.query);
        const auto ti = model.find(pair.synonym);
        if (!qi || !ti) {
            std::string reason = !qi ? "query out of vocabulary" : "synonym out of vocabulary";
            report.entries.push_back({pair, std::nullopt, std::move(reason)});
            ++report.skipped_count;
            continue;
        }
        candidates.push_back({p, *qi});
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.query_row < b.query_row; });
    if (static_cast<Index>(candidates.size()) > top_n)
        candidates.resize(static_cast<std::size_t>(top_n));

    double rank_sum = 0.0;
    for (const Candidate& c : candidates) {
        const SynonymPair& pair = data.pairs[c.pair_index];
        const Index rank = synonym_rank(model, pair.query, pair.synonym);
        report.entries.push_back({pair, rank, ""});
        report.histogram[bins.bin_for(rank)] += 1;
        rank_sum += static_cast<double>(rank);
        ++report.evaluated_count;
    }

    if (report.evaluated_count == 0)
        throw data_error("synonym test: no pair could be evaluated");
    report.mean_rank = rank_sum / static_cast<double>(report.evaluated_count);
    return report;
}

std::vector<std::string> analogy_predict(const EmbeddingModel& model, std::string_view a,
                                         std::string_view b, std::string_view x, Index k) {
    if (k < 1) throw usage_error("k must be at least 1");
    const Index ia = require_token(model, a, "a");
    const Index ib = require_token(model, b, "b");
    const Index ix = require_token(model, x, "x");

    const Index d = model.dim();
    std::vector<double> query(static_cast<std::size_t>(d));
    const auto va = model.vector_of(ia);
    const auto vb = model.vector_of(ib);
    const auto vx = model.vector_of(ix);
    for (Index j = 0; j < d; ++j)
        query[static_cast<std::size_t>(j)] = vb[static_cast<std::size_t>(j)] -
                                             va[static_cast<std::size_t>(j)] +
                                             vx[static_cast<std::size_t>(j)];
    if (kernels::norm(query) == 0.0)
        throw data_error("analogy query vector w_b - w_a + w_x is zero");

    const std::vector<double> sims = similarity_to(model, query);

    std::vector<Index> order;
    order.reserve(sims.size());
    for (Index w = 0; w < model.size(); ++w) {
        if (w == ia || w == ib || w == ix) continue;
        order.push_back(w);
    }
    const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(k), order.size());
    const auto better = [&sims](Index lhs, Index rhs) {
        const double sl = sims[static_cast<std::size_t>(lhs)];
        const double sr = sims[static_cast<std::size_t>(rhs)];
        if (sl != sr) return sl > sr;
        return lhs < rhs;
    };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep),
                      order.end(), better);
    order.resize(keep);

    std::vector<std::string> tokens;
    tokens.reserve(order.size());
    for (Index w : order) tokens.push_back(model.word(w));
    return tokens;
}

AnalogyReport run_analogy_test(const EmbeddingModel& model, const AnalogyDataset& data) {
    AnalogyReport report;
    Index hits1 = 0, hits10 = 0;
    struct CatAcc {
        Index n = 0, h1 = 0, h10 = 0;
    };
    std::map<std::string, CatAcc> cats;

    for (const AnalogyQuartet& q : data.quartets) {
        AnalogyEntry entry;
        entry.quartet = q;
        std::vector<std::string_view> missing;
        for (const std::string* tok : {&q.a, &q.b, &q.x, &q.y})
            if (!model.find(*tok)) missing.push_back(*tok);
        if (!missing.empty()) {
            entry.skipped = true;
            entry.skip_reason = "token '" + std::string(missing.front()) + "' out of vocabulary";
            ++report.skipped_count;
            report.per_quartet.push_back(std::move(entry));
            continue;
        }

        const Index k = std::min<Index>(10, model.size() - 3);
        entry.predicted = analogy_predict(model, q.a, q.b, q.x, k);
        entry.hit1 = !entry.predicted.empty() && entry.predicted.front() == q.y;
        entry.hit10 = std::find(entry.predicted.begin(), entry.predicted.end(), q.y) !=
                      entry.predicted.end();
        hits1 += entry.hit1 ? 1 : 0;
        hits10 += entry.hit10 ? 1 : 0;
        ++report.evaluated_count;
        if (!q.category.empty()) {
            CatAcc& acc = cats[q.category];
            ++acc.n;
            acc.h1 += entry.hit1 ? 1 : 0;
            acc.h10 += entry.hit10 ? 1 : 0;
        }
        report.per_quartet.push_back(std::move(entry));
    }

    if (report.evaluated_count == 0)
        throw data_error("analogy test: no quartet could be evaluated");
    report.hit_at_1 = static_cast<double>(hits1) / static_cast<double>(report.evaluated_count);
    report.hit_at_10 = static_cast<double>(hits10) / static_cast<double>(report.evaluated_count);
    for (const auto& [name, acc] : cats)
        report.by_category[name] = {acc.n, static_cast<double>(acc.h1) / acc.n,
                                    static_cast<double>(acc.h10) / acc.n};
    return report;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void write_eval_csv_header(std::ostream& out) {
    out << "model,test,w1,w2,w3,w4,status,rank,hit1,hit10,predicted\n";
}

void write_synonym_csv_rows(std::ostream& out, const std::string& model_name,
                            const SynonymReport& report) {
    for (const SynonymEntry& e : report.entries) {
        out << csv_field(model_name) << ",synonym," << csv_field(e.pair.query) << ','
            << csv_field(e.pair.synonym) << ",,,";
        if (e.rank)
            out << "ok," << *e.rank << ",,,";
        else
            out << csv_field(e.skip_reason) << ",,,,";
        out << '\n';
    }
}

void write_analogy_csv_rows(std::ostream& out, const std::string& model_name,
                            const AnalogyReport& report) {
    for (const AnalogyEntry& e : report.per_quartet) {
        out << csv_field(model_name) << ",analogy," << csv_field(e.quartet.a) << ','
            << csv_field(e.quartet.b) << ',' << csv_field(e.quartet.x) << ','
            << csv_field(e.quartet.y) << ',';
        if (e.skipped) {
            out << csv_field(e.skip_reason) << ",,,,\n";
            continue;
        }
        std::string joined;
        for (std::size_t i = 0; i < e.predicted.size(); ++i) {
            if (i) joined += ' ';
            joined += e.predicted[i];
        }
        out << "ok,," << (e.hit1 ? 1 : 0) << ',' << (e.hit10 ? 1 : 0) << ',' << csv_field(joined)
            << '\n';
    }
}

} // namespace embens
