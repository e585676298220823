#ifndef EMBENS_EVALUATION_HPP
#define EMBENS_EVALUATION_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "embens/model.hpp"

namespace embens {

struct SynonymPair {
    std::string query;
    std::string synonym;
};

// One pair per line: "query<TAB>synonym". Lines starting with '#' are
// comments. Duplicate pairs are allowed; query == synonym is rejected.
struct SynonymDataset {
    std::vector<SynonymPair> pairs;
};

struct AnalogyQuartet {
    std::string a, b, x, y;
    std::string category; // optional, empty when absent
};

// One quartet per line: "a<TAB>b<TAB>x<TAB>y[<TAB>category]".
// The four tokens must be distinct.
struct AnalogyDataset {
    std::vector<AnalogyQuartet> quartets;
};

SynonymDataset load_synonym_dataset(const std::filesystem::path& path);
void save_synonym_dataset(const SynonymDataset& data, const std::filesystem::path& path);
AnalogyDataset load_analogy_dataset(const std::filesystem::path& path);
void save_analogy_dataset(const AnalogyDataset& data, const std::filesystem::path& path);

// Rank histogram layout: bins of bin_width ranks up to overflow_min, then
// one overflow bin for every rank above it.
struct HistogramSpec {
    Index bin_width = 10;
    Index overflow_min = 100000;

    std::size_t bin_count() const {
        return static_cast<std::size_t>(overflow_min / bin_width) + 1;
    }
    std::size_t bin_for(Index rank) const {
        const Index b = (rank - 1) / bin_width;
        const Index last = overflow_min / bin_width;
        return static_cast<std::size_t>(b < last ? b : last);
    }
};

struct SynonymEntry {
    SynonymPair pair;
    std::optional<Index> rank; // empty when skipped
    std::string skip_reason;   // set when skipped
};

struct SynonymReport {
    std::vector<SynonymEntry> entries;
    double mean_rank = 0.0; // over evaluated pairs
    Index evaluated_count = 0;
    Index skipped_count = 0;
    HistogramSpec bins;
    std::vector<std::uint64_t> histogram; // counts per bin over evaluated ranks
};

struct AnalogyEntry {
    AnalogyQuartet quartet;
    std::vector<std::string> predicted; // top-10 (or fewer in tiny vocabularies)
    bool hit1 = false;
    bool hit10 = false;
    bool skipped = false;
    std::string skip_reason;
};

struct CategoryStats {
    Index evaluated = 0;
    double hit_at_1 = 0.0;
    double hit_at_10 = 0.0;
};

struct AnalogyReport {
    std::vector<AnalogyEntry> per_quartet;
    double hit_at_1 = 0.0;
    double hit_at_10 = 0.0;
    Index evaluated_count = 0;
    Index skipped_count = 0;
    std::map<std::string, CategoryStats> by_category; // labelled quartets only
};

// u.v / (|u||v|), clamped to [-1, 1]. Throws data_error on a zero vector.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

// 1-based rank of `target` among all words except `query`, ordered by
// descending cosine similarity to `query`; ties broken by ascending
// vocabulary index. Throws data_error on out-of-vocabulary tokens.
Index synonym_rank(const EmbeddingModel& model, std::string_view query, std::string_view target);

// Evaluates the top_n pairs whose query row index is smallest (row order is
// the frequency proxy). Pairs with out-of-vocabulary tokens are skipped and
// counted. Throws data_error when nothing can be evaluated.
SynonymReport run_synonym_test(const EmbeddingModel& model, const SynonymDataset& data,
                               Index top_n, const HistogramSpec& bins = {});

// Top-k tokens by cosine to w_b - w_a + w_x, excluding a, b and x; ties by
// ascending vocabulary index.
std::vector<std::string> analogy_predict(const EmbeddingModel& model, std::string_view a,
                                         std::string_view b, std::string_view x, Index k);

// hit1: top prediction equals y; hit10: y within the top ten.
AnalogyReport run_analogy_test(const EmbeddingModel& model, const AnalogyDataset& data);

// Per-item CSV rows; both report kinds share one schema:
// model,test,w1,w2,w3,w4,status,rank,hit1,hit10,predicted
void write_synonym_csv_rows(std::ostream& out, const std::string& model_name,
                            const SynonymReport& report);
void write_analogy_csv_rows(std::ostream& out, const std::string& model_name,
                            const AnalogyReport& report);
void write_eval_csv_header(std::ostream& out);

// Escapes a field per RFC-4180 when it contains a comma, quote or newline.
std::string csv_field(const std::string& s);

} // namespace embens

#endif
