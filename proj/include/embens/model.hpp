#ifndef EMBENS_MODEL_HPP
#define EMBENS_MODEL_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "embens/matrix.hpp"

namespace embens {

// A vocabulary plus one row vector per word. Row order is the file order,
// which by convention is descending corpus frequency; downstream analyses
// use the row index as a frequency rank. Immutable after construction.
class EmbeddingModel {
public:
    // Validates: tokens unique, non-empty, whitespace-free; entries finite;
    // at least one word and one dimension; one row per word.
    EmbeddingModel(std::vector<std::string> words, Matrix matrix);

    Index size() const { return static_cast<Index>(words_.size()); }
    Index dim() const { return matrix_.cols(); }

    const std::vector<std::string>& words() const { return words_; }
    const Matrix& matrix() const { return matrix_; }

    const std::string& word(Index row) const { return words_[static_cast<std::size_t>(row)]; }
    std::span<const double> vector_of(Index row) const { return matrix_.row(row); }

    std::optional<Index> find(std::string_view token) const;

private:
    std::vector<std::string> words_;
    Matrix matrix_;
    std::unordered_map<std::string, Index> index_;
};

// Result of intersecting vocabularies. shared_words follows the first
// model's order; source_rows[i][k] is the row in model i holding
// shared_words[k]; dropped_per_model[i] counts tokens of model i that are
// absent from the intersection.
struct VocabAlignment {
    std::vector<std::string> shared_words;
    std::vector<std::vector<Index>> source_rows;
    std::vector<Index> dropped_per_model;
};

// Text format: first line "<|V|> <d>", then one line per word:
// "<token> <v1> ... <vd>", single spaces, "\n" endings, UTF-8 tokens.
EmbeddingModel load_model(const std::filesystem::path& path);

// Values are written in the shortest decimal form that parses back to the
// identical double, so save/load round-trips exactly.
void save_model(const EmbeddingModel& model, const std::filesystem::path& path);

// Restricts all models to the shared vocabulary, in the first model's word
// order. Requires at least two models; throws if the intersection is empty.
std::pair<VocabAlignment, std::vector<EmbeddingModel>>
align_vocabularies(const std::vector<EmbeddingModel>& models);

// Headerless matrix files ("<rows> <cols>" then value rows); used for
// persisting projection matrices.
Matrix load_matrix_text(const std::filesystem::path& path);
void save_matrix_text(const Matrix& m, const std::filesystem::path& path);

// Shortest round-trip decimal formatting used across all text outputs.
std::string format_double(double v);

} // namespace embens

#endif
