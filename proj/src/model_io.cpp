#include "embens/model.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "embens/errors.hpp"

namespace embens {

namespace {

bool has_whitespace(std::string_view token) {
    for (char c : token)
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') return true;
    return false;
}

[[noreturn]] void fail_at(const std::filesystem::path& path, std::size_t line, const std::string& msg) {
    std::ostringstream os;
    os << path.string() << ":" << line << ": " << msg;
    throw parse_error(os.str());
}

double parse_value(std::string_view tok, const std::filesystem::path& path, std::size_t line) {
    double v = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec == std::errc::result_out_of_range)
        fail_at(path, line, "value out of range: '" + std::string(tok) + "'");
    if (ec != std::errc() || ptr != last)
        fail_at(path, line, "malformed number: '" + std::string(tok) + "'");
    if (!std::isfinite(v))
        fail_at(path, line, "non-finite value: '" + std::string(tok) + "'");
    return v;
}

Index parse_count(std::string_view tok, const std::filesystem::path& path, std::size_t line,
                  const char* what) {
    Index v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 1)
        fail_at(path, line, std::string("invalid ") + what + ": '" + std::string(tok) + "'");
    return v;
}

void split_fields(std::string_view line, std::vector<std::string_view>& out) {
    out.clear();
    std::size_t pos = 0;
    while (pos <= line.size()) {
        std::size_t next = line.find(' ', pos);
        if (next == std::string_view::npos) next = line.size();
        out.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
}

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

// Shared reader for the "<rows> <cols>" header followed by data rows.
// row_sink is called once per data row with the split fields.
template <typename RowSink>
void read_table(const std::filesystem::path& path, Index& rows, Index& cols, RowSink&& sink) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path.string());

    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) fail_at(path, 1, "empty file, expected '<rows> <cols>' header");
    ++lineno;

    std::vector<std::string_view> fields;
    split_fields(strip_cr(line), fields);
    if (fields.size() != 2) fail_at(path, lineno, "header must be '<rows> <cols>'");
    rows = parse_count(fields[0], path, lineno, "row count");
    cols = parse_count(fields[1], path, lineno, "column count");

    Index seen = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv = strip_cr(line);
        if (sv.empty()) {
            // Tolerate blank lines at end of file only.
            if (seen == rows) continue;
            fail_at(path, lineno, "unexpected blank line");
        }
        if (seen == rows)
            fail_at(path, lineno, "more data rows than the header's " + std::to_string(rows));
        split_fields(sv, fields);
        sink(fields, lineno, seen);
        ++seen;
    }
    if (in.bad()) throw io_error("read failure on " + path.string());
    if (seen != rows)
        fail_at(path, lineno + 1,
                "header promises " + std::to_string(rows) + " rows, file has " + std::to_string(seen));
}

} // namespace

EmbeddingModel::EmbeddingModel(std::vector<std::string> words, Matrix matrix)
    : words_(std::move(words)), matrix_(std::move(matrix)) {
    if (words_.empty()) throw data_error("model must contain at least one word");
    if (matrix_.cols() < 1) throw data_error("model must have at least one dimension");
    if (matrix_.rows() != static_cast<Index>(words_.size()))
        throw data_error("word count does not match matrix row count");
    index_.reserve(words_.size());
    for (Index i = 0; i < static_cast<Index>(words_.size()); ++i) {
        const std::string& w = words_[static_cast<std::size_t>(i)];
        if (w.empty()) throw data_error("empty token at row " + std::to_string(i));
        if (has_whitespace(w)) throw data_error("token contains whitespace: '" + w + "'");
        if (!index_.emplace(w, i).second) throw data_error("duplicate token: '" + w + "'");
    }
    if (!all_finite(matrix_)) throw data_error("model matrix contains non-finite values");
}

std::optional<Index> EmbeddingModel::find(std::string_view token) const {
    auto it = index_.find(std::string(token));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

EmbeddingModel load_model(const std::filesystem::path& path) {
    Index vocab = 0, dim = 0;
    std::vector<std::string> words;
    Matrix m;
    bool sized = false;
    read_table(path, vocab, dim, [&](const std::vector<std::string_view>& fields,
                                     std::size_t lineno, Index row) {
        if (!sized) {
            words.reserve(static_cast<std::size_t>(vocab));
            m = Matrix(vocab, dim);
            sized = true;
        }
        if (static_cast<Index>(fields.size()) != dim + 1)
            fail_at(path, lineno,
                    "expected 1 token + " + std::to_string(dim) + " values, got " +
                        std::to_string(fields.size()) + " fields");
        if (fields[0].empty()) fail_at(path, lineno, "empty token");
        words.emplace_back(fields[0]);
        for (Index j = 0; j < dim; ++j)
            m(row, j) = parse_value(fields[static_cast<std::size_t>(j + 1)], path, lineno);
    });
    try {
        return EmbeddingModel(std::move(words), std::move(m));
    } catch (const data_error& e) {
        throw parse_error(path.string() + ": " + e.what());
    }
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void save_model(const EmbeddingModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");
    out << model.size() << ' ' << model.dim() << '\n';
    for (Index i = 0; i < model.size(); ++i) {
        out << model.word(i);
        for (Index j = 0; j < model.dim(); ++j) out << ' ' << format_double(model.matrix()(i, j));
        out << '\n';
    }
    out.flush();
    if (!out) throw io_error("write failure on " + path.string());
}

std::pair<VocabAlignment, std::vector<EmbeddingModel>>
align_vocabularies(const std::vector<EmbeddingModel>& models) {
    if (models.size() < 2) throw usage_error("align_vocabularies needs at least two models");

    VocabAlignment align;
    align.source_rows.resize(models.size());
    align.dropped_per_model.resize(models.size());

    const EmbeddingModel& first = models.front();
    for (Index row = 0; row < first.size(); ++row) {
        const std::string& w = first.word(row);
        std::vector<Index> rows{row};
        rows.reserve(models.size());
        bool everywhere = true;
        for (std::size_t i = 1; i < models.size(); ++i) {
            auto r = models[i].find(w);
            if (!r) {
                everywhere = false;
                break;
            }
            rows.push_back(*r);
        }
        if (!everywhere) continue;
        align.shared_words.push_back(w);
        for (std::size_t i = 0; i < models.size(); ++i)
            align.source_rows[i].push_back(rows[i]);
    }

    if (align.shared_words.empty()) throw data_error("vocabulary intersection is empty");

    const Index shared = static_cast<Index>(align.shared_words.size());
    std::vector<EmbeddingModel> out;
    out.reserve(models.size());
    for (std::size_t i = 0; i < models.size(); ++i) {
        align.dropped_per_model[i] = models[i].size() - shared;
        Matrix m(shared, models[i].dim());
        for (Index k = 0; k < shared; ++k) {
            auto src = models[i].vector_of(align.source_rows[i][static_cast<std::size_t>(k)]);
            for (Index j = 0; j < models[i].dim(); ++j) m(k, j) = src[static_cast<std::size_t>(j)];
        }
        out.emplace_back(align.shared_words, std::move(m));
    }
    return {std::move(align), std::move(out)};
}

Matrix load_matrix_text(const std::filesystem::path& path) {
    Index rows = 0, cols = 0;
    Matrix m;
    bool sized = false;
    read_table(path, rows, cols, [&](const std::vector<std::string_view>& fields,
                                     std::size_t lineno, Index row) {
        if (!sized) {
            m = Matrix(rows, cols);
            sized = true;
        }
        if (static_cast<Index>(fields.size()) != cols)
            fail_at(path, lineno,
                    "expected " + std::to_string(cols) + " values, got " +
                        std::to_string(fields.size()));
        for (Index j = 0; j < cols; ++j)
            m(row, j) = parse_value(fields[static_cast<std::size_t>(j)], path, lineno);
    });
    return m;
}

void save_matrix_text(const Matrix& m, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");
    out << m.rows() << ' ' << m.cols() << '\n';
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
    out.flush();
    if (!out) throw io_error("write failure on " + path.string());
}

} // namespace embens
