#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "embens/errors.hpp"
#include "embens/model.hpp"
#include "test_util.hpp"

using namespace embens;
using namespace embens::test;

TEST_CASE("load_model reads the documented text format") {
    TempDir dir;
    const auto path = write_file(dir.file("m.vec"), "2 2\na 1.0 0.0\nb 0.0 1.0\n");
    const EmbeddingModel m = load_model(path);
    CHECK(m.size() == 2);
    CHECK(m.dim() == 2);
    CHECK(m.words() == std::vector<std::string>{"a", "b"});
    CHECK(m.matrix()(0, 0) == 1.0);
    CHECK(m.matrix()(1, 0) == 0.0);
    CHECK(m.matrix()(1, 1) == 1.0);
    CHECK(m.find("b") == Index{1});
    CHECK(!m.find("c"));
}

TEST_CASE("load_model reports format violations with line numbers") {
    TempDir dir;

    SUBCASE("row has too few values") {
        const auto p = write_file(dir.file("bad.vec"), "2 3\na 1 2 3\nb 1 2\n");
        CHECK_THROWS_WITH_AS(load_model(p), doctest::Contains(":3:"), parse_error);
    }
    SUBCASE("duplicate token") {
        const auto p = write_file(dir.file("dup.vec"), "2 2\na 1 2\na 3 4\n");
        CHECK_THROWS_WITH_AS(load_model(p), doctest::Contains("duplicate token"), parse_error);
    }
    SUBCASE("non-finite value") {
        const auto p = write_file(dir.file("inf.vec"), "1 2\na inf 0\n");
        CHECK_THROWS_WITH_AS(load_model(p), doctest::Contains("non-finite"), parse_error);
    }
    SUBCASE("malformed number") {
        const auto p = write_file(dir.file("mal.vec"), "1 2\na 1.0 zebra\n");
        CHECK_THROWS_WITH_AS(load_model(p), doctest::Contains("malformed number"), parse_error);
    }
    SUBCASE("fewer rows than the header promises") {
        const auto p = write_file(dir.file("short.vec"), "3 2\na 1 2\nb 3 4\n");
        CHECK_THROWS_WITH_AS(load_model(p), doctest::Contains("promises 3 rows"), parse_error);
    }
    SUBCASE("more rows than the header promises") {
        const auto p = write_file(dir.file("long.vec"), "1 2\na 1 2\nb 3 4\n");
        CHECK_THROWS_AS(load_model(p), parse_error);
    }
    SUBCASE("bad header") {
        const auto p = write_file(dir.file("hdr.vec"), "2\na 1 2\n");
        CHECK_THROWS_WITH_AS(load_model(p), doctest::Contains("header"), parse_error);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_model(dir.file("nope.vec")), io_error);
    }
}

TEST_CASE("save_model writes the one-word example exactly") {
    TempDir dir;
    const EmbeddingModel m({"w"}, Matrix::of({{0.0, 0.0}}));
    save_model(m, dir.file("w.vec"));
    CHECK(read_file(dir.file("w.vec")) == "1 2\nw 0 0\n");
}

TEST_CASE("save_model rejects unwritable paths") {
    const EmbeddingModel m({"w"}, Matrix::of({{1.0}}));
    CHECK_THROWS_AS(save_model(m, "/nonexistent-dir/m.vec"), io_error);
}

TEST_CASE("save/load round-trips are exact") {
    TempDir dir;
    const EmbeddingModel m = random_model(7, 37, 9);
    save_model(m, dir.file("r.vec"));
    const EmbeddingModel back = load_model(dir.file("r.vec"));
    CHECK(back.words() == m.words());
    CHECK(max_abs_diff(back.matrix(), m.matrix()) == 0.0);

    // load . save . load is idempotent byte-for-byte.
    save_model(back, dir.file("r2.vec"));
    CHECK(read_file(dir.file("r.vec")) == read_file(dir.file("r2.vec")));
}

TEST_CASE("model constructor enforces the invariants") {
    CHECK_THROWS_AS(EmbeddingModel({}, Matrix(0, 1)), data_error);
    CHECK_THROWS_AS(EmbeddingModel({"a", "a"}, Matrix(2, 1)), data_error);
    CHECK_THROWS_AS(EmbeddingModel({""}, Matrix(1, 1)), data_error);
    CHECK_THROWS_AS(EmbeddingModel({"a b"}, Matrix(1, 1)), data_error);
    CHECK_THROWS_AS(EmbeddingModel({"a\tb"}, Matrix(1, 1)), data_error);
    CHECK_THROWS_AS(EmbeddingModel({"a", "b"}, Matrix(1, 1)), data_error);
    Matrix nan(1, 1);
    nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(EmbeddingModel({"a"}, std::move(nan)), data_error);
}

TEST_CASE("align_vocabularies intersects in the first model's order") {
    const EmbeddingModel m1({"a", "b", "c"}, Matrix::of({{1, 0}, {2, 0}, {3, 0}}));
    const EmbeddingModel m2({"b", "c", "d"}, Matrix::of({{9, 1}, {8, 1}, {7, 1}}));

    SUBCASE("identical vocabularies pass through") {
        auto [align, out] = align_vocabularies({m1, m1});
        CHECK(align.shared_words == m1.words());
        CHECK(align.dropped_per_model == std::vector<Index>{0, 0});
        CHECK(out[0].matrix() == m1.matrix());
        CHECK(out[1].matrix() == m1.matrix());
    }
    SUBCASE("partial overlap keeps first-model order and counts drops") {
        auto [align, out] = align_vocabularies({m1, m2});
        CHECK(align.shared_words == std::vector<std::string>{"b", "c"});
        CHECK(align.dropped_per_model == std::vector<Index>{1, 1});
        CHECK(out[0].words() == out[1].words());
        // Vectors follow each source model.
        CHECK(out[0].matrix()(0, 0) == 2.0);
        CHECK(out[1].matrix()(0, 0) == 9.0);
        CHECK(out[1].matrix()(1, 0) == 8.0);
    }
    SUBCASE("empty intersection is an error") {
        const EmbeddingModel m3({"z"}, Matrix::of({{1.0, 1.0}}));
        CHECK_THROWS_AS(align_vocabularies({m1, m3}), data_error);
    }
    SUBCASE("fewer than two models is a usage error") {
        CHECK_THROWS_AS(align_vocabularies({m1}), usage_error);
    }
}

TEST_CASE("matrix text files round-trip") {
    TempDir dir;
    const Matrix m = Matrix::of({{0.25, -1.5, 3.0}, {1e-8, 2.0, -0.125}});
    save_matrix_text(m, dir.file("p.txt"));
    CHECK(max_abs_diff(load_matrix_text(dir.file("p.txt")), m) == 0.0);
}

TEST_CASE("format_double emits shortest round-trip decimals") {
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-2.5) == "-2.5");
}
