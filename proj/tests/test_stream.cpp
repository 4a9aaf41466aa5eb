#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "ambc/stream.hpp"

using namespace ambc;

namespace {

std::vector<Int> random_subset(std::mt19937& gen, Int n, Int m,
                               const std::vector<Int>& forbidden) {
  std::vector<Int> pool;
  for (Int v = 1; v <= n; ++v)
    if (!std::binary_search(forbidden.begin(), forbidden.end(), v))
      pool.push_back(v);
  std::shuffle(pool.begin(), pool.end(), gen);
  pool.resize(static_cast<std::size_t>(m));
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<Partition> partitions_of(Int n) {
  std::vector<Partition> out;
  std::vector<Int> parts;
  auto rec = [&](auto&& self, Int rest, Int cap) -> void {
    if (rest == 0) {
      out.emplace_back(parts);
      return;
    }
    for (Int p = std::min(rest, cap); p >= 1; --p) {
      parts.push_back(p);
      self(self, rest - p, p);
      parts.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

Tabloid random_tabloid(std::mt19937& gen, Int n, const Partition& shape) {
  std::vector<Int> entries(static_cast<std::size_t>(n));
  std::iota(entries.begin(), entries.end(), 1);
  std::shuffle(entries.begin(), entries.end(), gen);
  std::vector<std::vector<Int>> rows;
  std::size_t at = 0;
  for (Int k = 1; k <= shape.length(); ++k) {
    std::size_t len = static_cast<std::size_t>(shape.part(k));
    rows.emplace_back(entries.begin() + at, entries.begin() + at + len);
    at += len;
  }
  return Tabloid(n, shape, rows);
}

// Condition (1) of the backward numbering at a candidate anchor.
bool dominated(const Stream& T, Int anchor, const NumberedStream& S) {
  NumberedStream cand{T, anchor};
  for (Int i = anchor; i < anchor + T.density(); ++i)
    if (!strictly_northwest(S.cell(i), cand.cell(i))) return false;
  return true;
}

// Condition (2) of the backward numbering at a candidate anchor.
bool tight(const Stream& T, Int anchor, const NumberedStream& S) {
  NumberedStream cand{T, anchor};
  for (Int i = anchor; i < anchor + T.density(); ++i)
    if (!strictly_northwest(S.cell(i + 1), cand.cell(i))) return true;
  return false;
}

}  // namespace

TEST_CASE("stream construction") {
  Stream st0 = make_stream(6, {1, 3, 6}, {2, 4, 5}, 0);
  CHECK(st0.cells() == std::vector<Cell>{{1, 2}, {3, 4}, {6, 5}});
  CHECK(st0.density() == 3);
  CHECK(st0.n() == 6);
  CHECK(st0.row_residues() == Row{1, 3, 6});
  CHECK(st0.col_residues() == Row{2, 4, 5});

  SECTION("shifting the altitude moves each cell east to the next column") {
    Stream st1 = make_stream(6, {1, 3, 6}, {2, 4, 5}, 1);
    CHECK(st1.cells() == std::vector<Cell>{{1, 4}, {3, 5}, {6, 8}});
    CHECK(st1.col_residues() == Row{2, 4, 5});
  }

  SECTION("single class diagonal") {
    CHECK(make_stream(4, {1}, {1}, 0).cells() == std::vector<Cell>{{1, 1}});
  }

  SECTION("canonical numbering walks the periodic chain") {
    CHECK(st0.cell(1) == Cell{1, 2});
    CHECK(st0.cell(2) == Cell{3, 4});
    CHECK(st0.cell(3) == Cell{6, 5});
    CHECK(st0.cell(4) == Cell{7, 8});
    CHECK(st0.cell(0) == Cell{0, -1});
    CHECK(st0.cell(-1) == Cell{-3, -2});
    CHECK(st0.cell(-2) == Cell{-5, -4});
  }

  SECTION("the constructor canonicalizes representatives") {
    Stream moved(6, {{7, 8}, {3, 4}, {0, -1}});
    CHECK(moved == st0);
  }

  SECTION("rejects malformed data") {
    CHECK_THROWS_AS(make_stream(6, {1, 3}, {2, 4, 5}, 0), size_mismatch_error);
    CHECK_THROWS_AS(make_stream(6, {1, 1, 3}, {2, 4, 5}, 0),
                    duplicate_residue_error);
    CHECK_THROWS_AS(make_stream(6, {0, 3, 6}, {2, 4, 5}, 0), input_error);
    // Columns out of order, and a column span of a full period: either way
    // the periodic extension is not a chain.
    CHECK_THROWS_AS(Stream(6, {{1, 4}, {3, 2}}), input_error);
    CHECK_THROWS_AS(Stream(6, {{1, 1}, {2, 7}}), input_error);
    CHECK_THROWS_AS(Stream(6, {{1, 1}, {2, 1}}), duplicate_residue_error);
  }
}

TEST_CASE("altitude") {
  CHECK(altitude(Stream(7, {{1, 10}})) == 1);
  CHECK(altitude(make_stream(6, {1, 3, 6}, {2, 4, 5}, -1)) == -1);
  CHECK(altitude(make_stream(6, {1, 3, 6}, {2, 4, 5}, 0)) == 0);
  CHECK(altitude(make_stream(6, {1, 3, 6}, {2, 4, 5}, 1)) == 1);

  SECTION("altitude of make_stream recovers r, which separates streams") {
    std::mt19937 gen(2024);
    for (int trial = 0; trial < 200; ++trial) {
      Int n = 2 + static_cast<Int>(gen() % 7);
      Int m = 1 + static_cast<Int>(gen() % static_cast<unsigned long>(n));
      std::vector<Int> A = random_subset(gen, n, m, {});
      std::vector<Int> B = random_subset(gen, n, m, {});
      Int r = static_cast<Int>(gen() % (4 * static_cast<unsigned long>(n))) -
              2 * n;
      Stream S = make_stream(n, A, B, r);
      CHECK(altitude(S) == r);
      CHECK(S.row_residues() == A);
      CHECK(S.col_residues() == B);
      Stream other = make_stream(n, A, B, r + 1 + static_cast<Int>(gen() % 3));
      CHECK(!(S == other));
    }
  }
}

TEST_CASE("backward numbering") {
  SECTION("a southeast translate aligns index for index") {
    Stream S = make_stream(6, {1, 3}, {2, 5}, 0);
    REQUIRE(S.cells() == std::vector<Cell>{{1, 2}, {3, 5}});
    Stream T(6, {{2, 3}, {4, 6}});
    NumberedStream numbered = backward_numbering(T, NumberedStream{S});
    CHECK(numbered.anchor == 1);
    CHECK(numbered.cell(1) == Cell{2, 3});
    CHECK(numbered.cell(2) == Cell{4, 6});
  }

  SECTION("worked two row example") {
    // Streams of the first two rows of a triple: rows from Q, columns
    // from P.
    Stream S = make_stream(7, {3, 6, 7}, {1, 2, 5}, 0);
    Stream T = make_stream(7, {2, 4, 5}, {4, 6, 7}, -2);
    REQUIRE(S.cells() == std::vector<Cell>{{3, 1}, {6, 2}, {7, 5}});
    REQUIRE(T.cells() == std::vector<Cell>{{2, -1}, {4, 0}, {5, 4}});
    NumberedStream numbered = backward_numbering(T, NumberedStream{S});
    CHECK(numbered.anchor == -1);
    CHECK(numbered.cell(-1) == Cell{2, -1});
    CHECK(numbered.cell(0) == Cell{4, 0});
    CHECK(numbered.cell(1) == Cell{5, 4});
    CHECK(numbered.cell(2) == Cell{9, 6});
  }

  SECTION("renumbering the source shifts the result by the same amount") {
    Stream S = make_stream(7, {3, 6, 7}, {1, 2, 5}, 0);
    Stream T = make_stream(7, {2, 4, 5}, {4, 6, 7}, -2);
    for (Int delta : {-3, 5}) {
      NumberedStream shifted{S, 1 + delta};
      CHECK(backward_numbering(T, shifted).anchor == -1 + delta);
    }
  }

  SECTION("the computed anchor is the unique one satisfying both clauses") {
    std::mt19937 gen(99);
    for (int trial = 0; trial < 200; ++trial) {
      Int n = 2 + static_cast<Int>(gen() % 7);
      Int m = 1 + static_cast<Int>(gen() % static_cast<unsigned long>(n / 2));
      std::vector<Int> A = random_subset(gen, n, m, {});
      std::vector<Int> B = random_subset(gen, n, m, {});
      std::vector<Int> A2 = random_subset(gen, n, m, A);
      std::vector<Int> B2 = random_subset(gen, n, m, B);
      Int r = static_cast<Int>(gen() % (2 * static_cast<unsigned long>(n))) -
              n;
      Stream S = make_stream(n, A, B, 0);
      Stream T = make_stream(n, A2, B2, r);
      NumberedStream source{S};
      Int anchor = backward_numbering(T, source).anchor;
      CHECK(dominated(T, anchor, source));
      CHECK(tight(T, anchor, source));
      CHECK(!dominated(T, anchor + 1, source));
      CHECK(!tight(T, anchor - 1, source));
    }
  }

  SECTION("rejects shared classes and unequal densities") {
    Stream S = make_stream(6, {1, 3}, {2, 5}, 0);
    CHECK_THROWS_AS(
        backward_numbering(make_stream(6, {1, 4}, {3, 6}, 0),
                           NumberedStream{S}),
        shared_row_or_column_error);
    CHECK_THROWS_AS(
        backward_numbering(make_stream(6, {2, 4}, {5, 6}, 0),
                           NumberedStream{S}),
        shared_row_or_column_error);
    CHECK_THROWS_AS(
        backward_numbering(make_stream(6, {2}, {3}, 0), NumberedStream{S}),
        size_mismatch_error);
  }
}

TEST_CASE("concurrency") {
  Row A{3, 6, 7}, B{1, 2, 5}, A2{2, 4, 5}, B2{4, 6, 7};

  SECTION("worked example offset") {
    CHECK(concurrency_offset(7, A, B, A2, B2) == -2);
    CHECK(concurrency_offset(7, A2, B2, A, B) == 2);
  }

  SECTION("exactly one altitude is concurrent") {
    Stream S = make_stream(7, A, B, 0);
    for (Int r = -7; r <= 7; ++r)
      CHECK(is_concurrent(make_stream(7, A2, B2, r), S) == (r == -2));
  }

  SECTION("a pure southeast translate is concurrent at altitude zero") {
    CHECK(concurrency_offset(6, {1, 3}, {2, 5}, {2, 4}, {3, 6}) == 0);
  }

  SECTION("the offset is unique over a wide scan and transpose antisymmetric") {
    std::mt19937 gen(7);
    for (int trial = 0; trial < 120; ++trial) {
      Int n = 2 + static_cast<Int>(gen() % 7);
      Int m = 1 + static_cast<Int>(gen() % static_cast<unsigned long>(n / 2));
      std::vector<Int> U = random_subset(gen, n, m, {});
      std::vector<Int> V = random_subset(gen, n, m, {});
      std::vector<Int> U2 = random_subset(gen, n, m, U);
      std::vector<Int> V2 = random_subset(gen, n, m, V);
      Int offset = concurrency_offset(n, U, V, U2, V2);
      // Exchanging the roles of row and column data in both streams negates
      // the offset.
      CHECK(concurrency_offset(n, V, U, V2, U2) == -offset);
      Stream S = make_stream(n, U, V, 0);
      Int hits = 0;
      for (Int r = -2 * n; r <= 2 * n; ++r)
        if (is_concurrent(make_stream(n, U2, V2, r), S)) {
          ++hits;
          CHECK(r == offset);
        }
      CHECK(hits == 1);
    }
  }

  SECTION("swapping the argument pairs does not negate the offset in general") {
    // The negation law pairs a stream with its transpose, not with the
    // stream scanned from the other side. Here both orders give a
    // nonnegative offset.
    CHECK(concurrency_offset(4, {1, 3}, {1, 2}, {2, 4}, {3, 4}) == 0);
    CHECK(concurrency_offset(4, {2, 4}, {3, 4}, {1, 3}, {1, 2}) == 1);
    CHECK(concurrency_offset(4, {1, 2}, {1, 3}, {3, 4}, {2, 4}) == 0);
    CHECK(concurrency_offset(4, {3, 4}, {2, 4}, {1, 2}, {1, 3}) == -1);
  }

  SECTION("rejects overlapping classes and unequal sizes") {
    CHECK_THROWS_AS(concurrency_offset(7, A, B, {3, 4, 5}, B2),
                    overlapping_data_error);
    CHECK_THROWS_AS(concurrency_offset(7, A, B, A2, {1, 6, 7}),
                    overlapping_data_error);
    CHECK_THROWS_AS(concurrency_offset(7, A, B, {2, 4}, {4, 6}),
                    size_mismatch_error);
  }
}

TEST_CASE("dominance constants") {
  Tabloid P(7, Partition({3, 3, 1}), {{1, 2, 5}, {4, 6, 7}, {3}});
  Tabloid Q(7, Partition({3, 3, 1}), {{3, 6, 7}, {2, 4, 5}, {1}});

  SECTION("worked example") {
    CHECK(local_charge(P, 1) == 0);
    CHECK(local_charge(Q, 1) == 2);
    CHECK(dominance_constant(P, Q, 1) == -2);
    CHECK(dominance_constant_via_concurrency(P, Q, 1) == -2);
    CHECK_THROWS_AS(dominance_constant(P, Q, 2), unequal_rows_error);
    CHECK_THROWS_AS(dominance_constant_via_concurrency(P, Q, 2),
                    unequal_rows_error);
  }

  SECTION("single entry rows matched upward") {
    Tabloid P4(4, Partition({2, 1, 1}), {{1, 4}, {2}, {3}});
    Tabloid Q4(4, Partition({2, 1, 1}), {{1, 3}, {2}, {4}});
    CHECK(dominance_constant(P4, Q4, 2) == 0);
    CHECK(dominance_constant_via_concurrency(P4, Q4, 2) == 0);
    CHECK_THROWS_AS(dominance_constant(P4, Q4, 1), unequal_rows_error);
  }

  SECTION("equal tabloids have zero constants") {
    std::mt19937 gen(5);
    for (Int n = 2; n <= 8; ++n)
      for (const Partition& shape : partitions_of(n)) {
        Tabloid T = random_tabloid(gen, n, shape);
        for (Int i = 1; i < shape.length(); ++i) {
          if (shape.part(i) != shape.part(i + 1)) continue;
          CHECK(dominance_constant(T, T, i) == 0);
          CHECK(dominance_constant_via_concurrency(T, T, i) == 0);
        }
      }
  }

  SECTION("charge and concurrency computations agree") {
    std::mt19937 gen(11);
    for (int trial = 0; trial < 60; ++trial) {
      Int n = 2 + static_cast<Int>(gen() % 7);
      std::vector<Partition> shapes = partitions_of(n);
      const Partition& shape =
          shapes[static_cast<std::size_t>(gen() % shapes.size())];
      Tabloid S = random_tabloid(gen, n, shape);
      Tabloid T = random_tabloid(gen, n, shape);
      for (Int i = 1; i < shape.length(); ++i) {
        if (shape.part(i) != shape.part(i + 1)) continue;
        Int r = dominance_constant(S, T, i);
        CHECK(dominance_constant_via_concurrency(S, T, i) == r);
        CHECK(dominance_constant(T, S, i) == -r);
      }
    }
  }

  SECTION("rejects mismatched tabloids") {
    Tabloid wide(8, Partition({3, 3, 1}), {{1, 2, 5}, {4, 6, 7}, {3}});
    CHECK_THROWS_AS(dominance_constant(P, wide, 1), shape_mismatch_error);
    Tabloid other(7, Partition({4, 3}), {{1, 2, 5, 7}, {3, 4, 6}});
    CHECK_THROWS_AS(dominance_constant(P, other, 1), shape_mismatch_error);
    CHECK_THROWS_AS(dominance_constant(P, Q, 0), input_error);
    CHECK_THROWS_AS(dominance_constant(P, Q, 3), input_error);
  }
}

TEST_CASE("dominant weights") {
  Tabloid P(7, Partition({3, 3, 1}), {{1, 2, 5}, {4, 6, 7}, {3}});
  Tabloid Q(7, Partition({3, 3, 1}), {{3, 6, 7}, {2, 4, 5}, {1}});
  Tabloid P4(4, Partition({2, 1, 1}), {{1, 4}, {2}, {3}});
  Tabloid Q4(4, Partition({2, 1, 1}), {{1, 3}, {2}, {4}});

  SECTION("worked examples") {
    CHECK(is_dominant(P, Q, {3, 3, 1}));
    CHECK(is_dominant(P, Q, {3, 1, -5}));
    CHECK_FALSE(is_dominant(P, Q, {3, 0, 99}));
    CHECK_FALSE(is_dominant(Q4, P4, {0, 0, -1}));
    CHECK(dominant_representative(Q4, P4, {0, 0, -1}) == Weight{0, -1, 0});
    CHECK(is_dominant(Q4, P4, {0, -1, 0}));
  }

  SECTION("representative is dominant, idempotent, and involutive") {
    std::mt19937 gen(17);
    for (int trial = 0; trial < 80; ++trial) {
      Int n = 2 + static_cast<Int>(gen() % 7);
      std::vector<Partition> shapes = partitions_of(n);
      const Partition& shape =
          shapes[static_cast<std::size_t>(gen() % shapes.size())];
      Tabloid S = random_tabloid(gen, n, shape);
      Tabloid T = random_tabloid(gen, n, shape);
      Weight rho;
      for (Int k = 0; k < shape.length(); ++k)
        rho.push_back(static_cast<Int>(gen() % 9) - 4);

      Weight dom = dominant_representative(S, T, rho);
      CHECK(is_dominant(S, T, dom));
      CHECK(dominant_representative(S, T, dom) == dom);
      if (is_dominant(S, T, rho)) CHECK(dom == rho);

      // Swapping the tabloids and negating twice round trips.
      Weight negated(dom.size());
      std::transform(dom.begin(), dom.end(), negated.begin(),
                     [](Int v) { return -v; });
      Weight flipped = dominant_representative(T, S, negated);
      Weight back(flipped.size());
      std::transform(flipped.begin(), flipped.end(), back.begin(),
                     [](Int v) { return -v; });
      CHECK(dominant_representative(S, T, back) == dom);
    }
  }

  SECTION("rejects weights of the wrong length") {
    CHECK_THROWS_AS(is_dominant(P, Q, {3, 3}), shape_mismatch_error);
    CHECK_THROWS_AS(dominant_representative(P, Q, {3, 3, 1, 0}),
                    shape_mismatch_error);
  }
}
