#pragma once

#include <algorithm>
#include <iterator>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ambc/lattice.hpp"
#include "ambc/tabloid.hpp"

namespace ambc {

// A stream: a nonempty family of cells, closed under (n,n)-translation, that
// forms a bi-infinite strictly-southeast chain and meets each row and column
// residue class at most once. Stored as one representative per translation
// class, with rows canonicalized into [1..n] and sorted.
class Stream {
 public:
  Stream(Int n, std::vector<Cell> cells)
      : n_(static_cast<int>(n)), cells_(std::move(cells)) {
    check_modulus(n_);
    if (cells_.empty()) throw input_error("stream: at least one cell required");
    for (Cell& c : cells_) {
      Int k = floor_div(c.row - 1, n_);
      c = translated(c, -k, n_);
    }
    std::sort(cells_.begin(), cells_.end());
    std::vector<int> rows, cols;
    for (const Cell& c : cells_) {
      rows.push_back(static_cast<int>(c.row));
      cols.push_back(residue(n_, c.col));
    }
    check_residue_set(n_, rows, "stream rows");
    std::sort(cols.begin(), cols.end());
    check_residue_set(n_, cols, "stream columns");
    // With rows strictly increasing in [1..n], the periodic extension is a
    // southeast chain exactly when the columns also strictly increase and
    // span less than one period.
    for (std::size_t i = 1; i < cells_.size(); ++i)
      if (cells_[i].col <= cells_[i - 1].col)
        throw input_error("stream: cells do not form a southeast chain");
    if (cells_.back().col - cells_.front().col >= n_)
      throw input_error("stream: cells do not form a southeast chain");
  }

  int n() const { return n_; }
  Int density() const { return static_cast<Int>(cells_.size()); }
  const std::vector<Cell>& cells() const { return cells_; }

  Row row_residues() const {
    Row out;
    for (const Cell& c : cells_) out.push_back(c.row);
    return out;
  }
  Row col_residues() const {
    Row out;
    for (const Cell& c : cells_) out.push_back(residue(n_, c.col));
    std::sort(out.begin(), out.end());
    return out;
  }

  // Cell number i in the canonical numbering anchored at 1: the smallest-row
  // representative is cell 1 and numbers advance southeast, gaining the
  // density per (n,n)-translation.
  Cell cell(Int i) const {
    Int m = density();
    Int k = floor_div(i - 1, m);
    return translated(cells_[static_cast<std::size_t>(i - 1 - k * m)], k, n_);
  }

  friend bool operator==(const Stream&, const Stream&) = default;

 private:
  int n_;
  std::vector<Cell> cells_;
};

namespace detail {
inline std::vector<Int> residue_row(Int n, const Row& xs, const char* what) {
  std::vector<int> reps;
  reps.reserve(xs.size());
  for (Int x : xs) reps.push_back(static_cast<int>(x));
  check_residue_set(static_cast<int>(n), reps, what);
  std::vector<Int> sorted(xs);
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}
}  // namespace detail

// The unique stream with row classes A, column classes B and altitude r:
// with row representatives a_1 < ... < a_m and column representatives
// b_1 < ... < b_m in [1..n], extended by b_{i+m} = b_i + n, row a_i is
// paired with column b_{i+r}.
inline Stream make_stream(Int n, const Row& A, const Row& B, Int r) {
  std::vector<Int> a = detail::residue_row(n, A, "stream rows");
  std::vector<Int> b = detail::residue_row(n, B, "stream columns");
  if (a.size() != b.size())
    throw size_mismatch_error("stream data needs equally many rows and columns");
  Int m = static_cast<Int>(a.size());
  std::vector<Cell> cells;
  for (Int i = 1; i <= m; ++i) {
    Int j = i + r;
    Int q = floor_div(j - 1, m);
    cells.push_back(Cell{a[static_cast<std::size_t>(i - 1)],
                         b[static_cast<std::size_t>(j - 1 - q * m)] + q * n});
  }
  return Stream(n, std::move(cells));
}

// Sum of block diagonal numbers over one representative per translation
// class; make_stream(n, A, B, r) has altitude r.
inline Int altitude(const Stream& S) {
  Int total = 0;
  for (const Cell& c : S.cells()) total += block_diagonal(S.n(), c);
  return total;
}

// A stream with a proper numbering: cell i+1 is the southeast neighbour of
// cell i and the canonical representative with the smallest row carries the
// number `anchor`.
struct NumberedStream {
  Stream stream;
  Int anchor = 1;

  Int density() const { return stream.density(); }
  Cell cell(Int i) const { return stream.cell(i - anchor + 1); }
};

// Largest index i with S's cell i strictly northwest of t. The set of such
// indices is a down-set because a properly numbered stream strictly
// increases in both coordinates.
inline Int nw_bound(const NumberedStream& S, Cell t) {
  const std::vector<Cell>& cells = S.stream.cells();
  Int m = S.density();
  Int n = S.stream.n();
  std::optional<Int> best;
  for (Int j = 0; j < m; ++j) {
    const Cell& s = cells[static_cast<std::size_t>(j)];
    Int k = std::min(floor_div(t.row - s.row - 1, n),
                     floor_div(t.col - s.col - 1, n));
    Int i = S.anchor + j + k * m;
    if (!best || i > *best) best = i;
  }
  return *best;
}

// The unique proper numbering of T such that cell i of S is northwest of
// cell i of T for every i, while some cell j+1 of S is not northwest of
// cell j of T. Periodicity makes a proper numbering rigid, so the anchor is
// the minimum over representatives t of nw_bound(S, t) minus the offset of
// t within T.
inline NumberedStream backward_numbering(const Stream& T,
                                         const NumberedStream& S) {
  if (T.n() != S.stream.n() || T.density() != S.density())
    throw size_mismatch_error(
        "backward numbering needs equal moduli and densities");
  auto shares = [](const Row& u, const Row& v) {
    std::vector<Int> common;
    std::set_intersection(u.begin(), u.end(), v.begin(), v.end(),
                          std::back_inserter(common));
    return !common.empty();
  };
  if (shares(T.row_residues(), S.stream.row_residues()))
    throw shared_row_or_column_error("streams share a row class");
  if (shares(T.col_residues(), S.stream.col_residues()))
    throw shared_row_or_column_error("streams share a column class");

  Int m = T.density();
  std::optional<Int> anchor;
  for (Int j = 0; j < m; ++j) {
    Int c = nw_bound(S, T.cells()[static_cast<std::size_t>(j)]) - j;
    if (!anchor || c < *anchor) anchor = c;
  }
  NumberedStream numbered{T, *anchor};
  // The defining conditions; one period suffices since both streams shift
  // by (n,n) as numbers advance by m. Rows and columns are disjoint, so
  // weak and strict northwest agree.
  bool tight = false;
  for (Int i = *anchor; i < *anchor + m; ++i) {
    require(strictly_northwest(S.cell(i), numbered.cell(i)),
            "backward numbering is dominated by the source stream");
    tight = tight || !strictly_northwest(S.cell(i + 1), numbered.cell(i));
  }
  require(tight, "backward numbering is maximal");
  return numbered;
}

// T is concurrent to S when, under the backward numbering of T against S,
// some cell i of T lies north of cell i+1 of S and some cell j of T lies
// west of cell j+1 of S.
inline bool is_concurrent(const Stream& T, const Stream& S) {
  NumberedStream source{S};
  NumberedStream numbered = backward_numbering(T, source);
  bool north = false, west = false;
  for (Int i = numbered.anchor; i < numbered.anchor + numbered.density();
       ++i) {
    Cell t = numbered.cell(i);
    Cell s = source.cell(i + 1);
    north = north || direction_compare(t, s, Dir::N);
    west = west || direction_compare(t, s, Dir::W);
  }
  return north && west;
}

// The unique r with st_r(A2, B2) concurrent to st_0(A, B). The offset is
// bounded by the common density, so scanning [-n, n] always finds it;
// anything other than exactly one hit signals a bug.
inline Int concurrency_offset(Int n, const Row& A, const Row& B, const Row& A2,
                              const Row& B2) {
  std::vector<Int> a = detail::residue_row(n, A, "stream rows");
  std::vector<Int> a2 = detail::residue_row(n, A2, "stream rows");
  std::vector<Int> b = detail::residue_row(n, B, "stream columns");
  std::vector<Int> b2 = detail::residue_row(n, B2, "stream columns");
  if (a.size() != b.size() || a2.size() != b2.size() || a.size() != a2.size())
    throw size_mismatch_error("concurrency offset needs equal densities");
  auto overlap = [](const std::vector<Int>& u, const std::vector<Int>& v) {
    std::vector<Int> common;
    std::set_intersection(u.begin(), u.end(), v.begin(), v.end(),
                          std::back_inserter(common));
    return !common.empty();
  };
  if (overlap(a, a2))
    throw overlapping_data_error("concurrency offset: row classes overlap");
  if (overlap(b, b2))
    throw overlapping_data_error("concurrency offset: column classes overlap");

  Stream S = make_stream(n, A, B, 0);
  std::optional<Int> found;
  for (Int r = -n; r <= n; ++r) {
    if (is_concurrent(make_stream(n, A2, B2, r), S)) {
      require(!found, "concurrency offset is unique");
      found = r;
    }
  }
  require(found.has_value(), "a concurrency offset exists in [-n, n]");
  return *found;
}

namespace detail {
inline void check_same_frame(const Tabloid& P, const Tabloid& Q) {
  if (P.n() != Q.n() || !(P.shape() == Q.shape()))
    throw shape_mismatch_error("tabloids must share modulus and shape");
}
inline void check_adjacent_rows(const Tabloid& P, Int i) {
  if (i < 1 || i >= P.length())
    throw input_error("dominance constant: row index out of range");
  if (P.shape().part(i) != P.shape().part(i + 1))
    throw unequal_rows_error(
        "dominance constant needs equal-length adjacent rows");
}
}  // namespace detail

// Dominance constant r_{i+1}(P, Q) for equal-length adjacent rows, as the
// difference of local charges.
inline Int dominance_constant(const Tabloid& P, const Tabloid& Q, Int i) {
  detail::check_same_frame(P, Q);
  detail::check_adjacent_rows(P, i);
  return local_charge(P, i) - local_charge(Q, i);
}

// The same constant computed independently: the offset making the stream of
// row i+1 (rows from Q, columns from P) concurrent to the stream of row i.
inline Int dominance_constant_via_concurrency(const Tabloid& P,
                                              const Tabloid& Q, Int i) {
  detail::check_same_frame(P, Q);
  detail::check_adjacent_rows(P, i);
  return concurrency_offset(P.n(), Q.row(i), P.row(i), Q.row(i + 1),
                            P.row(i + 1));
}

namespace detail {
inline void check_weight(const Tabloid& P, const Tabloid& Q,
                         const Weight& rho) {
  check_same_frame(P, Q);
  if (static_cast<Int>(rho.size()) != P.length())
    throw shape_mismatch_error("weight length must match the tabloid shape");
}
}  // namespace detail

// rho is dominant for (P, Q) when rho_{i+1} >= rho_i + r_{i+1}(P, Q) for
// every i with equal-length adjacent rows.
inline bool is_dominant(const Tabloid& P, const Tabloid& Q,
                        const Weight& rho) {
  detail::check_weight(P, Q, rho);
  for (Int i = 1; i < P.length(); ++i) {
    if (P.shape().part(i) != P.shape().part(i + 1)) continue;
    if (rho[static_cast<std::size_t>(i)] <
        rho[static_cast<std::size_t>(i - 1)] + dominance_constant(P, Q, i))
      return false;
  }
  return true;
}

// The dominant weight equivalent to rho: within each block of equal parts,
// subtract the accumulated dominance constants, sort increasingly, and add
// them back. Idempotent, and the identity on dominant input.
inline Weight dominant_representative(const Tabloid& P, const Tabloid& Q,
                                      const Weight& rho) {
  detail::check_weight(P, Q, rho);
  Weight result = rho;
  Int len = P.length();
  Int lo = 1;
  while (lo <= len) {
    Int hi = lo;
    while (hi + 1 <= len && P.shape().part(hi + 1) == P.shape().part(lo))
      ++hi;
    std::vector<Int> s(static_cast<std::size_t>(hi - lo + 1), 0);
    for (Int i = lo + 1; i <= hi; ++i)
      s[static_cast<std::size_t>(i - lo)] =
          s[static_cast<std::size_t>(i - lo - 1)] +
          dominance_constant(P, Q, i - 1);
    std::vector<Int> x;
    for (Int i = lo; i <= hi; ++i)
      x.push_back(rho[static_cast<std::size_t>(i - 1)] -
                  s[static_cast<std::size_t>(i - lo)]);
    std::sort(x.begin(), x.end());
    for (Int i = lo; i <= hi; ++i)
      result[static_cast<std::size_t>(i - 1)] =
          x[static_cast<std::size_t>(i - lo)] +
          s[static_cast<std::size_t>(i - lo)];
    lo = hi + 1;
  }
  return result;
}

}  // namespace ambc
