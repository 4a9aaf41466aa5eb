#pragma once

// Cells of the integer lattice in matrix coordinates: rows increase downward,
// columns increase rightward, so north means smaller row and west means
// smaller column. Directional comparisons are weak by default; composite
// directions (northeast, ...) are conjunctions of their two components.
//
// Everything is parameterized by an ambient modulus n > 0. Residues are kept
// as canonical representatives in [1..n]; the "broken" linear order on
// residues is plain integer order on those representatives. Translation
// always means adding k*(n,n) to a cell.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ambc {

using Int = std::int64_t;

// Invalid input data. CLI maps this to exit code 2.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Violated invariant that valid inputs can never trigger. CLI exit code 1.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

struct duplicate_residue_error : input_error {
  explicit duplicate_residue_error(const std::string& what)
      : input_error("DuplicateResidue: " + what) {}
};
struct undefined_position_error : input_error {
  explicit undefined_position_error(const std::string& what)
      : input_error("UndefinedPosition: " + what) {}
};
struct incomplete_tabloid_error : input_error {
  explicit incomplete_tabloid_error(const std::string& what)
      : input_error("IncompleteTabloid: " + what) {}
};
struct size_mismatch_error : input_error {
  explicit size_mismatch_error(const std::string& what)
      : input_error("SizeMismatch: " + what) {}
};
struct shape_mismatch_error : input_error {
  explicit shape_mismatch_error(const std::string& what)
      : input_error("ShapeMismatch: " + what) {}
};
struct unequal_rows_error : input_error {
  explicit unequal_rows_error(const std::string& what)
      : input_error("UnequalRows: " + what) {}
};
struct shared_row_or_column_error : input_error {
  explicit shared_row_or_column_error(const std::string& what)
      : input_error("SharedRowOrColumn: " + what) {}
};
struct overlapping_data_error : input_error {
  explicit overlapping_data_error(const std::string& what)
      : input_error("OverlappingData: " + what) {}
};
struct malformed_fiber_error : input_error {
  explicit malformed_fiber_error(const std::string& what)
      : input_error("MalformedFiber: " + what) {}
};
struct not_rebasable_error : input_error {
  explicit not_rebasable_error(const std::string& what)
      : input_error("NotRebasable: " + what) {}
};
struct empty_permutation_error : input_error {
  explicit empty_permutation_error(const std::string& what)
      : input_error("EmptyPermutation: " + what) {}
};
struct unknown_theorem_error : input_error {
  explicit unknown_theorem_error(const std::string& what)
      : input_error("UnknownTheorem: " + what) {}
};

inline void require(bool ok, const char* what) {
  if (!ok) throw internal_error(std::string("invariant violated: ") + what);
}

constexpr Int floor_div(Int a, Int b) {
  Int q = a / b;
  Int r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

constexpr Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

inline void check_modulus(int n) {
  if (n <= 0) throw input_error("modulus n must be positive");
}

// Canonical representative in [1..n] of x mod n.
constexpr int residue(int n, Int x) {
  return static_cast<int>(x - floor_div(x - 1, n) * n);
}

struct Cell {
  Int row = 0;
  Int col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
  // Lexicographic; used only for deterministic container ordering.
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

constexpr Cell translated(Cell c, Int k, int n) {
  return Cell{c.row + k * n, c.col + k * n};
}

// Block diagonal number of a cell: the (n x n)-block column index minus the
// block row index. Constant on translation classes.
constexpr Int block_diagonal(int n, Cell c) {
  return ceil_div(c.col, n) - ceil_div(c.row, n);
}

enum class Dir { N, S, E, W, NE, NW, SE, SW };

// True when a lies in direction d of b, e.g. direction_compare(a, b, Dir::NW)
// asks whether a is (weakly) northwest of b. strict applies to every
// component of a composite direction.
constexpr bool direction_compare(Cell a, Cell b, Dir d, bool strict = false) {
  auto le = [strict](Int x, Int y) { return strict ? x < y : x <= y; };
  switch (d) {
    case Dir::N: return le(a.row, b.row);
    case Dir::S: return le(b.row, a.row);
    case Dir::W: return le(a.col, b.col);
    case Dir::E: return le(b.col, a.col);
    case Dir::NE: return le(a.row, b.row) && le(b.col, a.col);
    case Dir::NW: return le(a.row, b.row) && le(a.col, b.col);
    case Dir::SE: return le(b.row, a.row) && le(b.col, a.col);
    case Dir::SW: return le(b.row, a.row) && le(a.col, b.col);
  }
  return false;  // unreachable
}

constexpr bool strictly_northwest(Cell a, Cell b) {
  return a.row < b.row && a.col < b.col;
}
constexpr bool strictly_southeast(Cell a, Cell b) {
  return a.row > b.row && a.col > b.col;
}

// Validates that a list of residues is a set of canonical representatives.
inline void check_residue_set(int n, const std::vector<int>& reps,
                              const char* what) {
  check_modulus(n);
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  for (int r : reps) {
    if (r < 1 || r > n)
      throw input_error(std::string(what) + ": residue out of range [1..n]");
    if (seen[static_cast<std::size_t>(r)])
      throw duplicate_residue_error(std::string(what) + ": repeated residue " +
                                    std::to_string(r));
    seen[static_cast<std::size_t>(r)] = 1;
  }
}

}  // namespace ambc
