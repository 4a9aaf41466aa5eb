#pragma once

// Partitions, tabloids and tableaux over the residues [1..n], together with
// the statistics attached to them: the descent invariant tau, Knuth moves,
// superstandard fillings, charge matchings and (local) charge, inversion
// counts, and the shape constant d_lambda.
//
// A tabloid assigns each used residue to a row; within a row only membership
// matters, so rows are stored sorted (ascending = broken order). A tableau
// additionally fixes the order of each row, assigning entries to columns.
// Tabloids may be partial (|lambda| < n); operations that need every residue
// placed say so.

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "lattice.hpp"

namespace ambc {

class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<Int> parts) : parts_(std::move(parts)) {
    for (std::size_t k = 0; k < parts_.size(); ++k) {
      if (parts_[k] < 1)
        throw input_error("partition parts must be positive");
      if (k > 0 && parts_[k] > parts_[k - 1])
        throw input_error("partition parts must be weakly decreasing");
    }
  }

  const std::vector<Int>& parts() const { return parts_; }
  Int length() const { return static_cast<Int>(parts_.size()); }
  // |lambda|, the total number of cells.
  Int size() const {
    return std::accumulate(parts_.begin(), parts_.end(), Int{0});
  }
  // lambda_k for any k >= 1; zero outside the partition.
  Int part(Int k) const {
    return (k >= 1 && k <= length()) ? parts_[k - 1] : 0;
  }

  Partition conjugate() const {
    std::vector<Int> conj;
    for (Int j = 1; j <= part(1); ++j) {
      Int count = 0;
      for (Int p : parts_) count += (p >= j) ? 1 : 0;
      conj.push_back(count);
    }
    return Partition(conj);
  }

  bool operator==(const Partition&) const = default;
  auto operator<=>(const Partition&) const = default;

 private:
  std::vector<Int> parts_;
};

// gcd of the column sizes (equivalently, of the part multiplicities).
inline Int d_lambda(const Partition& shape) {
  Partition conj = shape.conjugate();
  Int g = 0;
  for (Int p : conj.parts()) g = std::gcd(g, p);
  return g;
}

// One row of a tabloid: canonical residues, sorted ascending.
using Row = std::vector<Int>;

// Integer weight vector attached to a shape, one entry per row.
using Weight = std::vector<Int>;

class Tabloid {
 public:
  Tabloid(Int n, Partition shape, const std::vector<std::vector<Int>>& rows)
      : n_(n), shape_(std::move(shape)) {
    check_modulus(n_);
    if (shape_.size() > n_)
      throw shape_mismatch_error("shape holds more entries than residues");
    if (static_cast<Int>(rows.size()) != shape_.length())
      throw shape_mismatch_error("row count differs from shape length");
    std::vector<char> used(static_cast<std::size_t>(n_), 0);
    rows_.reserve(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (static_cast<Int>(rows[k].size()) != shape_.part(static_cast<Int>(k) + 1))
        throw shape_mismatch_error("row " + std::to_string(k + 1) +
                                   " does not match its part");
      Row row;
      row.reserve(rows[k].size());
      for (Int e : rows[k]) {
        Int r = residue(n_, e);
        if (used[static_cast<std::size_t>(r - 1)])
          throw duplicate_residue_error("entry " + std::to_string(r) +
                                        " appears twice");
        used[static_cast<std::size_t>(r - 1)] = 1;
        row.push_back(r);
      }
      std::sort(row.begin(), row.end());
      rows_.push_back(std::move(row));
    }
  }

  Int n() const { return n_; }
  const Partition& shape() const { return shape_; }
  Int length() const { return shape_.length(); }
  const std::vector<Row>& rows() const { return rows_; }
  const Row& row(Int k) const {
    require(k >= 1 && k <= length(), "tabloid row index out of range");
    return rows_[static_cast<std::size_t>(k - 1)];
  }
  // Every residue of [1..n] is placed.
  bool complete() const { return shape_.size() == n_; }

  bool contains(Int value) const { return find_row(value).has_value(); }
  std::optional<Int> find_row(Int value) const {
    Int r = residue(n_, value);
    for (std::size_t k = 0; k < rows_.size(); ++k)
      if (std::binary_search(rows_[k].begin(), rows_[k].end(), r))
        return static_cast<Int>(k) + 1;
    return std::nullopt;
  }
  Int row_of(Int value) const {
    auto k = find_row(value);
    if (!k)
      throw undefined_position_error("residue " +
                                     std::to_string(residue(n_, value)) +
                                     " is not placed");
    return *k;
  }

  bool operator==(const Tabloid&) const = default;
  auto operator<=>(const Tabloid&) const = default;

 private:
  Int n_ = 1;
  Partition shape_;
  std::vector<Row> rows_;
};

// A tabloid whose rows are ordered lists: entry k,j sits in row k, column j.
class Tableau {
 public:
  Tableau(Int n, Partition shape, const std::vector<std::vector<Int>>& rows)
      : n_(n), shape_(std::move(shape)) {
    check_modulus(n_);
    if (shape_.size() > n_)
      throw shape_mismatch_error("shape holds more entries than residues");
    if (static_cast<Int>(rows.size()) != shape_.length())
      throw shape_mismatch_error("row count differs from shape length");
    std::vector<char> used(static_cast<std::size_t>(n_), 0);
    rows_.reserve(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (static_cast<Int>(rows[k].size()) != shape_.part(static_cast<Int>(k) + 1))
        throw shape_mismatch_error("row " + std::to_string(k + 1) +
                                   " does not match its part");
      std::vector<Int> row;
      row.reserve(rows[k].size());
      for (Int e : rows[k]) {
        Int r = residue(n_, e);
        if (used[static_cast<std::size_t>(r - 1)])
          throw duplicate_residue_error("entry " + std::to_string(r) +
                                        " appears twice");
        used[static_cast<std::size_t>(r - 1)] = 1;
        row.push_back(r);
      }
      rows_.push_back(std::move(row));
    }
  }

  Int n() const { return n_; }
  const Partition& shape() const { return shape_; }
  Int length() const { return shape_.length(); }
  const std::vector<std::vector<Int>>& rows() const { return rows_; }
  Int entry(Int k, Int j) const {
    require(k >= 1 && k <= length(), "tableau row index out of range");
    require(j >= 1 && j <= shape_.part(k), "tableau column index out of range");
    return rows_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - 1)];
  }
  // Entries of column j, top to bottom.
  std::vector<Int> column(Int j) const {
    std::vector<Int> col;
    for (Int k = 1; k <= length(); ++k)
      if (shape_.part(k) >= j) col.push_back(entry(k, j));
    return col;
  }

  Tabloid to_tabloid() const { return Tabloid(n_, shape_, rows_); }

  bool operator==(const Tableau&) const = default;
  auto operator<=>(const Tableau&) const = default;

 private:
  Int n_ = 1;
  Partition shape_;
  std::vector<std::vector<Int>> rows_;
};

// Descent set: residues i with i in a strictly higher row than i+1 (cyclic).
inline std::set<Int> tau(const Tabloid& T) {
  if (!T.complete())
    throw incomplete_tabloid_error("tau needs every residue placed");
  std::set<Int> out;
  for (Int i = 1; i <= T.n(); ++i)
    if (T.row_of(i) < T.row_of(i + 1)) out.insert(i);
  return out;
}

inline bool subset_of(const std::set<Int>& x, const std::set<Int>& y) {
  return std::includes(y.begin(), y.end(), x.begin(), x.end());
}
inline bool incomparable_sets(const std::set<Int>& x, const std::set<Int>& y) {
  return !subset_of(x, y) && !subset_of(y, x);
}

// The tabloid with every entry translated by k.
inline Tabloid shift_entries(const Tabloid& T, Int k) {
  std::vector<std::vector<Int>> rows = T.rows();
  for (auto& row : rows)
    for (Int& e : row) e += k;
  return Tabloid(T.n(), T.shape(), rows);
}

// The tabloid with the entries a and b exchanged (rows swapped).
inline Tabloid exchange_entries(const Tabloid& T, Int a, Int b) {
  Int ra = residue(T.n(), a), rb = residue(T.n(), b);
  std::vector<std::vector<Int>> rows = T.rows();
  for (auto& row : rows)
    for (Int& e : row) {
      if (e == ra)
        e = rb;
      else if (e == rb)
        e = ra;
    }
  return Tabloid(T.n(), T.shape(), rows);
}

// Exchange of i and i+1, legal exactly when the descent sets of the two
// tabloids are incomparable under inclusion. Entries in the same row give an
// unchanged tabloid, hence an illegal move.
inline std::optional<Tabloid> tabloid_knuth_move(const Tabloid& T, Int i) {
  if (!T.complete())
    throw incomplete_tabloid_error("Knuth moves need every residue placed");
  Tabloid moved = exchange_entries(T, i, i + 1);
  if (!incomparable_sets(tau(T), tau(moved))) return std::nullopt;
  return moved;
}

inline std::vector<std::pair<Int, Tabloid>> tabloid_knuth_neighbors(
    const Tabloid& T) {
  std::vector<std::pair<Int, Tabloid>> out;
  for (Int i = 1; i <= T.n(); ++i)
    if (auto moved = tabloid_knuth_move(T, i)) out.emplace_back(i, *moved);
  return out;
}

// Last row filled with start, start+1, ..., then the next-to-last row, and
// so on upward.
inline Tabloid reverse_row_superstandard(const Partition& shape, Int start) {
  std::vector<std::vector<Int>> rows(static_cast<std::size_t>(shape.length()));
  Int v = start;
  for (Int k = shape.length(); k >= 1; --k)
    for (Int j = 0; j < shape.part(k); ++j)
      rows[static_cast<std::size_t>(k - 1)].push_back(v++);
  return Tabloid(shape.size(), shape, rows);
}

// Columns filled left to right, each top to bottom, with start, start+1, ...
inline Tableau column_superstandard_tableau(const Partition& shape, Int start) {
  std::vector<std::vector<Int>> rows(static_cast<std::size_t>(shape.length()));
  Partition conj = shape.conjugate();
  Int v = start;
  for (Int j = 1; j <= shape.part(1); ++j)
    for (Int k = 1; k <= conj.part(j); ++k)
      rows[static_cast<std::size_t>(k - 1)].push_back(v++);
  return Tableau(shape.size(), shape, rows);
}

inline Tabloid column_superstandard(const Partition& shape, Int start) {
  return column_superstandard_tableau(shape, start).to_tabloid();
}

// Activation-ordered matching of a row into the row below: each activated
// entry takes the smallest untaken larger entry, or wraps to the smallest
// untaken one. Returned in activation order.
inline std::vector<std::pair<Int, Int>> charge_matching(
    const Row& top, const Row& bottom, const std::vector<Int>& activation) {
  if (top.size() != bottom.size())
    throw unequal_rows_error("charge matching needs rows of equal size");
  {
    std::vector<Int> sorted = activation;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != top)
      throw input_error("activation ordering must list the top row");
  }
  std::vector<char> taken(bottom.size(), 0);
  std::vector<std::pair<Int, Int>> out;
  out.reserve(top.size());
  for (Int a : activation) {
    std::size_t pick = bottom.size();
    for (std::size_t j = 0; j < bottom.size(); ++j)
      if (!taken[j] && bottom[j] > a) {
        pick = j;
        break;
      }
    if (pick == bottom.size())
      for (std::size_t j = 0; j < bottom.size(); ++j)
        if (!taken[j]) {
          pick = j;
          break;
        }
    taken[pick] = 1;
    out.emplace_back(a, bottom[pick]);
  }
  return out;
}

inline std::vector<std::pair<Int, Int>> charge_matching(const Row& top,
                                                        const Row& bottom) {
  return charge_matching(top, bottom, top);
}

// Number of matched pairs between rows k and k+1 whose top entry exceeds its
// partner. Zero by convention when the rows have different sizes; the value
// does not depend on the activation ordering.
inline Int local_charge(const Tabloid& T, Int k,
                        const std::vector<Int>& activation) {
  require(k >= 1 && k < T.length(), "local charge needs two adjacent rows");
  if (T.shape().part(k) != T.shape().part(k + 1)) return 0;
  Int count = 0;
  for (const auto& [a, b] : charge_matching(T.row(k), T.row(k + 1), activation))
    count += (a > b) ? 1 : 0;
  return count;
}

inline Int local_charge(const Tabloid& T, Int k) {
  require(k >= 1 && k < T.length(), "local charge needs two adjacent rows");
  return local_charge(T, k, T.row(k));
}

// Row-weighted sum of the local charges.
inline Int charge(const Tabloid& T) {
  if (!T.complete())
    throw incomplete_tabloid_error("charge needs every residue placed");
  Int total = 0;
  for (Int k = 1; k < T.length(); ++k) total += k * local_charge(T, k);
  return total;
}

// Pairs i < j with i placed strictly below j.
inline Int inversion_count(const Tabloid& T) {
  Int count = 0;
  for (Int i = 1; i <= T.n(); ++i) {
    auto ri = T.find_row(i);
    if (!ri) continue;
    for (Int j = i + 1; j <= T.n(); ++j) {
      auto rj = T.find_row(j);
      if (rj && *ri > *rj) ++count;
    }
  }
  return count;
}

// Sum of the even-indexed parts.
inline Int inversion_count(const Partition& shape) {
  Int total = 0;
  for (Int k = 2; k <= shape.length(); k += 2) total += shape.part(k);
  return total;
}

// Sum of the weight entries on odd-length rows.
inline Int weight_inversions(const Partition& shape, const Weight& rho) {
  if (static_cast<Int>(rho.size()) != shape.length())
    throw size_mismatch_error("weight length differs from shape length");
  Int total = 0;
  for (Int k = 1; k <= shape.length(); ++k)
    if (shape.part(k) % 2 != 0) total += rho[static_cast<std::size_t>(k - 1)];
  return total;
}

}  // namespace ambc
