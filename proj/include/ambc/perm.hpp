#pragma once

// Extended affine permutations on n letters: bijections w of Z with
// w(i + n) = w(i) + n, no constraint on the sum of displacements. A window
// [w(1), ..., w(n)] determines w. Partial permutations relax totality: the
// domain is a translation-closed set of residue classes, and distinct defined
// positions still occupy distinct residue classes of values.
//
// The graph of w is the set of balls (i, w(i)) in matrix coordinates. All
// per-class data below is stored on the fundamental window, rows 1..n.

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ambc/lattice.hpp"

namespace ambc {

class PartialPermutation {
 public:
  explicit PartialPermutation(int n) : n_(n), window_(check_size(n)) {}

  static PartialPermutation from_balls(int n, const std::vector<Cell>& balls) {
    PartialPermutation w(n);
    for (const Cell& b : balls) w.define(b.row, b.col);
    return w;
  }

  int n() const { return n_; }

  bool defined(Int i) const { return entry(i).has_value(); }

  std::optional<Int> value_at(Int i) const {
    auto v = entry(i);
    if (!v) return std::nullopt;
    Int k = floor_div(i - 1, n_);
    return *v + k * n_;
  }

  Int operator()(Int i) const {
    auto v = value_at(i);
    if (!v)
      throw undefined_position_error("w(" + std::to_string(i) +
                                     ") is undefined");
    return *v;
  }

  // Defines w(i) = v, translating (i, v) into the fundamental window first.
  void define(Int i, Int v) {
    Int k = floor_div(i - 1, n_);
    int r = residue(n_, i);
    Int value = v - k * n_;
    if (window_[static_cast<std::size_t>(r - 1)])
      throw duplicate_residue_error("row residue " + std::to_string(r) +
                                    " defined twice");
    int vr = residue(n_, value);
    for (const auto& existing : window_)
      if (existing && residue(n_, *existing) == vr)
        throw duplicate_residue_error("column residue " + std::to_string(vr) +
                                      " used twice");
    window_[static_cast<std::size_t>(r - 1)] = value;
  }

  // Number of defined residue classes.
  int size() const {
    int c = 0;
    for (const auto& v : window_)
      if (v) ++c;
    return c;
  }

  bool empty() const { return size() == 0; }
  bool total() const { return size() == n_; }

  // One ball per defined class, row in [1..n], sorted by row.
  std::vector<Cell> balls() const {
    std::vector<Cell> out;
    for (int i = 1; i <= n_; ++i)
      if (window_[static_cast<std::size_t>(i - 1)])
        out.push_back(Cell{i, *window_[static_cast<std::size_t>(i - 1)]});
    return out;
  }

  std::vector<int> defined_rows() const {
    std::vector<int> out;
    for (int i = 1; i <= n_; ++i)
      if (window_[static_cast<std::size_t>(i - 1)]) out.push_back(i);
    return out;
  }

  friend bool operator==(const PartialPermutation&,
                         const PartialPermutation&) = default;

 private:
  static std::size_t check_size(int n) {
    check_modulus(n);
    return static_cast<std::size_t>(n);
  }

  PartialPermutation(int n, std::vector<std::optional<Int>> window)
      : n_(n), window_(std::move(window)) {}

  const std::optional<Int>& entry(Int i) const {
    return window_[static_cast<std::size_t>(residue(n_, i) - 1)];
  }

  int n_;
  std::vector<std::optional<Int>> window_;  // window_[r-1] = w(r), r in 1..n

  friend class AffinePermutation;
};

class AffinePermutation {
 public:
  AffinePermutation(int n, std::vector<Int> window)
      : n_(n), window_(std::move(window)) {
    check_modulus(n_);
    if (window_.size() != static_cast<std::size_t>(n_))
      throw size_mismatch_error("window has " +
                                std::to_string(window_.size()) +
                                " entries, expected " + std::to_string(n_));
    std::vector<int> reps;
    reps.reserve(window_.size());
    for (Int v : window_) reps.push_back(residue(n_, v));
    check_residue_set(n_, reps, "window values");
  }

  static AffinePermutation identity(int n) {
    std::vector<Int> w(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) w[static_cast<std::size_t>(i - 1)] = i;
    return AffinePermutation(n, std::move(w));
  }

  int n() const { return n_; }
  const std::vector<Int>& window() const { return window_; }

  Int operator()(Int i) const {
    Int k = floor_div(i - 1, n_);
    return window_[static_cast<std::size_t>(residue(n_, i) - 1)] + k * n_;
  }

  PartialPermutation partial() const {
    PartialPermutation p(n_);
    for (int i = 1; i <= n_; ++i)
      p.window_[static_cast<std::size_t>(i - 1)] =
          window_[static_cast<std::size_t>(i - 1)];
    return p;
  }

  std::vector<Cell> balls() const { return partial().balls(); }

  friend bool operator==(const AffinePermutation&,
                         const AffinePermutation&) = default;
  // Lexicographic on (n, window); for deterministic containers.
  friend auto operator<=>(const AffinePermutation&,
                          const AffinePermutation&) = default;

 private:
  int n_;
  std::vector<Int> window_;
};

// Window notation strings look like "[4,1,6,11,2,3]"; whitespace after
// brackets and commas is tolerated on input and never produced on output.
inline std::string window_string(const AffinePermutation& w) {
  std::string out = "[";
  for (int i = 0; i < w.n(); ++i) {
    if (i) out += ",";
    out += std::to_string(w.window()[static_cast<std::size_t>(i)]);
  }
  out += "]";
  return out;
}

inline AffinePermutation parse_window(int n, const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw input_error("window must be bracketed, like [2,1,3]");
  std::vector<Int> values;
  std::string body = s.substr(1, s.size() - 2);
  if (!body.empty()) {
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      Int v = 0;
      try {
        v = std::stoll(item, &used);
      } catch (const std::exception&) {
        throw input_error("bad window entry '" + item + "'");
      }
      if (used != item.size())
        throw input_error("bad window entry '" + item + "'");
      values.push_back(v);
    }
  }
  return AffinePermutation(n, std::move(values));
}

inline AffinePermutation inverse(const AffinePermutation& w) {
  std::vector<Int> inv(static_cast<std::size_t>(w.n()));
  for (int j = 1; j <= w.n(); ++j) {
    Int v = w(j);
    int r = residue(w.n(), v);
    inv[static_cast<std::size_t>(r - 1)] = j - (v - r);
  }
  return AffinePermutation(w.n(), std::move(inv));
}

inline Int shift_sum(const AffinePermutation& w) {
  Int s = 0;
  for (int i = 1; i <= w.n(); ++i) s += w(i) - i;
  return s;
}

// Residues i with w(i) > w(i+1).
inline std::set<int> right_descents(const AffinePermutation& w) {
  std::set<int> out;
  for (int i = 1; i <= w.n(); ++i)
    if (w(i) > w(i + 1)) out.insert(i);
  return out;
}

inline std::set<int> left_descents(const AffinePermutation& w) {
  return right_descents(inverse(w));
}

// Translation classes of ball pairs (a, b) with a strictly northeast of b,
// counted as pairs (i, j), i in [1..n], j > i, w(i) > w(j). For fixed row
// residues the admissible translates form an integer interval, counted in
// closed form.
inline Int inversion_count(const AffinePermutation& w) {
  Int total = 0;
  for (int i = 1; i <= w.n(); ++i) {
    for (int c = 1; c <= w.n(); ++c) {
      // j = c + k*n with j > i and w(j) = w(c) + k*n < w(i).
      Int k_min = floor_div(i - c, w.n()) + 1;
      Int k_max = ceil_div(w(i) - w(c), w.n()) - 1;
      if (k_max >= k_min) total += k_max - k_min + 1;
    }
  }
  return total;
}

inline int sign(const AffinePermutation& w) {
  return inversion_count(w) % 2 == 0 ? 1 : -1;
}

namespace detail {
inline bool numerically_between(Int x, Int a, Int b) {
  return std::min(a, b) < x && x < std::max(a, b);
}
}  // namespace detail

// Exchanges w(j) and w(j+1) for every j congruent to i, provided one of
// w(i-1), w(i+2) lies numerically between w(i) and w(i+1) on either side of
// the exchange. Returns nothing when the exchange is not a legal move. The
// position is read mod n. For n >= 3 the witness balls are untouched by the
// exchange, so checking the source suffices; for n <= 2 they are translates
// of the exchanged pair and the swapped window must be checked too, or the
// relation would not be symmetric.
inline std::optional<AffinePermutation> knuth_move(const AffinePermutation& w,
                                                   Int i) {
  int n = w.n();
  int r = residue(n, i);  // the move depends on the position mod n only
  Int a = w(r);
  Int b = w(r + 1);
  std::vector<Int> win = w.window();
  auto put = [&](Int pos, Int value) {
    Int k = floor_div(pos - 1, n);
    win[static_cast<std::size_t>(residue(n, pos) - 1)] = value - k * n;
  };
  put(r, b);
  put(r + 1, a);
  AffinePermutation moved(n, std::move(win));
  if (!detail::numerically_between(w(r - 1), a, b) &&
      !detail::numerically_between(w(r + 2), a, b) &&
      !detail::numerically_between(moved(r - 1), a, b) &&
      !detail::numerically_between(moved(r + 2), a, b))
    return std::nullopt;
  return moved;
}

inline std::vector<std::pair<int, AffinePermutation>> knuth_neighbors(
    const AffinePermutation& w) {
  std::vector<std::pair<int, AffinePermutation>> out;
  for (int i = 1; i <= w.n(); ++i)
    if (auto moved = knuth_move(w, i)) out.emplace_back(i, std::move(*moved));
  return out;
}

// Partial-permutation form. All four of w(i-1), w(i), w(i+1), w(i+2) must be
// defined; the move itself and the legality witnesses need them. As above,
// the witness may sit on either side of the exchange.
inline std::optional<PartialPermutation> knuth_move(
    const PartialPermutation& w, Int i) {
  for (Int pos : {i - 1, i, i + 1, i + 2})
    if (!w.defined(pos))
      throw undefined_position_error("knuth_move needs w(" +
                                     std::to_string(pos) + ")");
  Int a = w(i);
  Int b = w(i + 1);
  PartialPermutation out(w.n());
  for (const Cell& ball : w.balls()) {
    Int r = ball.row;
    if (residue(w.n(), r) == residue(w.n(), i))
      out.define(r, w(r + 1));
    else if (residue(w.n(), r) == residue(w.n(), i + 1))
      out.define(r, w(r - 1));
    else
      out.define(r, ball.col);
  }
  if (!detail::numerically_between(w(i - 1), a, b) &&
      !detail::numerically_between(w(i + 2), a, b) &&
      !detail::numerically_between(out(i - 1), a, b) &&
      !detail::numerically_between(out(i + 2), a, b))
    return std::nullopt;
  return out;
}

}  // namespace ambc
