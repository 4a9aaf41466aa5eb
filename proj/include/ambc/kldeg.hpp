#pragma once

// The Knuth-move graph on complete tabloids of a fixed shape, the charge
// classification of its connected components, and the lattice of weight
// changes observable along closed walks: membership and generators, the
// Diophantine basis behind them, column rebases and column cycles with their
// closed-form weight changes, and the explicit generator loops.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "tabloid.hpp"

namespace ambc {

namespace detail {

inline void add_scaled(Weight& v, const Weight& w, Int scale) {
  require(v.size() == w.size(), "weight lengths agree");
  for (std::size_t t = 0; t < v.size(); ++t) v[t] += scale * w[t];
}

}  // namespace detail

// 1 on the first count coordinates of a length-rows weight, 0 after.
inline Weight prefix_weight(Int rows, Int count) {
  if (rows < 0 || count < 0 || count > rows)
    throw input_error("prefix length out of range");
  Weight out(static_cast<std::size_t>(rows), 0);
  for (Int t = 0; t < count; ++t) out[static_cast<std::size_t>(t)] = 1;
  return out;
}

// Ascending prefix sums of the part multiplicities; equivalently the distinct
// column lengths of the shape.
inline std::vector<Int> part_multiplicity_sums(const Partition& shape) {
  std::vector<Int> out;
  for (Int k = 1; k <= shape.length(); ++k)
    if (k == shape.length() || shape.part(k) > shape.part(k + 1))
      out.push_back(k);
  return out;
}

// Membership in the lattice of weight changes: zero coordinate sum and
// constancy on blocks of equal parts characterize the integer combinations
// of the prefix vectors with zero-weighted coefficient sum.
inline bool gup_contains(const Partition& shape, const Weight& v) {
  if (static_cast<Int>(v.size()) != shape.length())
    throw shape_mismatch_error("weight length differs from shape length");
  Int sum = 0;
  for (Int x : v) sum += x;
  if (sum != 0) return false;
  for (Int k = 1; k < shape.length(); ++k)
    if (shape.part(k) == shape.part(k + 1) &&
        v[static_cast<std::size_t>(k - 1)] != v[static_cast<std::size_t>(k)])
      return false;
  return true;
}

// One lattice generator per pair i < j of distinct part sizes, with prefix
// sums m_i < m_j and g = gcd: (m_j/g) on the first block minus (m_i/g) on
// the second.
inline std::vector<Weight> gup_generators(const Partition& shape) {
  std::vector<Int> ms = part_multiplicity_sums(shape);
  std::vector<Weight> out;
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      Int g = std::gcd(ms[i], ms[j]);
      Weight v = prefix_weight(shape.length(), ms[i]);
      for (Int& x : v) x *= ms[j] / g;
      detail::add_scaled(v, prefix_weight(shape.length(), ms[j]), -(ms[i] / g));
      out.push_back(std::move(v));
    }
  return out;
}

// Pairwise solutions of sum(m_i * x_i) = 0: the vector for i < j carries
// -m_j/g at i and m_i/g at j. Together they span the full solution lattice.
inline std::vector<std::vector<Int>> diophantine_basis(
    const std::vector<Int>& ms) {
  if (ms.empty()) throw input_error("diophantine basis needs coefficients");
  for (Int m : ms)
    if (m <= 0) throw input_error("diophantine coefficients must be positive");
  std::vector<std::vector<Int>> out;
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      Int g = std::gcd(ms[i], ms[j]);
      std::vector<Int> x(ms.size(), 0);
      x[i] = -ms[j] / g;
      x[j] = ms[i] / g;
      out.push_back(std::move(x));
    }
  return out;
}

// Row-style Hermite form of the span of the given vectors: echelon rows with
// positive pivots, entries above each pivot reduced into [0, pivot). The
// form is canonical, so two spans are equal iff their forms are.
inline std::vector<std::vector<Int>> hermite_basis(
    std::vector<std::vector<Int>> rows) {
  if (rows.empty()) return rows;
  std::size_t cols = rows[0].size();
  for (const auto& row : rows)
    if (row.size() != cols)
      throw size_mismatch_error("hermite rows must have equal length");
  auto magnitude = [](Int x) { return x < 0 ? -x : x; };
  std::size_t top = 0;
  for (std::size_t c = 0; c < cols && top < rows.size(); ++c) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t a = top; a < rows.size(); ++a)
        if (rows[a][c] != 0 && (best == rows.size() ||
                                magnitude(rows[a][c]) < magnitude(rows[best][c])))
          best = a;
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool settled = true;
      for (std::size_t a = top + 1; a < rows.size(); ++a) {
        if (rows[a][c] == 0) continue;
        Int q = rows[a][c] / rows[top][c];
        for (std::size_t t = 0; t < cols; ++t) rows[a][t] -= q * rows[top][t];
        if (rows[a][c] != 0) settled = false;
      }
      if (settled) break;
    }
    if (rows[top][c] == 0) continue;
    if (rows[top][c] < 0)
      for (Int& x : rows[top]) x = -x;
    for (std::size_t a = 0; a < top; ++a) {
      Int q = floor_div(rows[a][c], rows[top][c]);
      for (std::size_t t = 0; t < cols; ++t) rows[a][t] -= q * rows[top][t];
    }
    ++top;
  }
  rows.resize(top);
  return rows;
}

// Membership of v in the row span of a Hermite form produced above.
inline bool lattice_contains(const std::vector<std::vector<Int>>& basis,
                             std::vector<Int> v) {
  for (const auto& row : basis) {
    if (row.size() != v.size())
      throw size_mismatch_error("vector length differs from the lattice");
    std::size_t c = 0;
    while (c < row.size() && row[c] == 0) ++c;
    if (c == row.size()) continue;
    if (v[c] % row[c] != 0) return false;
    Int q = v[c] / row[c];
    for (std::size_t t = 0; t < v.size(); ++t) v[t] -= q * row[t];
  }
  return std::all_of(v.begin(), v.end(), [](Int x) { return x == 0; });
}

inline bool same_lattice(const std::vector<std::vector<Int>>& a,
                         const std::vector<std::vector<Int>>& b) {
  return hermite_basis(a) == hermite_basis(b);
}

enum class RebaseDirection { forward, backward };

namespace detail {

struct RebaseProfile {
  Int i = 0;  // the long column's interval starts at residue i+1
  Int k = 0;  // excess length of the long column
  Int l = 0;  // length of the short column
};

// Validates the interval fill pattern of the two columns. Forward starts
// from c1 = i+1..i+k+l and c2 = i+k+l+1..i+k+2l (top to bottom); backward
// starts from the rotated state c2 = i+1..i+l, c1 = i+l+1..i+k+2l.
inline RebaseProfile rebase_profile(const Tableau& t, Int c1, Int c2,
                                    RebaseDirection dir) {
  if (t.shape().size() != t.n())
    throw incomplete_tabloid_error("column rebases need every residue placed");
  if (c1 < 1 || c2 < 1) throw input_error("column indices must be positive");
  if (c1 == c2) throw input_error("column rebases need distinct columns");
  Partition conj = t.shape().conjugate();
  Int len1 = conj.part(c1), len2 = conj.part(c2);
  if (len2 < 1) throw not_rebasable_error("the second column is empty");
  if (len1 < len2)
    throw not_rebasable_error("the first column is shorter than the second");
  RebaseProfile p{0, len1 - len2, len2};
  std::vector<Int> col1 = t.column(c1), col2 = t.column(c2);
  Int n = t.n();
  auto consecutive = [n](const std::vector<Int>& col, Int from) {
    for (std::size_t s = 0; s < col.size(); ++s)
      if (col[s] != residue(n, from + static_cast<Int>(s))) return false;
    return true;
  };
  p.i = (dir == RebaseDirection::forward) ? col1[0] - 1 : col2[0] - 1;
  bool ok = (dir == RebaseDirection::forward)
                ? consecutive(col1, p.i + 1) &&
                      consecutive(col2, p.i + p.k + p.l + 1)
                : consecutive(col2, p.i + 1) && consecutive(col1, p.i + p.l + 1);
  if (!ok)
    throw not_rebasable_error("columns do not hold consecutive intervals");
  return p;
}

// The residue whose exchange with its successor turns a into b, or nothing
// when the tabloids are equal. Any other difference violates an invariant.
inline std::optional<Int> knuth_step(const Tabloid& a, const Tabloid& b) {
  if (a == b) return std::nullopt;
  for (Int x = 1; x <= a.n(); ++x) {
    auto moved = tabloid_knuth_move(a, x);
    if (moved && *moved == b) return x;
  }
  require(false, "consecutive walk tabloids differ by a Knuth move");
  return std::nullopt;
}

// Weight delta of one Knuth step evaluated at the tabloid before it: the
// exchange of the top residue with 1 moves one unit from the row of n to the
// row of 1; every other exchange leaves the weight unchanged.
inline Weight knuth_step_weight_delta(const Tabloid& before, Int exchanged) {
  Weight delta(static_cast<std::size_t>(before.length()), 0);
  if (residue(before.n(), exchanged) == before.n()) {
    delta[static_cast<std::size_t>(before.row_of(before.n()) - 1)] -= 1;
    delta[static_cast<std::size_t>(before.row_of(1) - 1)] += 1;
  }
  return delta;
}

// Sum of the per-step deltas along a tableau walk.
inline Weight walk_weight_change(const std::vector<Tableau>& walk) {
  require(!walk.empty(), "walks are nonempty");
  Weight total(static_cast<std::size_t>(walk.front().length()), 0);
  for (std::size_t s = 0; s + 1 < walk.size(); ++s) {
    Tabloid a = walk[s].to_tabloid();
    if (auto x = knuth_step(a, walk[s + 1].to_tabloid()))
      add_scaled(total, knuth_step_weight_delta(a, *x), 1);
  }
  return total;
}

}  // namespace detail

// The swap sequence of the rebase: step j exchanges the entries at positions
// ((k+l)m - j + 1, c1) and (m, c2) where m = ceil(j / (k+l)); the backward
// direction replays the steps in reverse from the rotated end state. Every
// step is trivial or a Knuth move on the underlying tabloids, and the end
// state rotates the two intervals so the short column leads.
inline std::vector<Tableau> column_rebase(const Tableau& t, Int c1, Int c2,
                                          RebaseDirection dir) {
  detail::RebaseProfile p = detail::rebase_profile(t, c1, c2, dir);
  Int total = (p.k + p.l) * p.l;
  std::vector<Tableau> out;
  out.reserve(static_cast<std::size_t>(total) + 1);
  out.push_back(t);
  std::vector<std::vector<Int>> rows = t.rows();
  for (Int step = 1; step <= total; ++step) {
    Int j = (dir == RebaseDirection::forward) ? step : total - step + 1;
    Int m = ceil_div(j, p.k + p.l);
    Int r = (p.k + p.l) * m - j + 1;
    std::swap(
        rows[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c1 - 1)],
        rows[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(c2 - 1)]);
    out.emplace_back(t.n(), t.shape(), rows);
  }
  for (std::size_t s = 0; s + 1 < out.size(); ++s)
    detail::knuth_step(out[s].to_tabloid(), out[s + 1].to_tabloid());
  const Tableau& last = out.back();
  Int n = t.n();
  std::vector<Int> shortcol = last.column(c2), longcol = last.column(c1);
  for (std::size_t s = 0; s < shortcol.size(); ++s)
    require(shortcol[s] ==
                residue(n, p.i + ((dir == RebaseDirection::forward)
                                      ? 1 + static_cast<Int>(s)
                                      : p.k + p.l + 1 + static_cast<Int>(s))),
            "rebases rotate the short column's interval");
  for (std::size_t s = 0; s < longcol.size(); ++s)
    require(longcol[s] ==
                residue(n, p.i + ((dir == RebaseDirection::forward)
                                      ? p.l + 1 + static_cast<Int>(s)
                                      : 1 + static_cast<Int>(s))),
            "rebases rotate the long column's interval");
  return out;
}

namespace detail {

// The l cells cyclically following the cell of residue 1 within the two
// columns, counted per row; the cyclic order climbs the long column bottom
// to top, then the short one. Equals the prefix weight when 1 is elsewhere.
// Evaluated at the forward start tableau.
inline Weight rebase_displacement(const Tableau& t, Int c1, Int c2,
                                  const RebaseProfile& p) {
  std::vector<std::pair<Int, Int>> ring;
  for (Int r = p.k + p.l; r >= 1; --r) ring.emplace_back(r, c1);
  for (Int r = p.l; r >= 1; --r) ring.emplace_back(r, c2);
  std::size_t at = ring.size();
  for (std::size_t s = 0; s < ring.size(); ++s)
    if (t.entry(ring[s].first, ring[s].second) == 1) at = s;
  if (at == ring.size()) return prefix_weight(t.length(), p.l);
  Weight out(static_cast<std::size_t>(t.length()), 0);
  for (Int step = 1; step <= p.l; ++step) {
    const auto& cell = ring[(at + static_cast<std::size_t>(step)) % ring.size()];
    out[static_cast<std::size_t>(cell.first - 1)] += 1;
  }
  return out;
}

}  // namespace detail

// Weight change along the rebase: prefix weight minus displacement at the
// forward start, negated for the backward direction, and checked against the
// sum of the per-step Knuth deltas.
inline Weight rebase_weight_change(
    const Tableau& t, Int c1, Int c2,
    RebaseDirection dir = RebaseDirection::forward) {
  std::vector<Tableau> walk = column_rebase(t, c1, c2, dir);
  const Tableau& start =
      (dir == RebaseDirection::forward) ? walk.front() : walk.back();
  detail::RebaseProfile p =
      detail::rebase_profile(start, c1, c2, RebaseDirection::forward);
  Weight closed = prefix_weight(t.length(), p.l);
  detail::add_scaled(closed, detail::rebase_displacement(start, c1, c2, p), -1);
  if (dir == RebaseDirection::backward)
    for (Int& x : closed) x = -x;
  require(closed == detail::walk_weight_change(walk),
          "rebase weight change closed form matches the step sum");
  return closed;
}

// The cycle around column j: forward rebases against the earlier columns
// (j-1, j), ..., (1, j), then backward rebases against the later ones
// (j, last), ..., (j, j+1). The walk ends column superstandard with the
// start advanced by the column's length; the backward direction replays the
// whole walk in reverse.
inline std::vector<Tableau> column_cycle(const Tableau& t, Int j,
                                         RebaseDirection dir) {
  Int width = t.shape().part(1);
  if (j < 1 || j > width) throw input_error("cycle column out of range");
  if (t.shape().size() != t.n())
    throw incomplete_tabloid_error("column cycles need every residue placed");
  Int start = t.entry(1, 1);
  if (!(t == column_superstandard_tableau(t.shape(), start)))
    throw input_error("column cycles start at column superstandard tableaux");
  Partition conj = t.shape().conjugate();
  if (dir == RebaseDirection::backward) {
    std::vector<Tableau> walk = column_cycle(
        column_superstandard_tableau(t.shape(), start - conj.part(j)), j,
        RebaseDirection::forward);
    require(walk.back() == t, "reverse cycles end at their base");
    std::reverse(walk.begin(), walk.end());
    return walk;
  }
  std::vector<Tableau> walk{t};
  auto extend = [&walk](std::vector<Tableau> leg) {
    walk.insert(walk.end(), std::make_move_iterator(leg.begin() + 1),
                std::make_move_iterator(leg.end()));
  };
  for (Int c = j - 1; c >= 1; --c)
    extend(column_rebase(walk.back(), c, j, RebaseDirection::forward));
  for (Int c = width; c >= j + 1; --c)
    extend(column_rebase(walk.back(), j, c, RebaseDirection::backward));
  require(walk.back() ==
              column_superstandard_tableau(t.shape(), start + conj.part(j)),
          "column cycles advance the start by the column length");
  return walk;
}

// The k cells cyclically following the cell of residue 1, counted per row.
// The cyclic order climbs each column bottom to top and wraps from a
// column's top to the bottom of the previous column; the first column wraps
// to the last. Defined at column superstandard tableaux.
inline Weight cycle_displacement(const Tableau& t, Int k) {
  if (t.shape().size() != t.n())
    throw incomplete_tabloid_error(
        "cycle displacement needs every residue placed");
  if (!(t == column_superstandard_tableau(t.shape(), t.entry(1, 1))))
    throw input_error(
        "cycle displacement is defined at column superstandard tableaux");
  if (k < 0 || k > t.n()) throw input_error("displacement count out of range");
  Partition conj = t.shape().conjugate();
  std::vector<std::pair<Int, Int>> ring;
  for (Int c = t.shape().part(1); c >= 1; --c)
    for (Int r = conj.part(c); r >= 1; --r) ring.emplace_back(r, c);
  std::size_t at = ring.size();
  for (std::size_t s = 0; s < ring.size(); ++s)
    if (t.entry(ring[s].first, ring[s].second) == 1) at = s;
  require(at < ring.size(), "complete tableaux place residue 1");
  Weight out(static_cast<std::size_t>(t.length()), 0);
  for (Int step = 1; step <= k; ++step) {
    const auto& cell = ring[(at + static_cast<std::size_t>(step)) % ring.size()];
    out[static_cast<std::size_t>(cell.first - 1)] += 1;
  }
  return out;
}

// Weight change along the cycle: prefix weight of the column's length minus
// the cycle displacement at the starting tableau, negated for the backward
// direction, and checked against the per-step Knuth deltas of the walk.
inline Weight cycle_weight_change(
    const Tableau& t, Int j, RebaseDirection dir = RebaseDirection::forward) {
  Int width = t.shape().part(1);
  if (j < 1 || j > width) throw input_error("cycle column out of range");
  Partition conj = t.shape().conjugate();
  std::vector<Tableau> walk = column_cycle(t, j, dir);
  Weight closed;
  if (dir == RebaseDirection::forward) {
    closed = prefix_weight(t.length(), conj.part(j));
    detail::add_scaled(closed, cycle_displacement(t, conj.part(j)), -1);
  } else {
    closed = prefix_weight(t.length(), conj.part(j));
    detail::add_scaled(closed, cycle_displacement(walk.back(), conj.part(j)),
                       -1);
    for (Int& x : closed) x = -x;
  }
  require(closed == detail::walk_weight_change(walk),
          "cycle weight change closed form matches the step sum");
  return closed;
}

struct GeneratorLoop {
  std::vector<Tabloid> walk;  // closed; consecutive entries Knuth-connected
  Weight change;              // lifted weight change around the loop
};

// The explicit loop for a pair i < j of distinct part sizes, based at the
// column superstandard tabloid with start 1: reverse cycles around a column
// of the j-th size, then forward cycles around one of the i-th size. Its
// lifted weight change is the corresponding lattice generator.
inline GeneratorLoop monodromy_generator_loop(const Partition& shape, Int i,
                                              Int j) {
  std::vector<Int> ms = part_multiplicity_sums(shape);
  Int count = static_cast<Int>(ms.size());
  if (!(1 <= i && i < j && j <= count))
    throw input_error("generator loops need part-size indices 1 <= i < j <= k");
  Int mi = ms[static_cast<std::size_t>(i - 1)];
  Int mj = ms[static_cast<std::size_t>(j - 1)];
  Int g = std::gcd(mi, mj);
  Partition conj = shape.conjugate();
  auto column_of_length = [&conj, &shape](Int len) {
    for (Int c = 1; c <= shape.part(1); ++c)
      if (conj.part(c) == len) return c;
    require(false, "every multiplicity prefix sum is a column length");
    return Int{0};
  };
  Int ci = column_of_length(mi), cj = column_of_length(mj);
  Tableau cur = column_superstandard_tableau(shape, 1);
  GeneratorLoop out;
  out.walk.push_back(cur.to_tabloid());
  out.change.assign(static_cast<std::size_t>(shape.length()), 0);
  auto run = [&out, &cur](Int column, RebaseDirection dir, Int times) {
    for (Int rep = 0; rep < times; ++rep) {
      detail::add_scaled(out.change, cycle_weight_change(cur, column, dir), 1);
      std::vector<Tableau> walk = column_cycle(cur, column, dir);
      for (std::size_t s = 1; s < walk.size(); ++s) {
        Tabloid next = walk[s].to_tabloid();
        if (next != out.walk.back()) out.walk.push_back(std::move(next));
      }
      cur = walk.back();
    }
  };
  run(cj, RebaseDirection::backward, mi / g);
  run(ci, RebaseDirection::forward, mj / g);
  require(out.walk.front() == out.walk.back(), "generator loops close up");
  Weight expected = prefix_weight(shape.length(), mi);
  for (Int& x : expected) x *= mj / g;
  detail::add_scaled(expected, prefix_weight(shape.length(), mj), -(mi / g));
  require(out.change == expected,
          "generator loop weight change matches the lattice generator");
  require(gup_contains(shape, out.change),
          "generator loop weight change lies in the lattice");
  return out;
}

// Charge residue classifying the connected component of the Knuth-move graph.
inline Int component_id(const Tabloid& T) {
  Int d = d_lambda(T.shape());
  Int c = charge(T) % d;
  return (c < 0) ? c + d : c;
}

inline bool components_agree(const Tabloid& T, const Tabloid& U) {
  if (T.n() != U.n() || T.shape() != U.shape())
    throw shape_mismatch_error("components live within one shape");
  return component_id(T) == component_id(U);
}

// Adding one to every entry: a graph automorphism of the Knuth-move graph
// that lowers the component id by one.
inline Tabloid shift_action(const Tabloid& T) {
  if (!T.complete())
    throw incomplete_tabloid_error("the shift action needs every residue placed");
  return shift_entries(T, 1);
}

struct DegEdge {
  std::size_t from = 0, to = 0;  // vertex indices with from < to
  Int exchanged = 0;             // residue whose exchange crosses the edge
  friend bool operator==(const DegEdge&, const DegEdge&) = default;
};

// The Knuth-move graph on all complete tabloids of one shape, materialized
// with adjacency, charges, and component labels from graph search. Vertices
// are sorted, so indices are stable across runs. Edge lists are computed per
// vertex, in parallel for large graphs.
class DegGraph {
 public:
  explicit DegGraph(const Partition& shape)
      : shape_(shape), n_(shape.size()) {
    check_modulus(static_cast<int>(n_));
    if (n_ > 9) throw input_error("graphs are materialized only up to n = 9");
    std::vector<Row> rows(static_cast<std::size_t>(shape_.length()));
    std::vector<Int> pool(static_cast<std::size_t>(n_));
    std::iota(pool.begin(), pool.end(), Int{1});
    fill_rows(rows, 0, pool);
    std::sort(vertices_.begin(), vertices_.end());
    Int expected = 1;
    for (Int t = 2; t <= n_; ++t) expected *= t;
    for (Int part : shape_.parts())
      for (Int t = 2; t <= part; ++t) expected /= t;
    require(static_cast<Int>(vertices_.size()) == expected,
            "vertex count is the multinomial coefficient");
    build_edges();
    label_components();
    charges_.reserve(vertices_.size());
    for (const Tabloid& v : vertices_) charges_.push_back(charge(v));
  }

  Int n() const { return n_; }
  const Partition& shape() const { return shape_; }
  std::size_t size() const { return vertices_.size(); }
  const std::vector<Tabloid>& vertices() const { return vertices_; }
  const Tabloid& vertex(std::size_t a) const { return vertices_.at(a); }
  const std::vector<DegEdge>& edges() const { return edges_; }
  // Pairs (target index, exchanged residue).
  const std::vector<std::pair<std::size_t, Int>>& neighbors(
      std::size_t a) const {
    return adjacency_.at(a);
  }
  std::size_t index_of(const Tabloid& T) const {
    if (T.n() != n_ || T.shape() != shape_)
      throw input_error("tabloid does not belong to this graph");
    auto at = std::lower_bound(vertices_.begin(), vertices_.end(), T);
    require(at != vertices_.end() && *at == T,
            "complete tabloids of the shape are vertices");
    return static_cast<std::size_t>(at - vertices_.begin());
  }
  std::size_t component_of(std::size_t a) const { return labels_.at(a); }
  std::size_t component_count() const { return component_count_; }
  Int charge_of(std::size_t a) const {
    return charges_.at(a);
  }

 private:
  void fill_rows(std::vector<Row>& rows, std::size_t k,
                 const std::vector<Int>& pool) {
    if (k == rows.size()) {
      vertices_.emplace_back(n_, shape_, rows);
      return;
    }
    std::size_t need = static_cast<std::size_t>(shape_.part(static_cast<Int>(k) + 1));
    std::vector<std::size_t> pick(need);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    while (true) {
      rows[k].clear();
      std::vector<Int> rest;
      rest.reserve(pool.size() - need);
      std::size_t t = 0;
      for (std::size_t s = 0; s < pool.size(); ++s) {
        if (t < need && pick[t] == s) {
          rows[k].push_back(pool[s]);
          ++t;
        } else {
          rest.push_back(pool[s]);
        }
      }
      fill_rows(rows, k + 1, rest);
      std::size_t move = need;
      while (move > 0 && pick[move - 1] == pool.size() - need + move - 1)
        --move;
      if (move == 0) break;
      ++pick[move - 1];
      for (std::size_t s = move; s < need; ++s) pick[s] = pick[s - 1] + 1;
    }
  }

  void build_edges() {
    adjacency_.assign(vertices_.size(), {});
    auto compute = [this](std::size_t lo, std::size_t hi) {
      for (std::size_t a = lo; a < hi; ++a)
        for (const auto& [x, moved] : tabloid_knuth_neighbors(vertices_[a])) {
          auto at = std::lower_bound(vertices_.begin(), vertices_.end(), moved);
          require(at != vertices_.end() && *at == moved,
                  "Knuth moves land on vertices");
          adjacency_[a].emplace_back(
              static_cast<std::size_t>(at - vertices_.begin()), x);
        }
    };
    std::size_t workers =
        std::min<std::size_t>(std::thread::hardware_concurrency(), 8);
    if (workers > 1 && vertices_.size() >= 4096) {
      std::vector<std::thread> threads;
      std::size_t chunk = (vertices_.size() + workers - 1) / workers;
      for (std::size_t w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(vertices_.size(), lo + chunk);
        if (lo < hi) threads.emplace_back(compute, lo, hi);
      }
      for (auto& worker : threads) worker.join();
    } else {
      compute(0, vertices_.size());
    }
    for (std::size_t a = 0; a < vertices_.size(); ++a)
      for (const auto& [b, x] : adjacency_[a]) {
        require(a != b, "Knuth moves change the tabloid");
        if (a >= b) continue;
        bool mirrored = false;
        for (const auto& back : adjacency_[b])
          if (back.first == a && back.second == x) mirrored = true;
        require(mirrored, "Knuth edges are symmetric");
        edges_.push_back(DegEdge{a, b, x});
      }
  }

  void label_components() {
    labels_.assign(vertices_.size(), vertices_.size());
    component_count_ = 0;
    std::vector<std::size_t> stack;
    for (std::size_t a = 0; a < vertices_.size(); ++a) {
      if (labels_[a] != vertices_.size()) continue;
      labels_[a] = component_count_;
      stack.assign(1, a);
      while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (const auto& edge : adjacency_[v])
          if (labels_[edge.first] == vertices_.size()) {
            labels_[edge.first] = component_count_;
            stack.push_back(edge.first);
          }
      }
      ++component_count_;
    }
  }

  Partition shape_;
  Int n_ = 1;
  std::vector<Tabloid> vertices_;
  std::vector<std::vector<std::pair<std::size_t, Int>>> adjacency_;
  std::vector<DegEdge> edges_;
  std::vector<std::size_t> labels_;
  std::size_t component_count_ = 0;
  std::vector<Int> charges_;
};

}  // namespace ambc
