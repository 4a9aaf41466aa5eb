#pragma once

// The forward and backward matrix-ball maps between extended affine
// permutations and triples (P, Q, rho): channels, channel numberings,
// zig-zags, one forward or backward step per tabloid row, and the full maps
// phi and psi.

#include <algorithm>
#include <iterator>
#include <optional>
#include <utility>
#include <vector>

#include "ambc/lattice.hpp"
#include "ambc/perm.hpp"
#include "ambc/stream.hpp"
#include "ambc/tabloid.hpp"

namespace ambc {

// A semi-periodic labeling of the balls of a partial permutation: labels are
// stored for the balls with row in [1..n] and extend by
// label(b + (n,n)) = label(b) + period.
class Numbering {
 public:
  Numbering(int n, Int period, std::vector<Cell> balls,
            std::vector<Int> labels)
      : n_(n),
        period_(period),
        balls_(std::move(balls)),
        labels_(std::move(labels)) {
    check_modulus(n_);
    require(period_ >= 1, "numbering period is positive");
    require(balls_.size() == labels_.size(),
            "numbering labels one value per ball");
    require(std::is_sorted(balls_.begin(), balls_.end()),
            "numbering balls are sorted");
  }

  int n() const { return n_; }
  Int period() const { return period_; }
  const std::vector<Cell>& balls() const { return balls_; }
  const std::vector<Int>& labels() const { return labels_; }

  Int at(Cell b) const {
    Int k = floor_div(b.row - 1, n_);
    Cell canonical = translated(b, -k, n_);
    auto it = std::lower_bound(balls_.begin(), balls_.end(), canonical);
    if (it == balls_.end() || !(*it == canonical))
      throw undefined_position_error("cell is not a ball of the numbering");
    return labels_[static_cast<std::size_t>(it - balls_.begin())] +
           k * period_;
  }

  Numbering shifted(Int delta) const {
    std::vector<Int> moved = labels_;
    for (Int& v : moved) v += delta;
    return Numbering(n_, period_, balls_, std::move(moved));
  }

  friend bool operator==(const Numbering&, const Numbering&) = default;

 private:
  int n_;
  Int period_;
  std::vector<Cell> balls_;
  std::vector<Int> labels_;
};

// A zig-zag recorded by its corner data: the inner corner-posts form a chain
// from northeast to southwest, the outer corner-posts sit between
// consecutive inner ones, and the back corner-post shares its row with the
// northeast end and its column with the southwest end.
struct ZigZag {
  Int label = 0;
  std::vector<Cell> inner;
  std::vector<Cell> outer;
  Cell back;

  friend bool operator==(const ZigZag&, const ZigZag&) = default;
};

struct Triple {
  Tabloid P;
  Tabloid Q;
  Weight rho;

  friend bool operator==(const Triple&, const Triple&) = default;
};

namespace detail {

// Largest k with a + k(n,n) strictly northwest of b.
inline Int strict_nw_shift(Cell a, Cell b, int n) {
  return std::min(floor_div(b.row - a.row - 1, n),
                  floor_div(b.col - a.col - 1, n));
}

// Largest k with a + k(n,n) weakly northwest of b.
inline Int weak_nw_shift(Cell a, Cell b, int n) {
  return std::min(floor_div(b.row - a.row, n), floor_div(b.col - a.col, n));
}

// All maximal-density subsets of ball classes whose periodic extensions are
// southeast chains: with rows ascending, that means strictly increasing
// columns spanning less than one period.
inline std::vector<std::vector<Cell>> channels(
    const PartialPermutation& w) {
  std::vector<Cell> balls = w.balls();
  if (balls.empty())
    throw empty_permutation_error("channels need at least one ball");
  int q = static_cast<int>(balls.size());
  std::size_t best = 0;
  std::vector<std::vector<Cell>> found;
  for (unsigned long mask = 1; mask < (1ul << q); ++mask) {
    std::vector<Cell> subset;
    for (int i = 0; i < q; ++i)
      if (mask & (1ul << i)) subset.push_back(balls[static_cast<std::size_t>(i)]);
    if (subset.size() < best) continue;
    bool chain = true;
    for (std::size_t i = 1; i < subset.size() && chain; ++i)
      chain = subset[i - 1].col < subset[i].col;
    chain = chain && subset.back().col - subset.front().col < w.n();
    if (!chain) continue;
    if (subset.size() > best) {
      best = subset.size();
      found.clear();
    }
    found.push_back(std::move(subset));
  }
  require(!found.empty(), "a nonempty permutation has a channel");
  return found;
}

// Whether every ball of lhs is weakly southwest of some translate of a ball
// of rhs.
inline bool weakly_southwest(const std::vector<Cell>& lhs,
                             const std::vector<Cell>& rhs, int n) {
  for (const Cell& b : lhs) {
    bool covered = false;
    for (const Cell& c : rhs)
      if (ceil_div(b.col - c.col, n) <= floor_div(b.row - c.row, n)) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

}  // namespace detail

inline Int channel_density(const PartialPermutation& w) {
  return static_cast<Int>(detail::channels(w).front().size());
}

// The unique channel lying weakly southwest of every other channel.
inline std::vector<Cell> southwest_channel(const PartialPermutation& w) {
  std::vector<std::vector<Cell>> all = detail::channels(w);
  std::optional<std::size_t> minimum;
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool below = true;
    for (std::size_t j = 0; j < all.size() && below; ++j)
      below = detail::weakly_southwest(all[i], all[j], w.n());
    if (below) {
      require(!minimum, "the southwest-most channel is unique");
      minimum = i;
    }
  }
  require(minimum.has_value(), "a southwest-most channel exists");
  return all[*minimum];
}

// The channel numbering: a ball's label is the largest value of
// (channel label of the endpoint) + (number of strictly-northwest steps)
// over paths from the ball to the channel. The channel itself is numbered
// consecutively southeast, anchor 1 at its smallest row in [1..n].
inline Numbering channel_numbering(const PartialPermutation& w,
                                   const std::vector<Cell>& channel) {
  std::vector<Cell> balls = w.balls();
  if (balls.empty())
    throw empty_permutation_error("channel numbering needs a ball");
  int n = w.n();
  std::vector<Cell> chain = channel;
  for (Cell& c : chain) c = translated(c, -floor_div(c.row - 1, n), n);
  std::sort(chain.begin(), chain.end());
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (!std::binary_search(balls.begin(), balls.end(), chain[i]))
      throw input_error("channel cell is not a ball of the permutation");
    if (i > 0 && chain[i - 1].col >= chain[i].col)
      throw input_error("channel is not a southeast chain");
  }
  if (chain.empty() || chain.back().col - chain.front().col >= n)
    throw input_error("channel is not a southeast chain");

  Int m = static_cast<Int>(chain.size());
  std::size_t q = balls.size();
  std::vector<std::optional<Int>> label(q);
  for (std::size_t i = 0, at = 0; i < q; ++i)
    if (at < chain.size() && balls[i] == chain[at]) {
      label[i] = static_cast<Int>(++at);
    }

  // Longest-path relaxation over translation classes: a step from any
  // translate a + k(n,n) strictly northwest of b adds k*m + 1 to the label.
  // The paper guarantees the maxima are finite, so values must stabilize
  // within q sweeps; further growth would mean a positive cycle.
  for (std::size_t sweep = 0; sweep <= q; ++sweep) {
    bool changed = false;
    for (std::size_t a = 0; a < q; ++a) {
      if (!label[a]) continue;
      for (std::size_t b = 0; b < q; ++b) {
        Int cand = *label[a] +
                   detail::strict_nw_shift(balls[a], balls[b], n) * m + 1;
        if (!label[b] || cand > *label[b]) {
          label[b] = cand;
          changed = true;
        }
      }
    }
    if (!changed) break;
    require(sweep < q, "channel numbering converges");
  }

  std::vector<Int> labels(q);
  for (std::size_t i = 0; i < q; ++i) {
    require(label[i].has_value(), "every ball reaches the channel");
    labels[i] = *label[i];
  }
  return Numbering(n, m, std::move(balls), std::move(labels));
}

namespace detail {

inline void check_proper(const PartialPermutation& w, const Numbering& d) {
  if (w.n() != d.n() || !(w.balls() == d.balls()))
    throw input_error("numbering does not label the balls of the permutation");
  const std::vector<Cell>& balls = d.balls();
  const std::vector<Int>& labels = d.labels();
  Int m = d.period();
  int n = d.n();
  for (std::size_t a = 0; a < balls.size(); ++a) {
    for (std::size_t b = 0; b < balls.size(); ++b) {
      Int k = strict_nw_shift(balls[a], balls[b], n);
      if (labels[a] + k * m >= labels[b])
        throw input_error("numbering is not monotone");
    }
    // Continuity: some ball weakly northwest carries the previous label.
    bool found = false;
    for (std::size_t c = 0; c < balls.size() && !found; ++c) {
      Int diff = labels[a] - 1 - labels[c];
      if (diff % m != 0) continue;
      Int k = diff / m;
      found = k <= weak_nw_shift(balls[c], balls[a], n);
    }
    if (!found) throw input_error("numbering is not continuous");
  }
}

}  // namespace detail

// Splits the balls into one zig-zag per label, for one period of labels
// starting at the smallest label in the fundamental window. The labeled
// balls become the inner corner-posts.
inline std::vector<ZigZag> zigzag_decomposition(const PartialPermutation& w,
                                                const Numbering& d) {
  detail::check_proper(w, d);
  const std::vector<Cell>& balls = d.balls();
  const std::vector<Int>& labels = d.labels();
  Int m = d.period();
  int n = d.n();
  Int start = *std::min_element(labels.begin(), labels.end());

  std::vector<ZigZag> out;
  for (Int value = start; value < start + m; ++value) {
    std::vector<Cell> members;
    for (std::size_t i = 0; i < balls.size(); ++i) {
      Int diff = value - labels[i];
      if (diff % m != 0) continue;
      members.push_back(translated(balls[i], diff / m, n));
    }
    require(!members.empty(), "every label in a period is used");
    std::sort(members.begin(), members.end());
    ZigZag z;
    z.label = value;
    z.inner = members;
    for (std::size_t i = 1; i < members.size(); ++i) {
      require(members[i - 1].col > members[i].col,
              "balls sharing a label descend from northeast to southwest");
      z.outer.push_back(Cell{members[i].row, members[i - 1].col});
    }
    z.back = Cell{members.front().row, members.back().col};
    // No ball with a larger label lies weakly northwest of an outer
    // corner-post.
    for (const Cell& o : z.outer)
      for (std::size_t i = 0; i < balls.size(); ++i)
        require(labels[i] + detail::weak_nw_shift(balls[i], o, n) * m <=
                    value,
                "outer corner-posts see no larger label to the northwest");
    out.push_back(std::move(z));
  }

  // Across zig-zags, larger labels sit strictly further south at the
  // northeast ends and strictly further east at the southwest ends.
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j < out.size(); ++j) {
      for (Int shift : {0, 1}) {
        if (shift == 0 && j <= i) continue;
        Cell ne_i = out[i].inner.front();
        Cell sw_i = out[i].inner.back();
        Cell ne_j = translated(out[j].inner.front(), shift, n);
        Cell sw_j = translated(out[j].inner.back(), shift, n);
        require(ne_j.row > ne_i.row,
                "northeast ends of later zig-zags lie strictly south");
        require(sw_j.col > sw_i.col,
                "southwest ends of later zig-zags lie strictly east");
      }
    }
  }
  return out;
}

// One forward step: the stream of back corner-posts under the southwest
// channel numbering, and the next permutation with balls at the outer
// corner-posts.
inline std::pair<Stream, PartialPermutation> forward_step(
    const PartialPermutation& w) {
  if (w.empty())
    throw empty_permutation_error("forward step needs a nonempty permutation");
  Numbering d = channel_numbering(w, southwest_channel(w));
  std::vector<ZigZag> zigzags = zigzag_decomposition(w, d);
  std::vector<Cell> backs, outers;
  for (const ZigZag& z : zigzags) {
    backs.push_back(z.back);
    outers.insert(outers.end(), z.outer.begin(), z.outer.end());
  }
  return {Stream(w.n(), std::move(backs)),
          PartialPermutation::from_balls(w.n(), outers)};
}

// The forward map: record the defining data of each step's stream as rows
// of Q (stream rows), rows of P (stream columns), and entries of rho
// (altitudes).
inline Triple phi(const AffinePermutation& w) {
  int n = w.n();
  PartialPermutation v = w.partial();
  std::vector<std::vector<Int>> p_rows, q_rows;
  Weight rho;
  std::vector<Int> parts;
  while (!v.empty()) {
    auto [stream, next] = forward_step(v);
    q_rows.push_back(stream.row_residues());
    p_rows.push_back(stream.col_residues());
    rho.push_back(altitude(stream));
    parts.push_back(stream.density());
    v = next;
  }
  for (std::size_t i = 1; i < parts.size(); ++i)
    require(parts[i - 1] >= parts[i], "recorded row sizes weakly decrease");
  Partition shape(parts);
  Triple t{Tabloid(n, shape, p_rows), Tabloid(n, shape, q_rows),
           std::move(rho)};
  require(is_dominant(t.P, t.Q, t.rho), "the forward map output is dominant");
  return t;
}

// One backward step: number the balls of v against the stream S, then for
// each label rebuild the zig-zag whose back corner-post is the stream cell
// and whose outer corner-posts are the balls carrying that label; the inner
// corner-posts become the balls of the output.
inline PartialPermutation backward_step(const PartialPermutation& v,
                                        const Stream& S) {
  if (v.n() != S.n())
    throw size_mismatch_error("backward step needs matching moduli");
  {
    Row v_rows, v_cols;
    for (const Cell& b : v.balls()) {
      v_rows.push_back(b.row);
      v_cols.push_back(residue(v.n(), b.col));
    }
    std::sort(v_cols.begin(), v_cols.end());
    Row s_rows = S.row_residues(), s_cols = S.col_residues();
    auto shares = [](const Row& u, const Row& x) {
      std::vector<Int> common;
      std::set_intersection(u.begin(), u.end(), x.begin(), x.end(),
                            std::back_inserter(common));
      return !common.empty();
    };
    if (shares(v_rows, s_rows) || shares(v_cols, s_cols))
      throw shared_row_or_column_error(
          "backward step needs rows and columns disjoint from the stream");
  }

  int n = S.n();
  Int m = S.density();
  NumberedStream source{S};
  std::vector<Cell> balls = v.balls();
  std::size_t q = balls.size();

  // The greatest monotone semi-periodic numbering of the balls bounded by
  // the backward bound against the stream.
  std::vector<Int> label(q);
  for (std::size_t i = 0; i < q; ++i) label[i] = nw_bound(source, balls[i]);
  for (std::size_t sweep = 0; sweep <= q; ++sweep) {
    bool changed = false;
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = 0; b < q; ++b) {
        Int cand = label[b] -
                   detail::strict_nw_shift(balls[a], balls[b], n) * m - 1;
        if (cand < label[a]) {
          label[a] = cand;
          changed = true;
        }
      }
    if (!changed) break;
    if (sweep == q)
      throw malformed_fiber_error("balls cannot be numbered against the stream");
  }

  std::vector<Cell> inners;
  for (Int value = source.anchor; value < source.anchor + m; ++value) {
    std::vector<Cell> members;
    for (std::size_t i = 0; i < q; ++i) {
      Int diff = value - label[i];
      if (diff % m != 0) continue;
      members.push_back(translated(balls[i], diff / m, n));
    }
    std::sort(members.begin(), members.end());
    Cell back = source.cell(value);
    for (std::size_t i = 0; i < members.size(); ++i) {
      bool ok = strictly_southeast(members[i], back) &&
                (i == 0 || members[i - 1].col > members[i].col);
      if (!ok)
        throw malformed_fiber_error(
            "labeled balls do not chain southeast of the stream cell");
    }
    // Rebuild the inner corner-posts: the stream cell contributes the
    // smallest row and the smallest column.
    std::vector<Int> rows{back.row}, cols{back.col};
    for (const Cell& c : members) {
      rows.push_back(c.row);
      cols.push_back(c.col);
    }
    std::sort(rows.begin(), rows.end());
    std::sort(cols.begin(), cols.end(), std::greater<>());
    for (std::size_t i = 0; i < rows.size(); ++i)
      inners.push_back(Cell{rows[i], cols[i]});
  }
  return PartialPermutation::from_balls(n, inners);
}

// The backward map: fold backward steps over the rows from bottom to top.
// Accepts any integer weight; phi(psi(P, Q, rho)) recovers the dominant
// representative of rho.
inline AffinePermutation psi(const Triple& t) {
  if (t.P.n() != t.Q.n() || !(t.P.shape() == t.Q.shape()) ||
      static_cast<Int>(t.rho.size()) != t.P.length())
    throw shape_mismatch_error("triple data must agree in shape");
  if (!t.P.complete() || !t.Q.complete())
    throw incomplete_tabloid_error("the backward map needs complete tabloids");
  int n = static_cast<int>(t.P.n());
  PartialPermutation v(n);
  for (Int i = t.P.length(); i >= 1; --i)
    v = backward_step(
        v, make_stream(n, t.Q.row(i), t.P.row(i),
                       t.rho[static_cast<std::size_t>(i - 1)]));
  require(v.total(), "complete tabloids rebuild a total permutation");
  std::vector<Int> window(static_cast<std::size_t>(n));
  for (const Cell& b : v.balls())
    window[static_cast<std::size_t>(b.row - 1)] = b.col;
  return AffinePermutation(n, std::move(window));
}

// Sum of block diagonals over ball classes; equals the sum of the weight
// entries of the forward image, and shift_sum(w) / n.
inline Int block_diagonal_sum(const PartialPermutation& w) {
  Int total = 0;
  for (const Cell& b : w.balls()) total += block_diagonal(w.n(), b);
  return total;
}

inline Int block_diagonal_sum(const AffinePermutation& w) {
  return block_diagonal_sum(w.partial());
}

}  // namespace ambc
