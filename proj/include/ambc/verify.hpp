#pragma once

// Brute-force verification harness: enumerates every window in a bounded
// band and checks the structural identities of the correspondence against
// independent recomputations, reporting minimal counterexamples.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ambc/kldeg.hpp"
#include "ambc/lattice.hpp"
#include "ambc/matrix_ball.hpp"
#include "ambc/perm.hpp"
#include "ambc/stream.hpp"
#include "ambc/tabloid.hpp"

namespace ambc {

// All windows w(i) = sigma(i) + n*t(i) with sigma finite and |t(i)| capped;
// a nonnegative total_shift_range additionally caps |sum of t(i)|.
struct EnumerationSpec {
  int n = 3;
  Int shift_band = 1;
  Int total_shift_range = -1;
};

inline std::vector<AffinePermutation> enumerate_perms(
    const EnumerationSpec& spec) {
  check_modulus(spec.n);
  if (spec.shift_band < 0)
    throw input_error("the shift band must be nonnegative");
  int n = spec.n;
  std::vector<Int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), Int{1});
  std::vector<AffinePermutation> out;
  do {
    std::vector<Int> t(static_cast<std::size_t>(n), -spec.shift_band);
    while (true) {
      Int total = std::accumulate(t.begin(), t.end(), Int{0});
      if (spec.total_shift_range < 0 ||
          (total <= spec.total_shift_range &&
           -total <= spec.total_shift_range)) {
        std::vector<Int> window(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < window.size(); ++i)
          window[i] = sigma[i] + n * t[i];
        out.emplace_back(n, std::move(window));
      }
      std::size_t j = 0;
      while (j < t.size() && t[j] == spec.shift_band)
        t[j++] = -spec.shift_band;
      if (j == t.size()) break;
      ++t[j];
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Molecules can be infinite, so exploration is truncated by a move radius.
inline Int default_bfs_radius(int n) { return 2 * static_cast<Int>(n) * n; }

inline std::set<AffinePermutation> bfs_knuth_class(const AffinePermutation& w,
                                                   Int radius) {
  if (radius < 0) throw input_error("the search radius must be nonnegative");
  std::set<AffinePermutation> seen{w};
  std::vector<AffinePermutation> frontier{w};
  for (Int depth = 0; depth < radius && !frontier.empty(); ++depth) {
    std::vector<AffinePermutation> next;
    for (const AffinePermutation& v : frontier)
      for (const auto& [i, moved] : knuth_neighbors(v))
        if (seen.insert(moved).second) next.push_back(moved);
    frontier = std::move(next);
  }
  return seen;
}

struct Report {
  std::string theorem;
  Int checked = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

inline const std::vector<std::string>& registered_theorems() {
  static const std::vector<std::string> names = {
      "roundtrip",  "descents",
      "inverse",    "sign",
      "knuth_action", "dominance_charge_vs_concurrency",
      "covering",   "components",
      "monodromy_membership", "block_constancy"};
  return names;
}

inline std::string shape_string(const Partition& shape) {
  std::ostringstream out;
  out << '[';
  for (Int k = 1; k <= shape.length(); ++k) {
    if (k > 1) out << ',';
    out << shape.part(k);
  }
  out << ']';
  return out.str();
}

inline std::string tabloid_string(const Tabloid& T) {
  std::ostringstream out;
  out << '{';
  for (Int k = 1; k <= T.length(); ++k) {
    if (k > 1) out << '|';
    const Row& row = T.row(k);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) out << ' ';
      out << row[j];
    }
  }
  out << '}';
  return out.str();
}

namespace detail {

// Splits [0, count) into contiguous chunks and folds the per-chunk reports
// back together in index order, so results do not depend on scheduling.
template <typename Fn>
void parallel_chunks(std::size_t count, int jobs, Report& report, Fn&& body) {
  std::size_t workers = jobs <= 1 ? 1 : static_cast<std::size_t>(jobs);
  workers = std::min<std::size_t>(
      {workers, count, std::max(1u, std::thread::hardware_concurrency())});
  if (workers <= 1 || count < 64) {
    body(std::size_t{0}, count, report);
    return;
  }
  std::vector<Report> parts(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t at = 0; at < workers; ++at)
    pool.emplace_back([&, at]() {
      std::size_t begin = count * at / workers;
      std::size_t end = count * (at + 1) / workers;
      try {
        body(begin, end, parts[at]);
      } catch (...) {
        errors[at] = std::current_exception();
      }
    });
  for (std::thread& worker : pool) worker.join();
  for (const std::exception_ptr& error : errors)
    if (error) std::rethrow_exception(error);
  for (const Report& part : parts) {
    report.checked += part.checked;
    report.failures.insert(report.failures.end(), part.failures.begin(),
                           part.failures.end());
  }
}

template <typename Fn>
void for_each_window(const EnumerationSpec& spec, int jobs, Report& report,
                     Fn&& check) {
  std::vector<AffinePermutation> universe = enumerate_perms(spec);
  parallel_chunks(universe.size(), jobs, report,
                  [&](std::size_t begin, std::size_t end, Report& part) {
                    for (std::size_t i = begin; i < end; ++i)
                      check(universe[i], part);
                  });
}

inline std::string window_tag(const AffinePermutation& w) {
  std::ostringstream out;
  out << "n=" << w.n() << " window " << window_string(w);
  return out.str();
}

inline int parity(Int x) { return ((x % 2) + 2) % 2 == 0 ? 1 : -1; }

inline Weight weight_difference(const Weight& a, const Weight& b) {
  require(a.size() == b.size(), "weight differences need equal lengths");
  Weight out = a;
  for (std::size_t t = 0; t < out.size(); ++t) out[t] -= b[t];
  return out;
}

inline std::vector<Partition> shapes_of(Int n) {
  std::vector<Partition> out;
  std::vector<Int> parts;
  auto rec = [&](auto&& self, Int left, Int cap) -> void {
    if (left == 0) {
      out.emplace_back(parts);
      return;
    }
    for (Int next = std::min(left, cap); next >= 1; --next) {
      parts.push_back(next);
      self(self, left - next, next);
      parts.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

inline std::vector<Tabloid> all_tabloids(const Partition& shape) {
  Int n = shape.size();
  std::vector<Tabloid> out;
  std::vector<Row> rows;
  std::vector<Int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), Int{1});
  auto rec = [&](auto&& self, std::vector<Int> left, Int k) -> void {
    if (k > shape.length()) {
      out.emplace_back(n, shape, rows);
      return;
    }
    Int want = shape.part(k);
    std::vector<bool> take(left.size(), false);
    std::fill(take.begin(), take.begin() + want, true);
    do {
      Row row;
      std::vector<Int> rest;
      for (std::size_t i = 0; i < left.size(); ++i)
        (take[i] ? row : rest).push_back(left[i]);
      rows.push_back(std::move(row));
      self(self, rest, k + 1);
      rows.pop_back();
    } while (std::prev_permutation(take.begin(), take.end()));
  };
  rec(rec, pool, Int{1});
  std::sort(out.begin(), out.end());
  return out;
}

// Deterministic pseudo-random closed walks from a superstandard seed; calls
// the sink with the weight drift of every return to the base tabloid.
template <typename Sink>
void closed_walk_returns(const Partition& shape, int steps, Sink&& sink) {
  std::uint32_t seed = 2166136261u;
  for (Int k = 1; k <= shape.length(); ++k)
    seed = (seed ^ static_cast<std::uint32_t>(shape.part(k))) * 16777619u;
  std::mt19937 gen(seed);
  Tabloid P = column_superstandard(shape, 1);
  Tabloid Q0 = reverse_row_superstandard(shape, 1);
  AffinePermutation w =
      psi({P, Q0, Weight(static_cast<std::size_t>(shape.length()), 0)});
  Triple base = phi(w);
  for (int step = 0; step < steps; ++step) {
    auto nbrs = knuth_neighbors(w);
    if (nbrs.empty()) return;
    std::uniform_int_distribution<std::size_t> pick(0, nbrs.size() - 1);
    w = nbrs[pick(gen)].second;
    Triple t = phi(w);
    require(t.P == base.P, "closed walks fix the insertion tabloid");
    if (t.Q == base.Q) sink(weight_difference(t.rho, base.rho));
  }
}

inline void check_roundtrip(const EnumerationSpec& spec, int jobs,
                            Report& report) {
  for_each_window(spec, jobs, report,
                  [](const AffinePermutation& w, Report& part) {
                    ++part.checked;
                    Triple t = phi(w);
                    AffinePermutation back = psi(t);
                    if (!(back == w))
                      part.failures.push_back(window_tag(w) +
                                              ": round trip returned " +
                                              window_string(back));
                    else if (!is_dominant(t.P, t.Q, t.rho))
                      part.failures.push_back(window_tag(w) +
                                              ": triple is not dominant");
                  });
}

inline void check_descents(const EnumerationSpec& spec, int jobs,
                           Report& report) {
  for_each_window(
      spec, jobs, report, [](const AffinePermutation& w, Report& part) {
        ++part.checked;
        Triple t = phi(w);
        std::set<Int> left, right;
        for (int i : left_descents(w)) left.insert(i);
        for (int i : right_descents(w)) right.insert(i);
        if (left != tau(t.P))
          part.failures.push_back(window_tag(w) +
                                  ": left descents differ from tau(P)");
        if (right != tau(t.Q))
          part.failures.push_back(window_tag(w) +
                                  ": right descents differ from tau(Q)");
      });
}

inline void check_inverse(const EnumerationSpec& spec, int jobs,
                          Report& report) {
  for_each_window(
      spec, jobs, report, [](const AffinePermutation& w, Report& part) {
        ++part.checked;
        Triple t = phi(w);
        Triple ti = phi(inverse(w));
        Weight negated = t.rho;
        for (Int& x : negated) x = -x;
        if (!(ti.P == t.Q) || !(ti.Q == t.P) ||
            ti.rho != dominant_representative(t.Q, t.P, negated))
          part.failures.push_back(window_tag(w) +
                                  ": inverse triple is not the transpose");
      });
}

inline void check_sign(const EnumerationSpec& spec, int jobs,
                       Report& report) {
  for_each_window(
      spec, jobs, report, [](const AffinePermutation& w, Report& part) {
        ++part.checked;
        Triple t = phi(w);
        Int data = inversion_count(t.P) + inversion_count(t.Q) +
                   inversion_count(t.P.shape()) +
                   weight_inversions(t.P.shape(), t.rho);
        if (sign(w) * parity(shift_sum(w)) != parity(data)) {
          std::ostringstream what;
          what << window_tag(w) << ": sign " << sign(w)
               << " does not match the triple parity";
          part.failures.push_back(what.str());
        }
      });
}

inline void check_knuth_action(const EnumerationSpec& spec, int jobs,
                               Report& report) {
  for_each_window(
      spec, jobs, report, [](const AffinePermutation& w, Report& part) {
        Triple t = phi(w);
        for (Int i = 1; i <= w.n(); ++i) {
          auto moved = knuth_move(w, i);
          if (!moved) continue;
          ++part.checked;
          Triple after = phi(*moved);
          if (!(after.P == t.P)) {
            part.failures.push_back(window_tag(w) + ": move " +
                                    std::to_string(i) + " changed P");
            continue;
          }
          // The induced exchange of residues j, j+1 must reproduce both the
          // new tabloid and the new weight for some j. Distinct positions
          // give distinct tabloids for n >= 3; at n = 2 both positions
          // exchange the pair {1, 2} and only the weight rule tells the two
          // readings apart, so the pair is matched jointly.
          std::vector<Int> hits;
          bool matched = false;
          for (Int j = 1; j <= w.n(); ++j) {
            auto exchanged = tabloid_knuth_move(t.Q, j);
            if (!exchanged || !(*exchanged == after.Q)) continue;
            hits.push_back(j);
            Weight rho = t.rho;
            if (j == w.n()) {
              rho[static_cast<std::size_t>(t.Q.row_of(w.n()) - 1)] -= 1;
              rho[static_cast<std::size_t>(t.Q.row_of(1) - 1)] += 1;
            }
            if (after.rho == rho) matched = true;
          }
          if (hits.empty())
            part.failures.push_back(window_tag(w) + ": move " +
                                    std::to_string(i) +
                                    " induces no tabloid move");
          else if (!matched)
            part.failures.push_back(window_tag(w) + ": move " +
                                    std::to_string(i) +
                                    " broke the weight rule");
        }
      });
}

inline void check_dominance(const EnumerationSpec& spec, int jobs,
                            Report& report) {
  for (const Partition& shape : shapes_of(spec.n)) {
    std::vector<Tabloid> tabloids = all_tabloids(shape);
    std::vector<Int> rows;
    for (Int i = 1; i < shape.length(); ++i)
      if (shape.part(i) == shape.part(i + 1)) rows.push_back(i);
    if (rows.empty()) continue;
    parallel_chunks(
        tabloids.size(), jobs, report,
        [&](std::size_t begin, std::size_t end, Report& part) {
          for (std::size_t a = begin; a < end; ++a)
            for (const Tabloid& Q : tabloids)
              for (Int i : rows) {
                ++part.checked;
                Int charge_form = dominance_constant(tabloids[a], Q, i);
                Int scan_form =
                    dominance_constant_via_concurrency(tabloids[a], Q, i);
                if (charge_form != scan_form) {
                  std::ostringstream what;
                  what << "shape " << shape_string(shape) << " P="
                       << tabloid_string(tabloids[a])
                       << " Q=" << tabloid_string(Q) << " row " << i
                       << ": charge form " << charge_form
                       << ", concurrency form " << scan_form;
                  part.failures.push_back(what.str());
                }
              }
        });
  }
}

inline void check_covering(const EnumerationSpec& spec, int jobs,
                           Report& report) {
  for_each_window(
      spec, jobs, report, [](const AffinePermutation& w, Report& part) {
        ++part.checked;
        Triple t = phi(w);
        std::vector<Tabloid> images;
        for (Int i = 1; i <= w.n(); ++i)
          if (auto moved = knuth_move(w, i)) images.push_back(phi(*moved).Q);
        std::vector<Tabloid> targets;
        for (Int j = 1; j <= w.n(); ++j)
          if (auto exchanged = tabloid_knuth_move(t.Q, j))
            targets.push_back(*exchanged);
        std::sort(images.begin(), images.end());
        std::sort(targets.begin(), targets.end());
        if (std::adjacent_find(images.begin(), images.end()) != images.end())
          part.failures.push_back(window_tag(w) +
                                  ": two moves reach the same tabloid");
        else if (images != targets)
          part.failures.push_back(
              window_tag(w) +
              ": neighbor tabloids differ from the tabloid neighbors");
      });
}

inline void check_components(const EnumerationSpec& spec, int jobs,
                             Report& report) {
  (void)jobs;
  for (const Partition& shape : shapes_of(spec.n)) {
    ++report.checked;
    DegGraph graph(shape);
    Int d = d_lambda(shape);
    if (static_cast<Int>(graph.component_count()) != d) {
      std::ostringstream what;
      what << "shape " << shape_string(shape) << ": "
           << graph.component_count() << " components, d = " << d;
      report.failures.push_back(what.str());
      continue;
    }
    std::vector<std::optional<Int>> id_of(graph.component_count());
    std::vector<bool> used(static_cast<std::size_t>(d), false);
    bool clean = true;
    for (std::size_t a = 0; a < graph.size() && clean; ++a) {
      Int id = component_id(graph.vertex(a));
      auto& slot = id_of[graph.component_of(a)];
      if (!slot.has_value()) {
        slot = id;
        if (used[static_cast<std::size_t>(id)]) {
          report.failures.push_back("shape " + shape_string(shape) +
                                    ": two components share charge class " +
                                    std::to_string(id));
          clean = false;
        }
        used[static_cast<std::size_t>(id)] = true;
      } else if (*slot != id) {
        report.failures.push_back(
            "shape " + shape_string(shape) + ": " +
            tabloid_string(graph.vertex(a)) +
            " is joined to a tabloid of another charge class");
        clean = false;
      }
    }
  }
}

inline void check_monodromy_membership(const EnumerationSpec& spec, int jobs,
                                       Report& report) {
  (void)jobs;
  for (const Partition& shape : shapes_of(spec.n)) {
    std::vector<Weight> changes;
    Int count = static_cast<Int>(part_multiplicity_sums(shape).size());
    for (Int i = 1; i <= count; ++i)
      for (Int j = i + 1; j <= count; ++j)
        changes.push_back(monodromy_generator_loop(shape, i, j).change);
    ++report.checked;
    if (!same_lattice(changes, gup_generators(shape)))
      report.failures.push_back("shape " + shape_string(shape) +
                                ": loop changes span the wrong lattice");
    Int returns = 0;
    Int violations = 0;
    closed_walk_returns(shape, 80, [&](const Weight& delta) {
      ++report.checked;
      ++returns;
      if (!gup_contains(shape, delta)) ++violations;
    });
    if (violations > 0)
      report.failures.push_back(
          "shape " + shape_string(shape) + ": " + std::to_string(violations) +
          " of " + std::to_string(returns) + " closed walks left the lattice");
  }
}

inline void check_block_constancy(const EnumerationSpec& spec, int jobs,
                                  Report& report) {
  (void)jobs;
  for (const Partition& shape : shapes_of(spec.n)) {
    Int returns = 0;
    Int violations = 0;
    closed_walk_returns(shape, 80, [&](const Weight& delta) {
      ++report.checked;
      ++returns;
      for (Int k = 1; k < shape.length(); ++k)
        if (shape.part(k) == shape.part(k + 1) &&
            delta[static_cast<std::size_t>(k - 1)] !=
                delta[static_cast<std::size_t>(k)]) {
          ++violations;
          break;
        }
    });
    if (violations > 0)
      report.failures.push_back("shape " + shape_string(shape) + ": " +
                                std::to_string(violations) + " of " +
                                std::to_string(returns) +
                                " closed walks moved weight within a block");
  }
}

}  // namespace detail

inline Report verify(const std::string& theorem, const EnumerationSpec& spec,
                     int jobs = 1) {
  check_modulus(spec.n);
  Report report;
  report.theorem = theorem;
  if (theorem == "roundtrip")
    detail::check_roundtrip(spec, jobs, report);
  else if (theorem == "descents")
    detail::check_descents(spec, jobs, report);
  else if (theorem == "inverse")
    detail::check_inverse(spec, jobs, report);
  else if (theorem == "sign")
    detail::check_sign(spec, jobs, report);
  else if (theorem == "knuth_action")
    detail::check_knuth_action(spec, jobs, report);
  else if (theorem == "dominance_charge_vs_concurrency")
    detail::check_dominance(spec, jobs, report);
  else if (theorem == "covering")
    detail::check_covering(spec, jobs, report);
  else if (theorem == "components")
    detail::check_components(spec, jobs, report);
  else if (theorem == "monodromy_membership")
    detail::check_monodromy_membership(spec, jobs, report);
  else if (theorem == "block_constancy")
    detail::check_block_constancy(spec, jobs, report);
  else
    throw unknown_theorem_error("no registered check is named " + theorem);
  return report;
}

}  // namespace ambc
