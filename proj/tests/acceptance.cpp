// Acceptance harness: runs the ten structural checks below against the
// library and prints one PASS/FAIL line per criterion, with diagnostics for
// anything that fails. Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ambc/kldeg.hpp"
#include "ambc/lattice.hpp"
#include "ambc/matrix_ball.hpp"
#include "ambc/perm.hpp"
#include "ambc/stream.hpp"
#include "ambc/tabloid.hpp"
#include "ambc/verify.hpp"

using namespace ambc;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point from) {
  return std::chrono::duration<double, std::milli>(Clock::now() - from)
      .count();
}

std::vector<Partition> partitions_of(Int n) {
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

AffinePermutation random_window(std::mt19937& gen, int n, Int band) {
  std::vector<Int> window(static_cast<std::size_t>(n));
  std::iota(window.begin(), window.end(), Int{1});
  std::shuffle(window.begin(), window.end(), gen);
  std::uniform_int_distribution<Int> shift(-band, band);
  for (Int& value : window) value += n * shift(gen);
  return AffinePermutation(n, window);
}

Tabloid random_tabloid(std::mt19937& gen, const Partition& shape) {
  Int n = shape.size();
  std::vector<Int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), Int{1});
  std::shuffle(pool.begin(), pool.end(), gen);
  std::vector<Row> rows;
  std::size_t at = 0;
  for (Int k = 1; k <= shape.length(); ++k) {
    rows.emplace_back(pool.begin() + at, pool.begin() + at + shape.part(k));
    at += static_cast<std::size_t>(shape.part(k));
  }
  return Tabloid(n, shape, rows);
}

Weight weight_difference(const Weight& a, const Weight& b) {
  Weight out = a;
  for (std::size_t t = 0; t < out.size(); ++t) out[t] -= b[t];
  return out;
}

// Weight drift along a tabloid walk, recomputed from scratch: an exchange of
// the top residue with 1 moves one unit from the row of n to the row of 1.
std::optional<Weight> stepped_drift(const std::vector<Tabloid>& walk) {
  Weight total(static_cast<std::size_t>(walk.front().length()), 0);
  for (std::size_t s = 0; s + 1 < walk.size(); ++s) {
    const Tabloid& a = walk[s];
    const Tabloid& b = walk[s + 1];
    if (a == b) continue;
    std::optional<Int> exchanged;
    for (const auto& [x, moved] : tabloid_knuth_neighbors(a))
      if (moved == b) exchanged = x;
    if (!exchanged) return std::nullopt;
    if (*exchanged == a.n()) {
      total[static_cast<std::size_t>(a.row_of(a.n()) - 1)] -= 1;
      total[static_cast<std::size_t>(a.row_of(1) - 1)] += 1;
    }
  }
  return total;
}

std::vector<Tabloid> underlying(const std::vector<Tableau>& walk) {
  std::vector<Tabloid> out;
  out.reserve(walk.size());
  for (const Tableau& t : walk) out.push_back(t.to_tabloid());
  return out;
}

Tableau random_rebasable(std::mt19937& gen, const Partition& shape, Int c1,
                         Int c2) {
  Int n = shape.size();
  Partition conj = shape.conjugate();
  Int len1 = conj.part(c1), len2 = conj.part(c2);
  Int k = len1 - len2, l = len2;
  std::uniform_int_distribution<Int> base(0, n - 1);
  Int i = base(gen);
  std::vector<std::vector<Int>> rows(static_cast<std::size_t>(shape.length()));
  for (Int r = 1; r <= shape.length(); ++r)
    rows[static_cast<std::size_t>(r - 1)].assign(
        static_cast<std::size_t>(shape.part(r)), 0);
  for (Int s = 0; s < len1; ++s)
    rows[static_cast<std::size_t>(s)][static_cast<std::size_t>(c1 - 1)] =
        residue(static_cast<int>(n), i + 1 + s);
  for (Int s = 0; s < len2; ++s)
    rows[static_cast<std::size_t>(s)][static_cast<std::size_t>(c2 - 1)] =
        residue(static_cast<int>(n), i + k + l + 1 + s);
  std::vector<Int> rest;
  for (Int v = i + k + 2 * l + 1; v <= i + n; ++v)
    rest.push_back(residue(static_cast<int>(n), v));
  std::shuffle(rest.begin(), rest.end(), gen);
  std::size_t at = 0;
  for (auto& row : rows)
    for (Int& e : row)
      if (e == 0) e = rest[at++];
  return Tableau(n, shape, rows);
}

// Follows a tabloid walk through the bijection at a fixed insertion tabloid
// and returns the weight drift of the canonical triples, if every step lifts
// uniquely.
std::optional<Weight> lifted_drift(const Partition& shape,
                                   const std::vector<Tabloid>& walk,
                                   std::ostream& diag) {
  Tabloid P = column_superstandard(shape, 1);
  AffinePermutation w =
      psi({P, walk.front(), Weight(static_cast<std::size_t>(shape.length()), 0)});
  Triple before = phi(w);
  for (std::size_t s = 0; s + 1 < walk.size(); ++s) {
    if (walk[s + 1] == walk[s]) continue;
    int hits = 0;
    std::optional<AffinePermutation> next;
    for (const auto& [x, moved] : knuth_neighbors(w)) {
      Triple t = phi(moved);
      if (t.Q == walk[s + 1]) {
        ++hits;
        next = moved;
      }
    }
    if (hits != 1) {
      diag << "      step " << s << " lifted " << hits << " ways\n";
      return std::nullopt;
    }
    w = *next;
  }
  Triple after = phi(w);
  if (!(after.P == before.P) || !(after.Q == walk.back())) {
    diag << "      the lifted walk drifted off its tabloids\n";
    return std::nullopt;
  }
  return weight_difference(after.rho, before.rho);
}

bool report_clean(const std::string& name, int n_lo, int n_hi, Int band,
                  std::ostream& diag, Int* total = nullptr) {
  bool pass = true;
  for (int n = n_lo; n <= n_hi; ++n) {
    Report report = verify(name, EnumerationSpec{n, band, -1}, 4);
    if (total) *total += report.checked;
    for (const std::string& failure : report.failures) {
      diag << "      " << failure << '\n';
      pass = false;
    }
  }
  return pass;
}

bool criterion_golden_triple(std::ostream& diag) {
  auto from = Clock::now();
  Triple t = phi(parse_window(7, "[1,2,17,5,14,18,20]"));
  Partition shape({3, 3, 1});
  bool pass = t.P == Tabloid(7, shape, {{1, 2, 5}, {4, 6, 7}, {3}}) &&
              t.Q == Tabloid(7, shape, {{3, 6, 7}, {2, 4, 5}, {1}}) &&
              t.rho == Weight{3, 3, 1};
  if (!pass)
    diag << "      got P=" << tabloid_string(t.P)
         << " Q=" << tabloid_string(t.Q) << '\n';
  double ms = elapsed_ms(from);
  if (ms >= 1000.0) {
    diag << "      took " << ms << " ms\n";
    pass = false;
  }
  return pass;
}

bool criterion_golden_moves(std::ostream& diag) {
  auto from = Clock::now();
  AffinePermutation w(6, {1, 4, 6, 2, 5, 3});
  Triple base = phi(w);
  Partition shape({3, 2, 1});
  bool pass = true;

  auto interior = knuth_move(w, 3);
  if (!interior || !(*interior == AffinePermutation(6, {1, 4, 2, 6, 5, 3}))) {
    diag << "      the interior move moved wrongly\n";
    pass = false;
  } else {
    Triple t = phi(*interior);
    if (!(t.P == base.P) ||
        !(t.Q == Tabloid(6, shape, {{1, 2, 4}, {3, 5}, {6}})) ||
        t.rho != base.rho) {
      diag << "      interior move: wrong triple\n";
      pass = false;
    }
  }

  auto wrapped = knuth_move(w, 6);
  if (!wrapped || !(*wrapped == AffinePermutation(6, {-3, 4, 6, 2, 5, 7}))) {
    diag << "      the wrapped move moved wrongly\n";
    pass = false;
  } else {
    Triple t = phi(*wrapped);
    if (!(t.P == base.P) ||
        !(t.Q == Tabloid(6, shape, {{2, 3, 6}, {4, 5}, {1}})) ||
        t.rho != Weight{1, 0, -1}) {
      diag << "      wrapped move: wrong triple\n";
      pass = false;
    }
  }

  double ms = elapsed_ms(from);
  if (ms >= 1000.0) {
    diag << "      took " << ms << " ms\n";
    pass = false;
  }
  return pass;
}

bool criterion_roundtrip(std::ostream& diag) {
  Int total = 0;
  bool pass = report_clean("roundtrip", 1, 4, 1, diag, &total);
  diag << "      " << total << " windows round-tripped\n";
  return pass && total == 2127;
}

bool criterion_sign(std::ostream& diag) {
  bool pass = report_clean("sign", 1, 4, 1, diag);
  AffinePermutation w(4, {7, 2, 4, 1});
  if (inversion_count(w) != 7) {
    diag << "      expected 7 inversions, counted " << inversion_count(w)
         << '\n';
    pass = false;
  }
  Triple t = phi(w);
  std::vector<Int> data = {inversion_count(t.P), inversion_count(t.Q),
                           inversion_count(t.P.shape()),
                           weight_inversions(t.P.shape(), t.rho)};
  if (data != std::vector<Int>{2, 1, 1, 1}) {
    diag << "      exponent data";
    for (Int x : data) diag << ' ' << x;
    diag << '\n';
    pass = false;
  }
  return pass;
}

bool criterion_descents_inverse(std::ostream& diag) {
  return report_clean("descents", 1, 4, 1, diag) &&
         report_clean("inverse", 1, 4, 1, diag);
}

bool criterion_knuth_action(std::ostream& diag) {
  return report_clean("knuth_action", 1, 4, 1, diag);
}

bool criterion_dominance(std::ostream& diag) {
  std::mt19937 gen(770901);
  bool pass = true;
  int compared = 0;
  for (int trial = 0; trial < 1000 && pass; ++trial) {
    std::uniform_int_distribution<Int> size(2, 8);
    Int n = size(gen);
    std::vector<Partition> repeats;
    for (const Partition& shape : partitions_of(n))
      for (Int i = 1; i < shape.length(); ++i)
        if (shape.part(i) == shape.part(i + 1)) {
          repeats.push_back(shape);
          break;
        }
    std::uniform_int_distribution<std::size_t> which(0, repeats.size() - 1);
    const Partition& shape = repeats[which(gen)];
    Tabloid P = random_tabloid(gen, shape);
    Tabloid Q = random_tabloid(gen, shape);
    for (Int i = 1; i < shape.length(); ++i) {
      if (shape.part(i) != shape.part(i + 1)) continue;
      ++compared;
      if (dominance_constant(P, Q, i) !=
          dominance_constant_via_concurrency(P, Q, i)) {
        diag << "      shape " << shape_string(shape) << " P="
             << tabloid_string(P) << " Q=" << tabloid_string(Q) << " row "
             << i << '\n';
        pass = false;
      }
    }
    AffinePermutation w =
        random_window(gen, static_cast<int>(std::min<Int>(n, 6)), 2);
    Triple t = phi(w);
    if (dominant_representative(t.P, t.Q, t.rho) != t.rho) {
      diag << "      canonical weight moved for " << window_string(w) << '\n';
      pass = false;
    }
    Weight noisy = t.rho;
    std::uniform_int_distribution<Int> jitter(-2, 2);
    for (Int& x : noisy) x += jitter(gen);
    Weight once = dominant_representative(t.P, t.Q, noisy);
    if (dominant_representative(t.P, t.Q, once) != once) {
      diag << "      the representative is not idempotent for "
           << window_string(w) << '\n';
      pass = false;
    }
  }
  diag << "      " << compared << " constant pairs compared\n";
  return pass && compared > 0;
}

bool criterion_components(std::ostream& diag) {
  return report_clean("components", 1, 7, 1, diag);
}

bool criterion_monodromy(std::ostream& diag) {
  bool pass = true;

  Partition staircase({2, 1, 1});
  GeneratorLoop loop = monodromy_generator_loop(staircase, 1, 2);
  auto change = lifted_drift(staircase, loop.walk, diag);
  if (!change || *change != Weight{2, -1, -1}) {
    diag << "      the staircase loop did not lift to (2,-1,-1)\n";
    pass = false;
  }

  for (Int n = 1; n <= 7; ++n)
    for (const Partition& shape : partitions_of(n)) {
      std::vector<Weight> changes;
      Int count = static_cast<Int>(part_multiplicity_sums(shape).size());
      for (Int i = 1; i <= count; ++i)
        for (Int j = i + 1; j <= count; ++j)
          changes.push_back(monodromy_generator_loop(shape, i, j).change);
      if (!same_lattice(changes, gup_generators(shape))) {
        diag << "      loop changes span the wrong lattice for "
             << shape_string(shape) << '\n';
        pass = false;
      }
    }

  std::mt19937 gen(990125);
  int returns = 0;
  std::map<std::string, std::pair<int, int>> by_shape;  // violations, returns
  for (int walk = 0; walk < 200; ++walk) {
    std::uniform_int_distribution<Int> size(2, 7);
    Int n = size(gen);
    auto shapes = partitions_of(n);
    std::uniform_int_distribution<std::size_t> which(0, shapes.size() - 1);
    const Partition& shape = shapes[which(gen)];
    Tabloid P = column_superstandard(shape, 1);
    Tabloid Q0 = reverse_row_superstandard(shape, 1);
    AffinePermutation w =
        psi({P, Q0, Weight(static_cast<std::size_t>(shape.length()), 0)});
    Triple base = phi(w);
    for (int step = 0; step < 20; ++step) {
      auto nbrs = knuth_neighbors(w);
      if (nbrs.empty()) break;
      std::uniform_int_distribution<std::size_t> pick(0, nbrs.size() - 1);
      w = nbrs[pick(gen)].second;
      Triple t = phi(w);
      if (t.Q == base.Q) {
        ++returns;
        auto& tally = by_shape[shape_string(shape)];
        ++tally.second;
        if (!gup_contains(shape, weight_difference(t.rho, base.rho))) {
          ++tally.first;
          pass = false;
        }
      }
    }
  }
  for (const auto& [shape, tally] : by_shape)
    if (tally.first > 0)
      diag << "      shape " << shape << ": " << tally.first << " of "
           << tally.second << " closed-walk weight changes left the lattice\n";
  diag << "      " << returns << " walk returns checked\n";
  return pass && returns > 0;
}

bool criterion_rebase_cycle(std::ostream& diag) {
  bool pass = true;

  Partition shape({3, 3, 2, 1});
  Tableau start(9, shape, {{7, 6, 2}, {8, 4, 3}, {9, 5}, {1}});
  std::vector<Tableau> want = {
      start,
      Tableau(9, shape, {{7, 6, 1}, {8, 4, 3}, {9, 5}, {2}}),
      Tableau(9, shape, {{7, 6, 9}, {8, 4, 3}, {1, 5}, {2}}),
      Tableau(9, shape, {{7, 6, 8}, {9, 4, 3}, {1, 5}, {2}}),
      Tableau(9, shape, {{8, 6, 7}, {9, 4, 3}, {1, 5}, {2}}),
      Tableau(9, shape, {{8, 6, 7}, {9, 4, 2}, {1, 5}, {3}}),
      Tableau(9, shape, {{8, 6, 7}, {9, 4, 1}, {2, 5}, {3}}),
      Tableau(9, shape, {{8, 6, 7}, {1, 4, 9}, {2, 5}, {3}}),
      Tableau(9, shape, {{9, 6, 7}, {1, 4, 8}, {2, 5}, {3}}),
  };
  if (column_rebase(start, 1, 3, RebaseDirection::forward) != want) {
    diag << "      the nine-tableau rebase sequence is wrong\n";
    pass = false;
  }

  Partition wide({4, 3, 2, 2});
  if (cycle_weight_change(column_superstandard_tableau(wide, 10), 2) !=
      Weight{-1, -1, 1, 1}) {
    diag << "      the worked column cycle moved the wrong weight\n";
    pass = false;
  }

  std::mt19937 gen(46097);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<Int> size(3, 10);
    Int n = size(gen);
    std::vector<Partition> wide_shapes;
    for (const Partition& sh : partitions_of(n))
      if (sh.part(1) >= 2) wide_shapes.push_back(sh);
    std::uniform_int_distribution<std::size_t> which(0, wide_shapes.size() - 1);
    const Partition& sh = wide_shapes[which(gen)];
    std::uniform_int_distribution<Int> col2(2, sh.part(1));
    Int c2 = col2(gen);
    std::uniform_int_distribution<Int> col1(1, c2 - 1);
    Int c1 = col1(gen);
    Tableau t = random_rebasable(gen, sh, c1, c2);
    auto drift =
        stepped_drift(underlying(column_rebase(t, c1, c2,
                                               RebaseDirection::forward)));
    if (!drift || rebase_weight_change(t, c1, c2) != *drift) {
      diag << "      rebase drift mismatch on " << shape_string(sh) << '\n';
      pass = false;
    }
  }

  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<Int> size(2, 10);
    Int n = size(gen);
    auto shapes = partitions_of(n);
    std::uniform_int_distribution<std::size_t> which(0, shapes.size() - 1);
    const Partition& sh = shapes[which(gen)];
    std::uniform_int_distribution<Int> pick_start(1, n);
    std::uniform_int_distribution<Int> pick_col(1, sh.part(1));
    Tableau t = column_superstandard_tableau(sh, pick_start(gen));
    Int j = pick_col(gen);
    auto drift =
        stepped_drift(underlying(column_cycle(t, j, RebaseDirection::forward)));
    if (!drift || cycle_weight_change(t, j) != *drift) {
      diag << "      cycle drift mismatch on " << shape_string(sh) << '\n';
      pass = false;
    }
  }

  return pass;
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    std::function<bool(std::ostream&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"worked seven-window example maps to its exact triple",
       criterion_golden_triple},
      {"worked Knuth moves map to their exact triples",
       criterion_golden_moves},
      {"round trip and dominance over the full band, n <= 4",
       criterion_roundtrip},
      {"sign identity over the full band, with the pinned four-window",
       criterion_sign},
      {"descent sets and inverses over the full band",
       criterion_descents_inverse},
      {"every Knuth edge fixes P, moves Q, and follows the weight rule",
       criterion_knuth_action},
      {"dominance constants agree both ways on 1000 random pairs",
       criterion_dominance},
      {"move-graph components equal charge classes for all n <= 7",
       criterion_components},
      {"generator loops lift correctly and span the expected lattice",
       criterion_monodromy},
      {"rebase and cycle goldens, with 100 random drift checks each",
       criterion_rebase_cycle},
  };

  std::size_t passed = 0;
  for (std::size_t at = 0; at < criteria.size(); ++at) {
    std::ostringstream diag;
    bool ok = false;
    std::string error;
    try {
      ok = criteria[at].run(diag);
    } catch (const std::exception& e) {
      error = e.what();
    }
    std::cout << (ok ? "PASS" : "FAIL") << "  " << at + 1 << "  "
              << criteria[at].title << '\n';
    if (!ok) {
      std::cout << diag.str();
      if (!error.empty()) std::cout << "      threw: " << error << '\n';
    }
    if (ok) ++passed;
  }
  std::cout << passed << "/" << criteria.size() << " criteria passed\n";
  return passed == criteria.size() ? 0 : 1;
}
