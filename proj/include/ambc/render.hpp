#pragma once

// Plain-text and SVG diagrams of permutation matrices and streams, drawn in
// matrix orientation: rows grow downward, columns grow rightward, and block
// separators mark every multiple of n on both axes.

#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "ambc/lattice.hpp"
#include "ambc/matrix_ball.hpp"
#include "ambc/perm.hpp"
#include "ambc/stream.hpp"

namespace ambc {

struct Viewport {
  Int row_lo, row_hi, col_lo, col_hi;
};

inline Viewport default_viewport(int n) {
  Int m = static_cast<Int>(n);
  return {1 - m, 2 * m, 1 - m, 2 * m};
}

namespace detail {

constexpr const char* kBallToken = "●";

struct Diagram {
  int n = 1;
  Viewport vp{};
  std::map<std::pair<Int, Int>, std::string> cells;
};

inline void check_viewport(const Viewport& vp) {
  if (vp.row_lo > vp.row_hi || vp.col_lo > vp.col_hi)
    throw input_error("the viewport must be a nonempty rectangle");
}

inline Diagram balls_diagram(const AffinePermutation& w, const Numbering* d,
                             const Viewport& vp) {
  check_viewport(vp);
  Diagram g{w.n(), vp, {}};
  for (Int i = vp.row_lo; i <= vp.row_hi; ++i) {
    Int col = w(i);
    if (col < vp.col_lo || col > vp.col_hi) continue;
    g.cells[{i, col}] =
        d ? std::to_string(d->at(Cell{i, col})) : std::string(kBallToken);
  }
  return g;
}

inline Diagram stream_diagram(const Stream& S, const Viewport& vp) {
  check_viewport(vp);
  Diagram g{S.n(), vp, {}};
  Int n = S.n();
  for (const Cell& c : S.cells()) {
    Int lo = ceil_div(vp.row_lo - c.row, n);
    Int hi = floor_div(vp.row_hi - c.row, n);
    for (Int k = lo; k <= hi; ++k) {
      Cell moved = translated(c, k, n);
      if (moved.col < vp.col_lo || moved.col > vp.col_hi) continue;
      g.cells[{moved.row, moved.col}] = "*";
    }
  }
  return g;
}

inline bool block_boundary(Int index, int n) {
  return ((index % n) + n) % n == 0;
}

inline std::string ascii(const Diagram& g) {
  std::size_t width = 1;
  for (const auto& [at, token] : g.cells)
    if (token != kBallToken) width = std::max(width, token.size());
  auto pad = [&](const std::string& token) {
    std::size_t shown = token == kBallToken ? 1 : token.size();
    return std::string(width - shown, ' ') + token;
  };
  std::ostringstream out;
  for (Int r = g.vp.row_lo; r <= g.vp.row_hi; ++r) {
    for (Int c = g.vp.col_lo; c <= g.vp.col_hi; ++c) {
      auto found = g.cells.find({r, c});
      out << pad(found == g.cells.end() ? "." : found->second);
      if (c < g.vp.col_hi)
        out << (block_boundary(c, g.n) ? " | " : " ");
    }
    out << '\n';
    if (r < g.vp.row_hi && block_boundary(r, g.n)) {
      for (Int c = g.vp.col_lo; c <= g.vp.col_hi; ++c) {
        out << std::string(width, '-');
        if (c < g.vp.col_hi) out << (block_boundary(c, g.n) ? "-+-" : "-");
      }
      out << '\n';
    }
  }
  return out.str();
}

inline std::string svg(const Diagram& g) {
  const Int unit = 24;
  Int cols = g.vp.col_hi - g.vp.col_lo + 1;
  Int rows = g.vp.row_hi - g.vp.row_lo + 1;
  auto x = [&](Int c) { return (c - g.vp.col_lo) * unit + unit / 2; };
  auto y = [&](Int r) { return (r - g.vp.row_lo) * unit + unit / 2; };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cols * unit
      << "\" height=\"" << rows * unit << "\">\n";
  for (Int c = g.vp.col_lo; c <= g.vp.col_hi + 1; ++c) {
    bool heavy = block_boundary(c - 1, g.n);
    out << "  <line x1=\"" << (c - g.vp.col_lo) * unit << "\" y1=\"0\" x2=\""
        << (c - g.vp.col_lo) * unit << "\" y2=\"" << rows * unit
        << "\" stroke=\"" << (heavy ? "red" : "#ccc") << "\" stroke-width=\""
        << (heavy ? 2 : 1) << "\"/>\n";
  }
  for (Int r = g.vp.row_lo; r <= g.vp.row_hi + 1; ++r) {
    bool heavy = block_boundary(r - 1, g.n);
    out << "  <line x1=\"0\" y1=\"" << (r - g.vp.row_lo) * unit << "\" x2=\""
        << cols * unit << "\" y2=\"" << (r - g.vp.row_lo) * unit
        << "\" stroke=\"" << (heavy ? "red" : "#ccc") << "\" stroke-width=\""
        << (heavy ? 2 : 1) << "\"/>\n";
  }
  for (const auto& [at, token] : g.cells) {
    if (token == "*") {
      out << "  <rect x=\"" << x(at.second) - unit / 3 << "\" y=\""
          << y(at.first) - unit / 3 << "\" width=\"" << 2 * unit / 3
          << "\" height=\"" << 2 * unit / 3 << "\" fill=\"#888\"/>\n";
      continue;
    }
    if (token == kBallToken) {
      out << "  <circle cx=\"" << x(at.second) << "\" cy=\"" << y(at.first)
          << "\" r=\"" << unit / 3 << "\" fill=\"black\"/>\n";
      continue;
    }
    out << "  <circle cx=\"" << x(at.second) << "\" cy=\"" << y(at.first)
        << "\" r=\"" << unit / 3
        << "\" fill=\"white\" stroke=\"black\"/>\n  <text x=\""
        << x(at.second) << "\" y=\"" << y(at.first) + unit / 8
        << "\" font-size=\"" << unit / 2
        << "\" text-anchor=\"middle\">" << token << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace detail

inline std::string render_ascii(const AffinePermutation& w,
                                const Viewport& vp) {
  return detail::ascii(detail::balls_diagram(w, nullptr, vp));
}

inline std::string render_ascii(const AffinePermutation& w,
                                const Numbering& d, const Viewport& vp) {
  return detail::ascii(detail::balls_diagram(w, &d, vp));
}

inline std::string render_ascii(const Stream& S, const Viewport& vp) {
  return detail::ascii(detail::stream_diagram(S, vp));
}

inline std::string render_svg(const AffinePermutation& w,
                              const Viewport& vp) {
  return detail::svg(detail::balls_diagram(w, nullptr, vp));
}

inline std::string render_svg(const AffinePermutation& w, const Numbering& d,
                              const Viewport& vp) {
  return detail::svg(detail::balls_diagram(w, &d, vp));
}

inline std::string render_svg(const Stream& S, const Viewport& vp) {
  return detail::svg(detail::stream_diagram(S, vp));
}

}  // namespace ambc
