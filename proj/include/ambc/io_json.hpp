#pragma once

// JSON, JSONL, and CSV codecs for the exchange formats: windows, tabloids,
// triples, verification reports, and move-graph exports.

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ambc/kldeg.hpp"
#include "ambc/lattice.hpp"
#include "ambc/matrix_ball.hpp"
#include "ambc/perm.hpp"
#include "ambc/tabloid.hpp"
#include "ambc/verify.hpp"

namespace ambc {

inline nlohmann::json parse_json_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("malformed JSON: ") + e.what());
  }
}

namespace detail {

template <typename T>
T json_field(const nlohmann::json& j, const char* name) {
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw input_error(std::string("bad or missing JSON field \"") + name +
                      "\"");
  }
}

}  // namespace detail

inline nlohmann::json tabloid_rows_json(const Tabloid& T) {
  nlohmann::json rows = nlohmann::json::array();
  for (Int k = 1; k <= T.length(); ++k) rows.push_back(T.row(k));
  return rows;
}

inline Tabloid tabloid_from_rows(int n, const nlohmann::json& rows) {
  if (!rows.is_array() || rows.empty())
    throw input_error("tabloid rows must be a nonempty array of arrays");
  std::vector<Row> data;
  std::vector<Int> parts;
  for (const nlohmann::json& row : rows) {
    try {
      data.push_back(row.get<Row>());
    } catch (const nlohmann::json::exception&) {
      throw input_error("tabloid rows must be arrays of integers");
    }
    parts.push_back(static_cast<Int>(data.back().size()));
  }
  for (std::size_t k = 1; k < parts.size(); ++k)
    if (parts[k] > parts[k - 1])
      throw input_error("tabloid rows must weakly shorten downward");
  return Tabloid(n, Partition(parts), data);
}

inline nlohmann::json tabloid_json(const Tabloid& T) {
  return {{"n", T.n()}, {"rows", tabloid_rows_json(T)}};
}

inline Tabloid tabloid_from_json(const nlohmann::json& j) {
  int n = detail::json_field<int>(j, "n");
  if (!j.contains("rows")) throw input_error("bad or missing JSON field \"rows\"");
  return tabloid_from_rows(n, j.at("rows"));
}

inline nlohmann::json triple_json(const Triple& t) {
  return {{"n", t.P.n()},
          {"P", tabloid_rows_json(t.P)},
          {"Q", tabloid_rows_json(t.Q)},
          {"rho", t.rho}};
}

inline Triple triple_from_json(const nlohmann::json& j) {
  int n = detail::json_field<int>(j, "n");
  if (!j.contains("P") || !j.contains("Q"))
    throw input_error("a triple needs JSON fields \"P\" and \"Q\"");
  Tabloid P = tabloid_from_rows(n, j.at("P"));
  Tabloid Q = tabloid_from_rows(n, j.at("Q"));
  Weight rho = detail::json_field<Weight>(j, "rho");
  return {std::move(P), std::move(Q), std::move(rho)};
}

inline nlohmann::json window_json(const AffinePermutation& w) {
  return {{"n", w.n()}, {"window", w.window()}};
}

inline AffinePermutation window_from_json(const nlohmann::json& j) {
  return AffinePermutation(detail::json_field<int>(j, "n"),
                           detail::json_field<std::vector<Int>>(j, "window"));
}

inline nlohmann::json report_json(const Report& r) {
  return {{"theorem", r.theorem},
          {"checked", r.checked},
          {"failures", r.failures}};
}

inline void write_edges_jsonl(std::ostream& out, const DegGraph& g) {
  for (const DegEdge& e : g.edges())
    out << nlohmann::json{{"from", e.from},
                          {"to", e.to},
                          {"exchanged", e.exchanged}}
        << '\n';
}

inline void write_components_csv(std::ostream& out, const DegGraph& g) {
  out << "tabloid,charge,component\n";
  for (std::size_t a = 0; a < g.size(); ++a)
    out << a << ',' << g.charge_of(a) << ',' << g.component_of(a) << '\n';
}

}  // namespace ambc
