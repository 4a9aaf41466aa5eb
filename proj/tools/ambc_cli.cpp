// Command-line front end: computes the correspondence in both directions,
// explores Knuth moves, reports charge/component and monodromy data, draws
// matrix-ball diagrams, and runs the verification suites.
//
// Exit codes: 0 success, 2 invalid input, 1 internal invariant violation.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ambc/io_json.hpp"
#include "ambc/kldeg.hpp"
#include "ambc/lattice.hpp"
#include "ambc/matrix_ball.hpp"
#include "ambc/perm.hpp"
#include "ambc/render.hpp"
#include "ambc/stream.hpp"
#include "ambc/tabloid.hpp"
#include "ambc/verify.hpp"

namespace {

using namespace ambc;

struct Options {
  int n = 0;
  std::string window, triple, shape, rows, cols;
  std::string suite = "all", viewport, format = "json";
  std::string in_path, out_path;
  Int start = 1, position = 0, band = 1;
  int n_max = 3, jobs = 1;
  bool numbering = false;
  bool has_position = false;
  bool has_shape = false;
};

Int parse_integer(const std::string& text) {
  try {
    std::size_t used = 0;
    Int value = std::stoll(text, &used);
    if (used != text.size()) throw input_error("not an integer: " + text);
    return value;
  } catch (const input_error&) {
    throw;
  } catch (const std::exception&) {
    throw input_error("not an integer: " + text);
  }
}

std::vector<Int> parse_integer_list(const std::string& text,
                                    const char* what) {
  std::string body = text;
  auto strip = [&](char open, char close) {
    if (body.size() >= 2 && body.front() == open && body.back() == close)
      body = body.substr(1, body.size() - 2);
  };
  strip('[', ']');
  strip('(', ')');
  std::vector<Int> out;
  std::string item;
  std::istringstream in(body);
  while (std::getline(in, item, ',')) {
    std::size_t a = item.find_first_not_of(" \t");
    std::size_t b = item.find_last_not_of(" \t");
    if (a == std::string::npos)
      throw input_error(std::string("empty entry in ") + what);
    out.push_back(parse_integer(item.substr(a, b - a + 1)));
  }
  if (out.empty()) throw input_error(std::string(what) + " must be nonempty");
  return out;
}

Partition parse_shape(const std::string& text) {
  return Partition(parse_integer_list(text, "the shape"));
}

Viewport parse_viewport(const std::string& text, int n) {
  if (text.empty()) return default_viewport(n);
  auto parse_range = [](const std::string& part) {
    std::size_t colon = part.find(':');
    if (colon == std::string::npos)
      throw input_error("viewport ranges look like lo:hi");
    return std::pair<Int, Int>{parse_integer(part.substr(0, colon)),
                               parse_integer(part.substr(colon + 1))};
  };
  std::size_t comma = text.find(',');
  auto rows = parse_range(comma == std::string::npos ? text
                                                     : text.substr(0, comma));
  auto cols = comma == std::string::npos
                  ? rows
                  : parse_range(text.substr(comma + 1));
  return Viewport{rows.first, rows.second, cols.first, cols.second};
}

std::string read_input(const Options& o) {
  if (!o.in_path.empty()) {
    std::ifstream in(o.in_path);
    if (!in) throw input_error("cannot read " + o.in_path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
  }
  std::ostringstream text;
  text << std::cin.rdbuf();
  return text.str();
}

void emit(const Options& o, const std::string& text) {
  if (o.out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(o.out_path);
  if (!out) throw input_error("cannot write " + o.out_path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

bool wants_json(const Options& o) { return o.format == "json"; }

std::string weight_string(const Weight& rho) {
  std::ostringstream out;
  out << '(';
  for (std::size_t t = 0; t < rho.size(); ++t) {
    if (t > 0) out << ',';
    out << rho[t];
  }
  out << ')';
  return out.str();
}

AffinePermutation window_argument(const Options& o) {
  if (o.n <= 0) throw input_error("--n must be a positive modulus");
  if (o.window.empty()) throw input_error("--window is required");
  return parse_window(o.n, o.window);
}

Triple triple_argument(const Options& o) {
  std::string text = o.triple.empty() ? read_input(o) : o.triple;
  return triple_from_json(parse_json_text(text));
}

std::string do_phi(const Options& o) {
  Triple t = phi(window_argument(o));
  if (wants_json(o)) return triple_json(t).dump();
  std::ostringstream out;
  out << "P   = " << tabloid_string(t.P) << '\n'
      << "Q   = " << tabloid_string(t.Q) << '\n'
      << "rho = " << weight_string(t.rho);
  return out.str();
}

std::string window_result(const Options& o, const AffinePermutation& w) {
  if (wants_json(o)) return nlohmann::json(window_string(w)).dump();
  return window_string(w);
}

std::string do_psi(const Options& o) {
  return window_result(o, psi(triple_argument(o)));
}

std::string do_inverse(const Options& o) {
  return window_result(o, inverse(window_argument(o)));
}

std::string do_knuth(const Options& o) {
  AffinePermutation w = window_argument(o);
  if (o.has_position) {
    auto moved = knuth_move(w, o.position);
    if (!moved)
      throw input_error("no Knuth move at position " +
                        std::to_string(o.position));
    return window_result(o, *moved);
  }
  auto neighbors = knuth_neighbors(w);
  if (wants_json(o)) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [i, moved] : neighbors)
      out.push_back({{"position", i}, {"window", moved.window()}});
    return out.dump();
  }
  std::ostringstream out;
  for (const auto& [i, moved] : neighbors)
    out << i << ": " << window_string(moved) << '\n';
  return out.str();
}

std::string do_sign(const Options& o) {
  AffinePermutation w = window_argument(o);
  Int inversions = inversion_count(w);
  if (wants_json(o)) {
    nlohmann::json out = window_json(w);
    out["inversions"] = inversions;
    out["sign"] = sign(w);
    return out.dump();
  }
  std::ostringstream out;
  out << "sign = " << sign(w) << " (" << inversions << " inversions)";
  return out.str();
}

std::string do_charge(const Options& o) {
  Tabloid T = o.has_shape
                  ? column_superstandard(parse_shape(o.shape), o.start)
                  : tabloid_from_json(parse_json_text(
                        o.triple.empty() ? read_input(o) : o.triple));
  Int d = d_lambda(T.shape());
  Int value = charge(T);
  if (wants_json(o))
    return nlohmann::json{{"n", T.n()},
                          {"rows", tabloid_rows_json(T)},
                          {"charge", value},
                          {"d_lambda", d},
                          {"component", component_id(T)}}
        .dump();
  std::ostringstream out;
  out << "tabloid   = " << tabloid_string(T) << '\n'
      << "charge    = " << value << '\n'
      << "component = " << component_id(T) << " (mod " << d << ")";
  return out.str();
}

std::string do_dominance(const Options& o) {
  Triple t = (!o.window.empty() || o.n > 0) ? phi(window_argument(o))
                                            : triple_argument(o);
  nlohmann::json constants = nlohmann::json::array();
  std::ostringstream table;
  for (Int i = 1; i < t.P.length(); ++i) {
    if (t.P.shape().part(i) != t.P.shape().part(i + 1)) continue;
    Int r = dominance_constant(t.P, t.Q, i);
    constants.push_back({{"row", i}, {"value", r}});
    table << "r[" << i + 1 << "] = " << r << '\n';
  }
  bool dominant = is_dominant(t.P, t.Q, t.rho);
  if (wants_json(o))
    return nlohmann::json{{"n", t.P.n()},
                          {"constants", constants},
                          {"dominant", dominant}}
        .dump();
  table << "dominant: " << (dominant ? "yes" : "no");
  return table.str();
}

std::string do_components(const Options& o) {
  if (!o.has_shape) throw input_error("--shape is required");
  DegGraph graph(parse_shape(o.shape));
  if (wants_json(o)) {
    nlohmann::json edges = nlohmann::json::array();
    for (const DegEdge& e : graph.edges())
      edges.push_back(
          {{"from", e.from}, {"to", e.to}, {"exchanged", e.exchanged}});
    return nlohmann::json{{"shape", graph.shape().parts()},
                          {"vertices", graph.size()},
                          {"edges", edges},
                          {"components", graph.component_count()},
                          {"d_lambda", d_lambda(graph.shape())}}
        .dump();
  }
  std::ostringstream out;
  write_components_csv(out, graph);
  return out.str();
}

std::string do_monodromy(const Options& o) {
  if (!o.has_shape) throw input_error("--shape is required");
  Partition shape = parse_shape(o.shape);
  std::vector<Int> ms = part_multiplicity_sums(shape);
  std::vector<Weight> generators = gup_generators(shape);
  std::vector<Weight> changes;
  nlohmann::json loops = nlohmann::json::array();
  std::ostringstream table;
  for (Int i = 1; i <= static_cast<Int>(ms.size()); ++i)
    for (Int j = i + 1; j <= static_cast<Int>(ms.size()); ++j) {
      GeneratorLoop loop = monodromy_generator_loop(shape, i, j);
      changes.push_back(loop.change);
      loops.push_back({{"i", i},
                       {"j", j},
                       {"change", loop.change},
                       {"steps", loop.walk.size() - 1}});
      table << "loop (" << i << ',' << j
            << "): change = " << weight_string(loop.change) << " in "
            << loop.walk.size() - 1 << " steps\n";
    }
  bool match = same_lattice(changes, generators);
  if (wants_json(o))
    return nlohmann::json{{"shape", shape.parts()},
                          {"multiplicity_sums", ms},
                          {"generators", generators},
                          {"loops", loops},
                          {"lattice_match", match}}
        .dump();
  table << "lattice match: " << (match ? "yes" : "no");
  return table.str();
}

std::string do_render(const Options& o) {
  if (o.n <= 0) throw input_error("--n must be a positive modulus");
  bool svg = o.format == "svg";
  Viewport vp = parse_viewport(o.viewport, o.n);
  if (!o.rows.empty() || !o.cols.empty()) {
    if (o.rows.empty() || o.cols.empty())
      throw input_error("stream rendering needs both --rows and --cols");
    Stream S = make_stream(o.n, parse_integer_list(o.rows, "--rows"),
                           parse_integer_list(o.cols, "--cols"), o.start);
    return svg ? render_svg(S, vp) : render_ascii(S, vp);
  }
  AffinePermutation w = window_argument(o);
  if (o.numbering) {
    Numbering d = channel_numbering(w.partial(),
                                    southwest_channel(w.partial()));
    return svg ? render_svg(w, d, vp) : render_ascii(w, d, vp);
  }
  return svg ? render_svg(w, vp) : render_ascii(w, vp);
}

std::string do_verify(const Options& o) {
  if (o.n_max < 1) throw input_error("--n-max must be at least 1");
  std::vector<std::string> suites;
  if (o.suite == "all")
    suites = registered_theorems();
  else
    suites.push_back(o.suite);
  nlohmann::json out = nlohmann::json::array();
  std::ostringstream table;
  for (const std::string& name : suites)
    for (int n = 1; n <= o.n_max; ++n) {
      Report report = verify(name, EnumerationSpec{n, o.band, -1}, o.jobs);
      nlohmann::json entry = report_json(report);
      entry["n"] = n;
      out.push_back(entry);
      table << name << " (n=" << n << "): checked " << report.checked
            << ", failures " << report.failures.size() << '\n';
      for (const std::string& failure : report.failures)
        table << "  " << failure << '\n';
    }
  return wants_json(o) ? out.dump() : table.str();
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Affine matrix-ball correspondence toolkit"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format,
                    "Output format: json, table, ascii, or svg")
        ->check(CLI::IsMember({"json", "table", "ascii", "svg"}));
    cmd->add_option("--out", o.out_path, "Write output to this path");
    cmd->add_option("--in", o.in_path, "Read input from this path");
    return cmd;
  };
  auto add_window = [&](CLI::App* cmd) {
    cmd->add_option("--n", o.n, "Modulus of the window");
    cmd->add_option("--window", o.window, "Window such as [1,2,17,5,14,18,20]");
    return cmd;
  };

  add_window(add_common(app.add_subcommand("phi", "Window to triple")));
  add_common(app.add_subcommand("psi", "Triple to window"))
      ->add_option("--triple", o.triple, "Triple JSON");
  add_window(add_common(app.add_subcommand("inverse", "Invert a window")));
  CLI::App* knuth = add_window(
      add_common(app.add_subcommand("knuth", "Knuth moves of a window")));
  CLI::Option* position =
      knuth->add_option("--position", o.position,
                        "Move position, taken mod n");
  add_window(add_common(
      app.add_subcommand("sign", "Inversion count and sign of a window")));
  CLI::App* charge_cmd = add_common(app.add_subcommand(
      "charge", "Charge and component of a tabloid (JSON or superstandard)"));
  CLI::Option* charge_shape =
      charge_cmd->add_option("--shape", o.shape, "Partition such as [2,1]");
  charge_cmd->add_option("--start", o.start, "Superstandard start residue");
  charge_cmd->add_option("--triple", o.triple, "Tabloid JSON");
  CLI::App* dominance = add_window(add_common(
      app.add_subcommand("dominance", "Dominance constants of a triple")));
  dominance->add_option("--triple", o.triple, "Triple JSON");
  CLI::App* components = add_common(app.add_subcommand(
      "components", "Knuth move graph of all tabloids of a shape"));
  CLI::Option* components_shape =
      components->add_option("--shape", o.shape, "Partition such as [2,1]");
  CLI::App* monodromy = add_common(app.add_subcommand(
      "monodromy", "Generator loops and their weight changes"));
  CLI::Option* monodromy_shape =
      monodromy->add_option("--shape", o.shape, "Partition such as [2,1,1]");
  CLI::App* render = add_window(add_common(
      app.add_subcommand("render", "Draw a window or stream as a grid")));
  render->add_flag("--numbering", o.numbering,
                   "Label balls with the southwest channel numbering");
  render->add_option("--viewport", o.viewport,
                     "lo:hi or rlo:rhi,clo:chi (default 1-n..2n)");
  render->add_option("--rows", o.rows, "Stream row residues such as [1]");
  render->add_option("--cols", o.cols, "Stream column residues such as [1]");
  render->add_option("--start", o.start, "Stream altitude");
  CLI::App* verify_cmd =
      add_common(app.add_subcommand("verify", "Run verification suites"));
  verify_cmd->add_option("--suite", o.suite,
                         "Theorem name or \"all\" (default all)");
  verify_cmd->add_option("--n-max", o.n_max, "Largest modulus (default 3)");
  verify_cmd->add_option("--band", o.band, "Shift band (default 1)");
  verify_cmd->add_option("--jobs", o.jobs, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  o.has_position = position->count() > 0;
  o.has_shape = charge_shape->count() > 0 || components_shape->count() > 0 ||
                monodromy_shape->count() > 0;

  try {
    std::string result;
    if (app.got_subcommand("phi"))
      result = do_phi(o);
    else if (app.got_subcommand("psi"))
      result = do_psi(o);
    else if (app.got_subcommand("inverse"))
      result = do_inverse(o);
    else if (app.got_subcommand("knuth"))
      result = do_knuth(o);
    else if (app.got_subcommand("sign"))
      result = do_sign(o);
    else if (app.got_subcommand("charge"))
      result = do_charge(o);
    else if (app.got_subcommand("dominance"))
      result = do_dominance(o);
    else if (app.got_subcommand("components"))
      result = do_components(o);
    else if (app.got_subcommand("monodromy"))
      result = do_monodromy(o);
    else if (app.got_subcommand("render"))
      result = do_render(o);
    else
      result = do_verify(o);
    emit(o, result);
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
