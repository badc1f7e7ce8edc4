// Command-line front end: analyze scrambler files, build scramblers from
// moduli-space correspondences, classify critical-orbit portraits, and export
// Graphviz DOT. All analyses run in exact rational arithmetic; floating-point
// values in reports are display hints only.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "strata/expr_parser.hpp"
#include "strata/jsr.hpp"
#include "strata/modspace.hpp"
#include "strata/portrait.hpp"
#include "strata/scrambler.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace strata;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitObstructed = 10;
constexpr int kExitUndecided = 20;
constexpr int kExitNotCovered = 30;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string path_string(const Scrambler& s, const Path& path) {
  if (path.empty()) return "(empty path)";
  std::string out = s.vertex(s.edge(path.front()).src).name;
  for (std::size_t e : path) out += " -> " + s.vertex(s.edge(e).dst).name;
  return out;
}

std::string bound_string(const RootBound& b) {
  if (b.root == 1) return rat_to_string(b.base);
  return "(" + rat_to_string(b.base) + ")^(1/" + std::to_string(b.root) + ")";
}

std::string approx_string(double x) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed << x;
  return out.str();
}

// The variable of an expression is its unique identifier when --var is not
// given explicitly.
std::string infer_var(const std::string& a, const std::string& b) {
  std::string found;
  for (const std::string* s : {&a, &b}) {
    for (std::size_t i = 0; i < s->size(); ++i) {
      if (!std::isalpha(static_cast<unsigned char>((*s)[i]))) continue;
      std::size_t j = i;
      while (j < s->size() && (std::isalnum(static_cast<unsigned char>((*s)[j])) || (*s)[j] == '_'))
        ++j;
      std::string id = s->substr(i, j - i);
      if (!found.empty() && id != found)
        throw std::runtime_error("ambiguous variable: '" + found + "' vs '" + id +
                                 "'; pass --var");
      found = id;
      i = j;
    }
  }
  return found.empty() ? "t" : found;
}

CuspLabelMap parse_labels(const std::string& text) {
  CuspLabelMap labels;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq + 1 >= item.size())
      throw std::runtime_error("bad label assignment '" + item + "'; expected KEY=NAME");
    std::string key = item.substr(0, eq);
    std::string val = item.substr(eq + 1);
    if (key == "0")
      labels.at_zero = val;
    else if (key == "1")
      labels.at_one = val;
    else if (key == "inf")
      labels.at_infinity = val;
    else
      throw std::runtime_error("bad cusp key '" + key + "'; expected 0, 1, or inf");
  }
  return labels;
}

struct AnalyzeOptions {
  std::string file;
  unsigned levels = 4;
  Budget budget;
  bool emit_json = false;
};

int cmd_analyze(const AnalyzeOptions& opt) {
  Scrambler s = parse_scrambler(read_file(opt.file));
  std::ostringstream text;
  json j;

  auto diagnostics = s.validate();
  text << "validation: " << (diagnostics.empty() ? "ok" : std::to_string(diagnostics.size()) + " diagnostics")
       << "\n";
  for (const auto& d : diagnostics) text << "diagnostic: " << d.message << "\n";
  text << "vertices: " << s.vertices().size() << " (total dim " << s.total_dim() << ")\n";
  text << "edges: " << s.edges().size() << "\n";
  j["file"] = opt.file;
  j["diagnostics"] = json::array();
  for (const auto& d : diagnostics) j["diagnostics"].push_back(d.message);
  j["vertices"] = s.vertices().size();
  j["total_dim"] = s.total_dim();
  j["edges"] = s.edges().size();

  j["cycles"] = json::array();
  for (const auto& cs :
       cycle_spectra(s, opt.budget.max_cycle_len, opt.budget.enclosure_width, opt.budget.max_products)) {
    text << "cycle: " << path_string(s, cs.cycle) << " length " << cs.cycle.size()
         << " sigma<1 " << (cs.sigma_lt_one ? "true" : "false") << " enclosure ["
         << rat_to_string(cs.enclosure.lo) << ", " << rat_to_string(cs.enclosure.hi) << "]\n";
    j["cycles"].push_back({{"path", path_string(s, cs.cycle)},
                           {"length", cs.cycle.size()},
                           {"sigma_lt_one", cs.sigma_lt_one},
                           {"enclosure_lo", rat_to_string(cs.enclosure.lo)},
                           {"enclosure_hi", rat_to_string(cs.enclosure.hi)}});
  }

  j["levels"] = json::array();
  for (unsigned n = 1; n <= opt.levels; ++n) {
    LevelRationality lr = rationality_by_level(s, n, opt.budget.max_products);
    text << "level " << n << ": ";
    json jl = {{"level", n}, {"all_unobstructed", lr.all_unobstructed}};
    if (lr.all_unobstructed) {
      text << "all-unobstructed\n";
    } else {
      text << "witness " << path_string(s, lr.witness) << "\n";
      jl["witness"] = path_string(s, lr.witness);
    }
    j["levels"].push_back(jl);
  }

  JsrEstimate est = jsr_bounds(s, opt.budget);
  text << "jsr lower: " << bound_string(est.lower) << " ~ " << approx_string(est.float_hint_lower);
  if (!est.lower_witness.empty()) text << " witness " << path_string(s, est.lower_witness);
  text << "\n";
  text << "jsr upper: " << bound_string(est.upper) << " ~ " << approx_string(est.float_hint_upper)
       << "\n";
  j["jsr_lower"] = bound_string(est.lower);
  j["jsr_lower_hint"] = est.float_hint_lower;
  j["jsr_lower_witness"] = path_string(s, est.lower_witness);
  j["jsr_upper"] = bound_string(est.upper);
  j["jsr_upper_hint"] = est.float_hint_upper;

  Verdict v = decide_contraction(s, opt.budget);
  int code = kExitOk;
  switch (v.kind) {
    case Verdict::Kind::Contracting:
      text << "verdict: Contracting(" << v.certificate_length << ")\n";
      j["verdict"] = "Contracting";
      j["certificate_length"] = v.certificate_length;
      code = kExitOk;
      break;
    case Verdict::Kind::Obstructed:
      text << "verdict: Obstructed witness " << path_string(s, v.witness) << " level " << v.level
           << "\n";
      j["verdict"] = "Obstructed";
      j["witness"] = path_string(s, v.witness);
      j["level"] = v.level;
      code = kExitObstructed;
      break;
    case Verdict::Kind::Undecided:
      text << "verdict: Undecided lower " << bound_string(v.best.lower) << " upper "
           << bound_string(v.best.upper) << "\n";
      j["verdict"] = "Undecided";
      j["best_lower"] = bound_string(v.best.lower);
      j["best_upper"] = bound_string(v.best.upper);
      code = kExitUndecided;
      break;
  }
  if (opt.emit_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text.str();
  return code;
}

struct BuildOptions {
  std::string phi_text, rho_text, var, labels_text;
};

int cmd_build(const BuildOptions& opt) {
  std::string var = opt.var.empty() ? infer_var(opt.phi_text, opt.rho_text) : opt.var;
  RationalFunction phi = parse_rational_function(opt.phi_text, var);
  RationalFunction rho = parse_rational_function(opt.rho_text, var);
  CuspLabelMap labels = opt.labels_text.empty() ? CuspLabelMap{} : parse_labels(opt.labels_text);

  std::cout << "# fiber table: source cusp, factor, i = deg(phi), j = deg(rho), multiplier, count\n";
  for (const auto& cls : cusp_fiber_table(phi, rho)) {
    std::cout << "# fiber " << cusp_name(cls.source) << " "
              << (cls.defining_factor ? cls.defining_factor->to_string(var) : "infinity") << " i="
              << cls.phi_mult;
    if (cls.target) {
      Rational mult(cls.rho_mult, cls.phi_mult);
      std::cout << " j=" << cls.rho_mult << " -> " << cusp_name(*cls.target)
                << " multiplier=" << rat_to_string(mult);
    } else {
      std::cout << " -> (trivial)";
    }
    std::cout << " count=" << cls.count << "\n";
  }
  std::cout << serialize_scrambler(build_scrambler(phi, rho, labels));
  return kExitOk;
}

struct ClassifyOptions {
  std::string file;
  unsigned iterate_n = 1;
  bool emit_json = false;
};

const char* case_name(PortraitCase::Kind k) {
  switch (k) {
    case PortraitCase::Kind::Case1: return "Case1";
    case PortraitCase::Kind::Case2: return "Case2";
    case PortraitCase::Kind::Case3: return "Case3";
    case PortraitCase::Kind::Case4: return "Case4";
    default: return "NotCovered";
  }
}

int cmd_classify(const ClassifyOptions& opt) {
  Portrait p = parse_portrait(read_file(opt.file));
  if (opt.iterate_n > 1) p = iterate(p, opt.iterate_n);
  PortraitCase c = classify(p);

  std::ostringstream text;
  json j;
  j["file"] = opt.file;
  j["iterate"] = opt.iterate_n;
  j["degree"] = p.degree();
  j["postcritical_count"] = p.postcritical().size();
  text << "degree: " << p.degree() << "\n";
  text << "postcritical: " << p.postcritical().size() << " vertices\n";
  text << "case: " << case_name(c.kind);
  j["case"] = case_name(c.kind);
  if (c.kind == PortraitCase::Kind::Case4) {
    text << " (p=" << c.prime << ", k=" << c.exponent << "; cycle";
    for (const auto& name : c.enumeration) text << " " << name;
    text << ")";
    j["prime"] = c.prime;
    j["exponent"] = c.exponent;
    j["enumeration"] = c.enumeration;
  }
  text << "\n";
  if (opt.emit_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text.str();
  return c.kind == PortraitCase::Kind::NotCovered ? kExitNotCovered : kExitOk;
}

int cmd_dot(const std::string& file) {
  std::cout << export_dot(parse_scrambler(read_file(file)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis of strata scramblers and critical-orbit portraits"};
  app.require_subcommand(1);

  AnalyzeOptions analyze_opt;
  std::string width_text;
  auto* analyze = app.add_subcommand("analyze", "Analyze a scrambler file");
  analyze->add_option("file", analyze_opt.file, "scrambler file")->required();
  analyze->add_option("--levels", analyze_opt.levels, "report per-level rationality for n = 1..N");
  analyze->add_option("--max-cycle-len", analyze_opt.budget.max_cycle_len);
  analyze->add_option("--max-product-len", analyze_opt.budget.max_product_len);
  analyze->add_option("--max-products", analyze_opt.budget.max_products);
  analyze->add_option("--enclosure-width", width_text, "rational enclosure width, e.g. 1/1024");
  analyze->add_flag("--json", analyze_opt.emit_json, "flat machine-readable output");

  BuildOptions build_opt;
  auto* build = app.add_subcommand("build", "Build a scrambler from a correspondence (phi, rho)");
  build->add_option("--phi", build_opt.phi_text)->required();
  build->add_option("--rho", build_opt.rho_text)->required();
  build->add_option("--var", build_opt.var, "variable name (inferred when omitted)");
  build->add_option("--labels", build_opt.labels_text, "cusp labels, e.g. 0=a,1=b,inf=c");

  ClassifyOptions classify_opt;
  auto* classify_cmd = app.add_subcommand("classify", "Classify a portrait file");
  classify_cmd->add_option("file", classify_opt.file, "portrait file")->required();
  classify_cmd->add_option("--iterate", classify_opt.iterate_n, "classify the n-th iterate");
  classify_cmd->add_flag("--json", classify_opt.emit_json, "flat machine-readable output");

  std::string dot_file;
  auto* dot = app.add_subcommand("dot", "Export a scrambler as Graphviz DOT");
  dot->add_option("file", dot_file, "scrambler file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInvalid;
  }

  try {
    if (const char* env = std::getenv("SCRAMBLER_BUDGET_PRODUCTS"))
      analyze_opt.budget.max_products = std::stoull(env);
    if (!width_text.empty()) {
      analyze_opt.budget.enclosure_width = parse_rational(width_text);
      if (analyze_opt.budget.enclosure_width <= 0)
        throw std::runtime_error("enclosure width must be positive");
    }
    if (analyze_opt.budget.max_cycle_len == 0 || analyze_opt.budget.max_product_len == 0 ||
        analyze_opt.budget.max_products == 0 || analyze_opt.levels == 0)
      throw std::runtime_error("budgets must be positive");

    if (analyze->parsed()) return cmd_analyze(analyze_opt);
    if (build->parsed()) return cmd_build(build_opt);
    if (classify_cmd->parsed()) return cmd_classify(classify_opt);
    if (dot->parsed()) return cmd_dot(dot_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
