#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcalg/algebra.hpp"
#include "mcalg/axioms.hpp"
#include "mcalg/duality.hpp"
#include "mcalg/errors.hpp"
#include "mcalg/json_io.hpp"
#include "mcalg/parser.hpp"
#include "mcalg/poset.hpp"
#include "mcalg/stone_weierstrass.hpp"

namespace {

using namespace mcalg;

constexpr int kExitOk = 0;
constexpr int kExitConformance = 1;
constexpr int kExitInput = 2;

Environment parse_env(const std::string& text) {
  Environment env;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(pos, end - pos);
    std::size_t eq = item.find('=');
    if (eq == std::string::npos) throw Error("environment entry '" + item + "' lacks '='");
    std::string key = item.substr(0, eq);
    if (!key.empty() && (key[0] == 'x' || key[0] == 'X')) key = key.substr(1);
    env.bind(std::stoull(key), Unit::parse(item.substr(eq + 1)));
    pos = end + 1;
  }
  return env;
}

struct EvalOptions {
  std::string term_text;
  std::string term_file;
  std::string env_text;
  std::string epsilon;
};

int run_eval(const EvalOptions& opts) {
  std::string text = opts.term_text;
  if (!opts.term_file.empty()) {
    std::ifstream in(opts.term_file);
    if (!in) throw Error("cannot open '" + opts.term_file + "'");
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  if (text.empty()) throw Error("no term given (use --term or --term-file)");

  Term term = parse_term(text);
  Environment env = parse_env(opts.env_text);

  try {
    Unit value = eval_finitary(term, env);
    std::cout << value.str() << "\n";
    return kExitOk;
  } catch (const NotSupportedError&) {
    // delta inside: fall through to interval evaluation
  }
  if (opts.epsilon.empty()) {
    throw Error("term contains delta; supply --epsilon for a guaranteed-width interval");
  }
  Interval box = eval_with_precision(term, env, Unit::parse(opts.epsilon));
  std::cout << "[" << box.lo.str() << ", " << box.hi.str() << "] width <= "
            << box.width().str() << "\n";
  return kExitOk;
}

struct AxiomCliOptions {
  std::string algebra = "scalar";
  bool dual = false;
  unsigned grid = 3;
  unsigned nm_bound = 3;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string schema = "all";
  std::size_t samples = 200;
  std::string format = "text";
  std::string summary_file;
};

int run_axioms(const AxiomCliOptions& opts) {
  AlgebraPtr algebra;
  bool scalar_carrier = opts.algebra == "scalar";
  if (scalar_carrier) {
    algebra = scalar_algebra();
  } else {
    algebra = function_algebra(poset_from_json(load_json_file(opts.algebra)));
  }
  if (opts.dual) algebra = dual_algebra(algebra);
  bool has_delta = !opts.dual;

  // The scalar carrier (and its dual) is enumerated exhaustively on the
  // grid; function carriers would blow up, so they are sampled.
  Strategy strategy = scalar_carrier ? Strategy::exhaustive(opts.grid)
                                     : Strategy::sampled(opts.samples, opts.seed);
  if (strategy.kind == Strategy::Kind::Sampled && !opts.seed_given) {
    throw Error("sampled strategies need an explicit --seed");
  }

  AxiomOptions axiom_opts;
  axiom_opts.constant_grid = opts.grid;
  axiom_opts.nm_bound = opts.nm_bound;

  std::vector<ConformanceReport> reports;
  std::vector<std::string> notes;
  auto run_schema = [&](const std::string& name) {
    if (name == "mc") {
      auto r = check_all_mc(*algebra, strategy, axiom_opts);
      reports.insert(reports.end(), r.begin(), r.end());
    } else if (name == "mcinf") {
      if (!has_delta) {
        notes.push_back("mcinf skipped: carrier has no exact delta");
        return;
      }
      auto r = check_mc_infty(*algebra, strategy, axiom_opts);
      reports.insert(reports.end(), r.begin(), r.end());
    } else if (name == "derived") {
      auto r = check_derived(*algebra, strategy, axiom_opts);
      reports.insert(reports.end(), r.begin(), r.end());
    } else {
      throw Error("unknown schema '" + name + "'");
    }
  };
  if (opts.schema == "all") {
    run_schema("mc");
    run_schema("mcinf");
    run_schema("derived");
  } else {
    run_schema(opts.schema);
  }

  std::size_t failed = 0;
  for (const ConformanceReport& r : reports) {
    if (!r.passed) ++failed;
    if (opts.format == "jsonl") {
      std::cout << report_to_json(r).dump() << "\n";
    } else {
      std::cout << r.line() << "\n";
    }
  }
  for (const std::string& note : notes) std::cout << "# " << note << "\n";
  if (opts.format != "jsonl") {
    std::cout << "checked " << reports.size() << " axiom instances, " << failed
              << " failed\n";
  }

  if (!opts.summary_file.empty()) {
    Json summary;
    summary["algebra"] = algebra->describe();
    summary["strategy"] = strategy.str();
    summary["schema"] = opts.schema;
    summary["failed"] = failed;
    Json list = Json::array();
    for (const ConformanceReport& r : reports) list.push_back(report_to_json(r));
    summary["reports"] = std::move(list);
    save_json_file(opts.summary_file, summary);
  }
  return failed == 0 ? kExitOk : kExitConformance;
}

int run_poset_check(const std::string& file) {
  PosetPtr poset = poset_from_json(load_json_file(file));
  std::cout << poset_to_json(*poset).dump(2) << "\n";
  return kExitOk;
}

int run_poset_urysohn(const std::string& file, const std::string& x, const std::string& y) {
  PosetPtr poset = poset_from_json(load_json_file(file));
  MonotoneMap psi = urysohn_separator(poset, poset->index_of(x), poset->index_of(y));
  std::cout << function_to_json(psi).dump(2) << "\n";
  return kExitOk;
}

int run_poset_quotient(const std::string& file, const std::string& maps_file) {
  PreorderPtr domain = preorder_from_json(load_json_file(file));
  std::vector<MonotoneMap> maps = functions_from_json(load_json_file(maps_file), domain);
  QuotientResult q = quotient_by_kernel(domain, maps);
  Json out;
  out["poset"] = poset_to_json(*q.classes);
  Json projection = Json::object();
  for (std::size_t i = 0; i < domain->size(); ++i) {
    projection[domain->name(i)] = q.classes->name(q.projection[i]);
  }
  out["projection"] = std::move(projection);
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_poset_product(const std::string& file_a, const std::string& file_b) {
  PosetPtr a = poset_from_json(load_json_file(file_a));
  PosetPtr b = poset_from_json(load_json_file(file_b));
  std::cout << poset_to_json(*product_poset(a, b)).dump(2) << "\n";
  return kExitOk;
}

struct DualizeOptions {
  std::string poset_file;
  std::string generators_file;
  std::string targets_file;
  std::string epsilon;
  bool allow_preorder = false;
};

int run_dualize(const DualizeOptions& opts) {
  Json poset_doc = load_json_file(opts.poset_file);

  if (opts.generators_file.empty()) {
    if (!opts.targets_file.empty()) throw Error("--targets needs --generators");
    PreorderPtr domain = opts.allow_preorder ? preorder_from_json(poset_doc)
                                             : PreorderPtr(poset_from_json(poset_doc));
    EtaResult eta = unit_eta(domain);
    std::cout << poset_to_json(*eta.max.space).dump(2) << "\n";
    std::cout << unit_report_to_json(eta.report).dump(2) << "\n";
    return eta.report.ok() ? kExitOk : kExitConformance;
  }

  PosetPtr domain = poset_from_json(poset_doc);
  std::vector<MonotoneMap> generators =
      functions_from_json(load_json_file(opts.generators_file), domain);

  if (opts.targets_file.empty()) {
    DualSpace max = max_of_generated(domain, generators);
    Json classes = Json::object();
    for (std::size_t i = 0; i < domain->size(); ++i) {
      classes[domain->name(i)] = max.space->name(max.point_map[i]);
    }
    std::cout << poset_to_json(*max.space).dump(2) << "\n";
    std::cout << Json{{"classes", classes}}.dump(2) << "\n";
    return kExitOk;
  }

  if (opts.epsilon.empty()) throw Error("--targets needs --epsilon");
  Unit epsilon = Unit::parse(opts.epsilon);
  DualSpace max = max_of_generated(domain, generators);
  std::vector<MonotoneMap> targets =
      functions_from_json(load_json_file(opts.targets_file),
                          std::static_pointer_cast<const FinPreorder>(max.space));
  EpsilonResult eps = unit_epsilon(domain, generators, epsilon, targets);
  std::cout << poset_to_json(*eps.max.space).dump(2) << "\n";
  std::cout << unit_report_to_json(eps.report).dump(2) << "\n";
  return eps.report.ok() ? kExitOk : kExitConformance;
}

struct ApproximateOptions {
  std::string poset_file;
  std::string generators_file;
  std::string target_file;
  std::string epsilon;
  std::string trace_file;
};

int run_approximate(const ApproximateOptions& opts) {
  PosetPtr poset = poset_from_json(load_json_file(opts.poset_file));
  std::vector<MonotoneMap> generators =
      functions_from_json(load_json_file(opts.generators_file), poset);
  MonotoneMap target = function_from_json(load_json_file(opts.target_file), poset);
  Unit epsilon = Unit::parse(opts.epsilon);

  ApproximationResult result = approximate(poset, generators, target, epsilon);
  std::cout << "term: " << render_term(result.term) << "\n";
  std::cout << "error: " << result.trace.error.str() << " (epsilon " << epsilon.str()
            << ")\n";
  if (!opts.trace_file.empty()) {
    save_json_file(opts.trace_file, trace_to_json(poset, result.trace));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for MC-algebras over finite posets"};
  app.require_subcommand(1);

  EvalOptions eval_opts;
  CLI::App* eval = app.add_subcommand("eval", "evaluate a term exactly or to a width bound");
  eval->add_option("--term", eval_opts.term_text, "term text");
  eval->add_option("--term-file", eval_opts.term_file, "file containing the term");
  eval->add_option("--env", eval_opts.env_text, "bindings, e.g. x0=1/4,x1=1/2");
  eval->add_option("--epsilon", eval_opts.epsilon, "interval width bound for delta terms");

  AxiomCliOptions ax_opts;
  CLI::App* axioms = app.add_subcommand("axioms", "run the equational conformance suite");
  axioms->add_option("--algebra", ax_opts.algebra, "scalar or a poset file")->required();
  axioms->add_flag("--dual", ax_opts.dual, "check the order-dual carrier");
  axioms->add_option("--grid", ax_opts.grid, "dyadic grid exponent");
  axioms->add_option("--nm-bound", ax_opts.nm_bound, "axiom 8 schema bound");
  CLI::Option* seed_opt = axioms->add_option("--seed", ax_opts.seed, "sampling seed");
  axioms->add_option("--schema", ax_opts.schema, "all|mc|mcinf|derived");
  axioms->add_option("--samples", ax_opts.samples, "assignments per axiom when sampling");
  axioms->add_option("--format", ax_opts.format, "text|jsonl");
  axioms->add_option("--summary", ax_opts.summary_file, "write a JSON summary file");

  std::string poset_file, poset_file_b, point_x, point_y, maps_file;
  CLI::App* poset = app.add_subcommand("poset", "poset utilities");
  poset->require_subcommand(1);
  CLI::App* p_check = poset->add_subcommand("check", "validate and canonicalize a poset file");
  p_check->add_option("file", poset_file)->required();
  CLI::App* p_urysohn = poset->add_subcommand("urysohn", "separator with psi(x)=0, psi(y)=1");
  p_urysohn->add_option("file", poset_file)->required();
  p_urysohn->add_option("--x", point_x)->required();
  p_urysohn->add_option("--y", point_y)->required();
  CLI::App* p_quotient = poset->add_subcommand("quotient", "kernel quotient by a map family");
  p_quotient->add_option("file", poset_file)->required();
  p_quotient->add_option("--maps", maps_file)->required();
  CLI::App* p_product = poset->add_subcommand("product", "componentwise product order");
  p_product->add_option("first", poset_file)->required();
  p_product->add_option("second", poset_file_b)->required();

  DualizeOptions dual_opts;
  CLI::App* dualize = app.add_subcommand("dualize", "compute Max and the unit report");
  dualize->add_option("--poset", dual_opts.poset_file)->required();
  dualize->add_option("--generators", dual_opts.generators_file);
  dualize->add_option("--targets", dual_opts.targets_file);
  dualize->add_option("--epsilon", dual_opts.epsilon);
  dualize->add_flag("--allow-preorder", dual_opts.allow_preorder,
                    "accept cycles (eta may then fail injectivity)");

  ApproximateOptions approx_opts;
  CLI::App* approx = app.add_subcommand("approximate", "constructive density certificate");
  approx->add_option("--poset", approx_opts.poset_file)->required();
  approx->add_option("--generators", approx_opts.generators_file)->required();
  approx->add_option("--target", approx_opts.target_file)->required();
  approx->add_option("--epsilon", approx_opts.epsilon)->required();
  approx->add_option("--trace", approx_opts.trace_file, "write the run trace as JSON");

  CLI11_PARSE(app, argc, argv);
  ax_opts.seed_given = seed_opt->count() > 0;

  try {
    if (eval->parsed()) return run_eval(eval_opts);
    if (axioms->parsed()) return run_axioms(ax_opts);
    if (poset->parsed()) {
      if (p_check->parsed()) return run_poset_check(poset_file);
      if (p_urysohn->parsed()) return run_poset_urysohn(poset_file, point_x, point_y);
      if (p_quotient->parsed()) return run_poset_quotient(poset_file, maps_file);
      if (p_product->parsed()) return run_poset_product(poset_file, poset_file_b);
    }
    if (dualize->parsed()) return run_dualize(dual_opts);
    if (approx->parsed()) return run_approximate(approx_opts);
  } catch (const SeparationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConformance;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
