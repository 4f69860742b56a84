// gmv: command-line front end.
//
// Exit codes: 0 success / valid / holds, 1 invalid / fails, 2 unknown,
// 3 usage or input error, 4 budget exceeded, 5 experiment failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gmv/controls.hpp"
#include "gmv/error.hpp"
#include "gmv/experiments.hpp"
#include "gmv/semantics.hpp"
#include "gmv/theories.hpp"

using namespace gmv;

namespace {

constexpr int kUsage = 3;
constexpr int kBudget = 4;
constexpr int kExperimentFailed = 5;

std::vector<int> parse_indices(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok.empty()) continue;
    out.push_back(std::stoi(tok));
  }
  return out;
}

std::vector<std::vector<int>> parse_classes(const std::string& text) {
  std::vector<std::vector<int>> out;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ';');) {
    if (!tok.empty()) out.push_back(parse_indices(tok));
  }
  return out;
}

std::set<Direction> parse_dirs(const std::string& s) {
  if (s == "up") return {Direction::Up};
  if (s == "down") return {Direction::Down};
  return {Direction::Up, Direction::Down};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
}

std::string join(const std::vector<Formula>& fs) {
  std::string out;
  for (const auto& f : fs) out += (out.empty() ? "" : ",") + print(f);
  return out.empty() ? "none" : out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bimodal Kripke logic: deciders, modal logics of pointed models, controls"};
  app.require_subcommand(1);
  int code = 0;

  // parse / print
  std::string formula_text;
  auto* parse_cmd = app.add_subcommand("parse", "Parse a formula and show its structure");
  parse_cmd->add_option("formula", formula_text, "Formula text")->required();
  parse_cmd->callback([&] {
    const Formula f = parse(formula_text);
    std::string dirs;
    for (Direction d : directions(f)) dirs += (dirs.empty() ? "" : ",") + std::string(to_string(d));
    std::string ls;
    for (const auto& l : letters(f)) ls += (ls.empty() ? "" : ",") + l;
    std::cout << "formula=" << print(f) << "\n"
              << "size=" << f.size() << "\n"
              << "modal_depth=" << modal_depth(f) << "\n"
              << "subformulas=" << subformulas(f).size() << "\n"
              << "letters=" << (ls.empty() ? "none" : ls) << "\n"
              << "directions=" << (dirs.empty() ? "none" : dirs) << "\n";
  });
  auto* print_cmd = app.add_subcommand("print", "Print a formula in canonical form");
  print_cmd->add_option("formula", formula_text, "Formula text")->required();
  print_cmd->callback([&] { std::cout << print(parse(formula_text)) << "\n"; });

  // decide
  std::string theory_name = "s4.2";
  DecideBudget budget;
  auto* decide_cmd = app.add_subcommand(
      "decide", "Decide validity in pl, s4, s4.2 or s5; prints a countermodel when invalid");
  decide_cmd->add_option("formula", formula_text, "Monomodal formula")->required();
  decide_cmd->add_option("--theory", theory_name, "pl | s4 | s4.2 | s5")
      ->check(CLI::IsMember({"pl", "s4", "s4.2", "s5"}));
  decide_cmd->add_option("--budget", budget.nodes, "Work-unit budget")->capture_default_str();
  decide_cmd->add_option("--search-worlds", budget.search_worlds,
                         "Largest frame for the canonical countermodel search (at most 5)")
      ->capture_default_str();
  decide_cmd->callback([&] {
    const Verdict v = decide(*theory_from_string(theory_name), parse(formula_text), budget);
    std::cout << "verdict=" << to_string(v.kind) << "\n";
    if (v.is_invalid()) std::cout << to_text(*v.countermodel);
    if (v.is_unknown()) std::cout << "report=" << v.report << "\n";
    code = v.is_valid() ? 0 : v.is_invalid() ? 1 : 2;
  });

  // check
  std::string frame_path;
  std::optional<std::size_t> world;
  auto* check_cmd = app.add_subcommand("check", "Model check a formula at the file's point");
  check_cmd->add_option("formula", formula_text, "Formula")->required();
  check_cmd->add_option("--frame", frame_path, "Model file")->required();
  check_cmd->add_option("--world", world, "Check at this world instead of the point");
  check_cmd->callback([&] {
    const PointedModel m = load_model(frame_path);
    const bool ok = holds_at(m, world.value_or(m.point), parse(formula_text));
    std::cout << "holds=" << (ok ? "true" : "false") << "\n";
    code = ok ? 0 : 1;
  });

  // ml
  std::string direction = "up";
  std::size_t k = 1, size = 5;
  unsigned threads = 0;
  bool list = false;
  auto* ml_cmd = app.add_subcommand("ml", "Modal logic of a pointed model on enumerated formulas");
  ml_cmd->add_option("--frame", frame_path, "Model file")->required();
  ml_cmd->add_option("--direction", direction, "up | down | both")
      ->check(CLI::IsMember({"up", "down", "both"}))
      ->capture_default_str();
  ml_cmd->add_option("--letters", k, "Number of letters")->capture_default_str();
  ml_cmd->add_option("--size", size, "Largest formula size")->capture_default_str();
  ml_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
  ml_cmd->add_flag("--list", list, "Print every member formula");
  ml_cmd->callback([&] {
    const PointedModel m = load_model(frame_path);
    const auto r = ml_fragment(m, k, size, parse_dirs(direction), {}, threads);
    std::cout << "frame=" << m.frame.name() << "\n"
              << "point=" << m.point << "\n"
              << "direction=" << direction << "\n"
              << "letters=" << k << "\n"
              << "max_size=" << size << "\n"
              << "fragment_size=" << r.valid().size() << "/" << r.entries.size() << "\n";
    std::string matches;
    for (Theory t : r.matches) matches += (matches.empty() ? "" : ",") + to_string(t);
    std::cout << "matches=" << (matches.empty() ? "none" : matches) << "\n";
    for (const auto& [t, f] : r.separators) std::cout << "separator." << to_string(t) << "=" << print(f) << "\n";
    for (const auto& [t, n] : r.unknown) {
      if (n) std::cout << "unknown." << to_string(t) << "=" << n << "\n";
    }
    std::cout << "bimodal=" << r.bimodal << "\n";
    if (list) {
      for (const auto& f : r.valid()) std::cout << "member=" << print(f) << "\n";
    }
  });

  // controls
  std::size_t buttons = 1, switches = 0;
  auto* controls_cmd = app.add_subcommand("controls", "Search a certified button/switch family");
  controls_cmd->add_option("--frame", frame_path, "Model file")->required();
  controls_cmd->add_option("--direction", direction, "up | down")
      ->check(CLI::IsMember({"up", "down"}))
      ->capture_default_str();
  controls_cmd->add_option("--buttons", buttons, "Number of buttons")->capture_default_str();
  controls_cmd->add_option("--switches", switches, "Number of switches")->capture_default_str();
  controls_cmd->callback([&] {
    const PointedModel m = load_model(frame_path);
    const Direction d = direction == "up" ? Direction::Up : Direction::Down;
    const auto fam = find_family(m, m.point, d, buttons, switches);
    if (!fam) {
      std::cout << "family=none\n";
      code = 1;
      return;
    }
    const auto cert = std::get<IndependenceCertificate>(check_independent(*fam));
    std::cout << "direction=" << direction << "\n"
              << "controls.buttons=" << join(fam->buttons) << "\n"
              << "controls.switches=" << join(fam->switches) << "\n"
              << "certificate.cone=" << m.frame.cone(d, m.point).count() << "\n"
              << "certificate.entries=" << cert.table.size() << "\n";
  });

  // gen
  std::string kind, out_path, indices, classes, point, combo_kind = "below";
  std::size_t gen_size = 1, cluster_size = 1;
  bool world_letters = false;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a model file");
  gen_cmd->add_option("--kind", kind, "point | cluster | chain | bs | powerset | combo")
      ->required()
      ->check(CLI::IsMember({"point", "cluster", "chain", "bs", "powerset", "combo"}));
  gen_cmd->add_option("--size", gen_size, "Worlds of a cluster or chain");
  gen_cmd->add_flag("--world-letters", world_letters, "Add letters w0.. marking single worlds");
  gen_cmd->add_option("--buttons", buttons, "bs/combo: number of buttons");
  gen_cmd->add_option("--switches", switches, "bs/combo: number of switches");
  gen_cmd->add_option("--button-indices", indices, "powerset: comma-separated button indices");
  gen_cmd->add_option("--classes", classes, "powerset: classes like 2,3,4;5,6,7");
  gen_cmd->add_option("--point", point, "powerset: comma-separated point (default: all indices)");
  gen_cmd->add_option("--combo", combo_kind, "combo: below | above")
      ->check(CLI::IsMember({"below", "above"}));
  gen_cmd->add_option("--cluster", cluster_size, "combo: cluster size");
  gen_cmd->add_option("-o,--out", out_path, "Output file (default: stdout)");
  gen_cmd->callback([&] {
    PointedModel m;
    if (kind == "point") {
      m = PointedModel{single_point(), {}, 0};
    } else if (kind == "cluster" || kind == "chain") {
      const Frame f = kind == "cluster" ? cluster(gen_size) : chain(gen_size);
      m = world_letters ? with_world_letters(f, 0) : PointedModel{f, {}, 0};
    } else if (kind == "bs") {
      m = bs_model(buttons, switches);
    } else if (kind == "powerset") {
      PowersetSpec spec{parse_indices(indices), parse_classes(classes)};
      std::vector<int> pt;
      if (point.empty()) {
        pt = spec.buttons;
        for (const auto& c : spec.classes) pt.insert(pt.end(), c.begin(), c.end());
      } else {
        pt = parse_indices(point);
      }
      m = powerset_frame(spec, pt);
    } else {
      m = combo_frame(combo_kind == "below" ? ComboKind::ClusterBelowBs : ComboKind::ClusterAboveBs,
                      cluster_size, buttons, switches);
    }
    write_output(out_path, to_text(m));
  });

  // experiment
  std::string experiment;
  auto* exp_cmd = app.add_subcommand("experiment", "Run thm4 | thm5 | thm6 | thm7 | thm8");
  exp_cmd->add_option("name", experiment, "Experiment name")
      ->required()
      ->check(CLI::IsMember(kExperiments));
  exp_cmd->add_option("--out", out_path, "Also write the report to this file");
  exp_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
  exp_cmd->callback([&] {
    const auto t0 = std::chrono::steady_clock::now();
    const Report r = run_experiment(experiment, threads);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    const std::string text = r.render(ms);
    std::cout << text;
    if (!out_path.empty()) write_output(out_path, text);
    code = r.passed() ? 0 : kExperimentFailed;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  } catch (const SyntaxError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}
