// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "gmv/controls.hpp"
#include "gmv/error.hpp"
#include "gmv/experiments.hpp"
#include "gmv/semantics.hpp"
#include "gmv/theories.hpp"
#include "oracles.hpp"

using namespace gmv;

namespace {

const Direction Up = Direction::Up;
const Direction Down = Direction::Down;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Monomodal formulas over at most two letters up to size 7, each direction.
std::vector<Formula> monomodal_corpus(std::size_t k, std::size_t size) {
  std::vector<Formula> out = enumerate(k, size, {Up});
  for (const auto& f : enumerate(k, size, {Down})) {
    if (directions(f).count(Down)) out.push_back(f);
  }
  return out;
}

// ------------------------------------------------------------ criterion 1

Outcome round_trip() {
  const auto fs = enumerate(2, 7, {Up, Down});
  std::size_t bad = 0;
  for (const auto& f : fs) {
    if (!(parse(print(f)) == f)) ++bad;
  }
  return {bad == 0, std::to_string(fs.size()) + " formulas, " + std::to_string(bad) + " mismatches"};
}

// ------------------------------------------------------------ criterion 2

Formula random_formula(std::mt19937& rng, std::size_t budget, std::size_t letters) {
  std::uniform_int_distribution<int> leaf(0, static_cast<int>(letters) + 1);
  if (budget <= 1) {
    const int x = leaf(rng);
    if (x == static_cast<int>(letters)) return Formula::top();
    if (x == static_cast<int>(letters) + 1) return Formula::bot();
    return Formula::atom(canonical_letter(static_cast<std::size_t>(x)));
  }
  std::uniform_int_distribution<int> op(0, 9);
  const int o = op(rng);
  if (o < 5) {
    const Formula a = random_formula(rng, budget - 1, letters);
    switch (o) {
      case 0: return Formula::neg(a);
      case 1: return Formula::box(Up, a);
      case 2: return Formula::dia(Up, a);
      case 3: return Formula::box(Down, a);
      default: return Formula::dia(Down, a);
    }
  }
  if (budget < 3) return random_formula(rng, 1, letters);
  std::uniform_int_distribution<std::size_t> split(1, budget - 2);
  const std::size_t left = split(rng);
  const Formula a = random_formula(rng, left, letters);
  const Formula b = random_formula(rng, budget - 1 - left, letters);
  switch (o) {
    case 5: return Formula::conj(a, b);
    case 6: return Formula::disj(a, b);
    case 7: return Formula::imp(a, b);
    default: return Formula::iff(a, b);
  }
}

Outcome semantics_oracle() {
  std::mt19937 rng(20240601);
  std::size_t mismatches = 0, checks = 0;
  for (int t = 0; t < 500; ++t) {
    std::uniform_int_distribution<std::size_t> size_d(1, 8), letters_d(1, 3);
    std::bernoulli_distribution edge(0.3), bit(0.5);
    const std::size_t n = size_d(rng);
    const std::size_t nl = letters_d(rng);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (edge(rng)) edges.emplace_back(i, j);
      }
    }
    PointedModel m{make_frame(n, edges), {}, 0};
    for (std::size_t l = 0; l < nl; ++l) {
      WorldSet s(n);
      for (std::size_t w = 0; w < n; ++w) {
        if (bit(rng)) s.insert(w);
      }
      m.valuation[canonical_letter(l)] = s;
    }
    const auto om = oracle::from(m);
    std::uniform_int_distribution<std::size_t> fsize(1, 10);
    for (int k = 0; k < 20; ++k) {
      const Formula f = random_formula(rng, fsize(rng), nl);
      const WorldSet truth = eval(m, f);
      for (std::size_t w = 0; w < n; ++w) {
        ++checks;
        if (truth.contains(w) != oracle::holds(om, w, f)) ++mismatches;
      }
    }
  }
  return {mismatches == 0, std::to_string(checks) + " world checks, " + std::to_string(mismatches) +
                               " mismatches"};
}

// ------------------------------------------------------------ criterion 3

// Truth of f at each world of a universal model whose worlds carry the given
// letter types; bit w of the result is world w.
std::uint32_t universal_eval(const Formula& f, const std::vector<int>& types,
                             const std::vector<std::string>& names) {
  const std::uint32_t all = (1U << types.size()) - 1;
  std::function<std::uint32_t(const Formula&)> ev = [&](const Formula& g) -> std::uint32_t {
    switch (g.kind()) {
      case Kind::Atom: {
        std::size_t l = 0;
        while (l < names.size() && names[l] != g.name()) ++l;
        std::uint32_t out = 0;
        for (std::size_t w = 0; w < types.size(); ++w) {
          if (l < names.size() && ((types[w] >> l) & 1)) out |= 1U << w;
        }
        return out;
      }
      case Kind::Top: return all;
      case Kind::Bot: return 0;
      case Kind::Not: return ~ev(g.arg()) & all;
      case Kind::Box: return ev(g.arg()) == all ? all : 0;
      case Kind::Dia: return ev(g.arg()) ? all : 0;
      case Kind::And: return ev(g.lhs()) & ev(g.rhs());
      case Kind::Or: return ev(g.lhs()) | ev(g.rhs());
      case Kind::Imp: return (~ev(g.lhs()) | ev(g.rhs())) & all;
      case Kind::Iff: return ~(ev(g.lhs()) ^ ev(g.rhs())) & all;
    }
    return 0;
  };
  return ev(f);
}

// Every universal model with at most max_worlds worlds, up to renaming worlds:
// nondecreasing sequences of letter types.
bool s5_brute_force(const Formula& f, std::size_t max_worlds) {
  const auto ls = letters(f);
  const std::vector<std::string> names(ls.begin(), ls.end());
  const int type_count = 1 << names.size();
  std::vector<int> types;
  std::function<bool(int)> extend = [&](int from) -> bool {
    if (!types.empty()) {
      const std::uint32_t all = (1U << types.size()) - 1;
      if (universal_eval(f, types, names) != all) return false;
    }
    if (types.size() == max_worlds) return true;
    for (int t = from; t < type_count; ++t) {
      types.push_back(t);
      const bool ok = extend(t);
      types.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return extend(0);
}

Outcome decider_completeness() {
  const auto fs = monomodal_corpus(2, 7);
  std::vector<char> bad(fs.size(), 0), unknown(fs.size(), 0);
  parallel_for(fs.size(), 0, [&](std::size_t i) {
    const Formula& f = fs[i];
    const auto s5 = is_valid(Theory::S5, f);
    const auto pl = is_valid(Theory::PL, f);
    const auto s4 = is_valid(Theory::S4, f);
    const auto s42 = is_valid(Theory::S4_2, f);
    if (!s5 || !pl || !s4 || !s42) {
      unknown[i] = 1;
      return;
    }
    const bool brute = s5_brute_force(f, subformulas(f).size() + 1);
    if (*s5 != brute || *pl != oracle::tautology(f)) bad[i] = 1;
  });
  std::size_t nb = 0, nu = 0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    nb += bad[i];
    nu += unknown[i];
  }
  return {nb == 0 && nu == 0, std::to_string(fs.size()) + " formulas, " + std::to_string(nb) +
                                  " disagreements, " + std::to_string(nu) + " unknown"};
}

// ------------------------------------------------------------ criterion 4

Outcome theory_ordering() {
  const auto fs = monomodal_corpus(2, 7);
  std::vector<char> bad(fs.size(), 0);
  parallel_for(fs.size(), 0, [&](std::size_t i) {
    const bool s4 = *is_valid(Theory::S4, fs[i]);
    const bool s42 = *is_valid(Theory::S4_2, fs[i]);
    const bool s5 = *is_valid(Theory::S5, fs[i]);
    if ((s4 && !s42) || (s42 && !s5)) bad[i] = 1;
  });
  std::size_t nb = 0;
  for (char b : bad) nb += b;
  const Formula dot2 = parse("<u>[u]p -> [u]<u>p");
  const Formula b = parse("<u>[u]p -> p");
  const bool named = *is_valid(Theory::S4_2, dot2) && !*is_valid(Theory::S4, dot2) &&
                     *is_valid(Theory::S5, b) && !*is_valid(Theory::S4_2, b);
  return {nb == 0 && named, std::to_string(fs.size()) + " formulas, " + std::to_string(nb) +
                                " order violations, named separations " + (named ? "ok" : "wrong")};
}

// ------------------------------------------------------------ criterion 5

Outcome observation_one() {
  const PointedModel pt{single_point(), {}, 0};
  const auto r = ml_fragment(pt, 1, 5, {Down});
  std::size_t bad = 0;
  for (const auto& e : r.entries) {
    if (e.member != oracle::tautology(e.formula)) ++bad;
  }
  return {bad == 0 && r.matches.count(Theory::PL) > 0,
          std::to_string(r.entries.size()) + " formulas, " + std::to_string(bad) + " mismatches"};
}

// ------------------------------------------------------------ criterion 6

Outcome theorem_four() {
  const PointedModel m = thm4_model();
  const bool ddg = properties(m.frame).down_directed;
  const auto r = ml_fragment(m, 1, 7, {Down});
  std::size_t missing = 0;
  for (const auto& e : r.entries) {
    if (!e.member && *is_valid(Theory::S4_2, e.formula)) ++missing;
  }
  const bool excludes = !ml_member(m, parse("<d>[d]p -> p"));
  const bool s42 = r.matches.count(Theory::S4_2) > 0;
  const bool sep = r.separators.count(Theory::S5) > 0;
  std::ostringstream os;
  os << "down_directed=" << ddg << " missing_s4.2=" << missing << " excludes=" << excludes
     << " matches_s4.2=" << s42 << " s5_separator=" << (sep ? print(r.separators.at(Theory::S5)) : "none");
  return {ddg && missing == 0 && excludes && s42 && sep, os.str()};
}

// ------------------------------------------------------------ criterion 7

Outcome theorems_two_three() {
  const PointedModel m = thm4_model();
  const auto fam = find_family(m, m.point, Down, 2, 1);
  if (!fam) return {false, "no certified (2,1) family on the thm4 frame"};
  const auto cert = std::get<IndependenceCertificate>(check_independent(*fam));
  std::size_t refuted = 0, failures = 0;
  std::string first_failure;
  for (const auto& f : enumerate(2, 7, {Down})) {
    const Verdict v = decide(Theory::S4_2, f);
    if (!v.is_invalid()) continue;
    ++refuted;
    try {
      const Substitution s = simulate_countermodel(cert, f, *v.countermodel);
      if (holds_at(m, m.point, substitute(f, s))) throw VerificationFailed("instance holds");
    } catch (const Error& e) {
      if (failures++ == 0) first_failure = print(f) + ": " + e.what();
    }
  }

  const PointedModel c4 = with_world_letters(cluster(4), 0);
  const auto sw = find_family(c4, 0, Up, 0, 2);
  std::size_t s5_refuted = 0, s5_failures = 0;
  if (!sw) {
    ++s5_failures;
  } else {
    const auto scert = std::get<IndependenceCertificate>(check_independent(*sw));
    for (const auto& f : enumerate(2, 7, {Up})) {
      const Verdict v = decide(Theory::S5, f);
      if (!v.is_invalid()) continue;
      ++s5_refuted;
      try {
        const Substitution s = simulate_countermodel(scert, f, *v.countermodel);
        if (holds_at(c4, 0, substitute(f, s))) throw VerificationFailed("instance holds");
      } catch (const Error& e) {
        if (s5_failures++ == 0 && first_failure.empty()) first_failure = print(f) + ": " + e.what();
      }
    }
  }
  std::ostringstream os;
  os << "s4.2-invalid=" << refuted << " failures=" << failures << "; s5-invalid on cluster(4)="
     << s5_refuted << " failures=" << s5_failures;
  if (!first_failure.empty()) os << "; first: " << first_failure;
  return {failures == 0 && s5_failures == 0, os.str()};
}

// ------------------------------------------------------------ criteria 8-10

Outcome experiments(const std::vector<std::string>& names) {
  std::string detail;
  bool pass = true;
  for (const auto& n : names) {
    const Report r = run_experiment(n);
    pass = pass && r.passed();
    detail += (detail.empty() ? "" : "; ") + n + "=" + (r.passed() ? "pass" : "FAILURE");
    for (const auto& f : r.failures) detail += " (" + f + ")";
  }
  return {pass, detail};
}

Outcome theorem_eight() {
  const Report r = run_experiment("thm8");
  std::string detail;
  bool counts_ok = false;
  for (const auto& [k, v] : r.lines) {
    if (k == "corpus_size") counts_ok = std::stoul(v) >= 50;
    if (k == "corpus_size" || k == "mixed_button_violations" || k == "powerset_points_s5_s5") {
      detail += (detail.empty() ? "" : " ") + k + "=" + v;
    }
  }
  return {r.passed() && counts_ok, detail};
}

Outcome converse_validities() {
  const Formula a = parse("p -> [u]<d>p");
  const Formula b = parse("p -> [d]<u>p");
  std::size_t worlds = 0, bad = 0;
  const auto models = corpus();
  for (const auto& e : models) {
    const MlChecker c(e.model);
    for (std::size_t w = 0; w < e.model.frame.size(); ++w) {
      ++worlds;
      if (!c.check_at(w, a).member || !c.check_at(w, b).member) ++bad;
    }
  }
  return {bad == 0, std::to_string(models.size()) + " models, " + std::to_string(worlds) +
                        " worlds, " + std::to_string(bad) + " failures"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "parser round trip", 5, round_trip},
      {2, "semantics oracle", 10, semantics_oracle},
      {3, "decider completeness", 60, decider_completeness},
      {4, "theory ordering", 60, theory_ordering},
      {5, "single point grounds fragment is PL", 5, observation_one},
      {6, "thm4 frame classifies as S4.2", 600, theorem_four},
      {7, "countermodel simulation by controls", 600, theorems_two_three},
      {8, "combination frames (thm5-thm7)", 900, [] { return experiments({"thm5", "thm6", "thm7"}); }},
      {9, "mixed buttons over the corpus (thm8)", 600, theorem_eight},
      {10, "converse validities", 60, converse_validities},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s <= c.limit_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs of %.0fs", s, c.limit_s);
    std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << " | " << c.name
              << " | " << o.detail << " | " << timing << (in_time ? "" : " (over time)") << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
