// Frame experiments and the generated model corpus.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gmv/frame.hpp"

namespace gmv {

// Ordered key=value lines. Rendering appends status, failure lines and
// elapsed_ms last.
struct Report {
  std::vector<std::pair<std::string, std::string>> lines;
  std::vector<std::string> failures;

  void add(std::string key, std::string value) { lines.emplace_back(std::move(key), std::move(value)); }
  void fail(std::string why) { failures.push_back(std::move(why)); }
  bool passed() const noexcept { return failures.empty(); }
  std::string render(std::optional<long long> elapsed_ms = std::nullopt) const;
};

struct CorpusEntry {
  std::string name;
  PointedModel model;
  bool powerset = false;
};

// Every constructor shape with parameters inside the default budgets; each
// model's bisimulation quotient has at most 16 classes.
std::vector<CorpusEntry> corpus();

inline const std::vector<std::string> kExperiments = {"thm4", "thm5", "thm6", "thm7", "thm8"};

// Models used by the experiments.
PointedModel thm4_model();
PointedModel thm5_model();

// threads == 0 picks the hardware concurrency. Throws std::invalid_argument
// for an unknown name.
Report run_experiment(const std::string& name, unsigned threads = 0);

struct MixedButtonSweep {
  std::size_t points = 0;
  std::size_t candidates = 0;
  std::size_t violations = 0;
  // Budget overruns while checking membership; counted, never guessed.
  std::size_t unknown = 0;
};

// For every world w and every candidate f over the model's letters: if f is an
// unpushed down-button at w and ~f an unpushed up-button at w, then
// <d>[d]f -> f and <u>[u]~f -> ~f are not both in ML at w.
MixedButtonSweep mixed_button_sweep(const PointedModel& m, std::size_t max_size = 4);

}  // namespace gmv
