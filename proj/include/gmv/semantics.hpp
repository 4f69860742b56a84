// Kripke semantics, the definable algebra of a pointed model, and the modal
// logic ML of a pointed model.
//
// ML(m) is the set of formulas f such that every substitution instance of f
// holds at the point. On a finite model the substitution instances of a letter
// denote exactly the members of the definable algebra: the least family of
// world sets that contains the valuation sets and is closed under complement,
// intersection and both box operators. That family consists of the unions of
// the classes of the largest bimodal bisimulation, so membership is decided by
// evaluating f on the bisimulation quotient under every assignment of quotient
// world sets to its letters.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gmv/formula.hpp"
#include "gmv/frame.hpp"
#include "gmv/theory.hpp"
#include "gmv/world_set.hpp"

namespace gmv {

inline constexpr std::size_t kDefaultAlgebraBudget = std::size_t{1} << 16;
inline constexpr std::uint64_t kDefaultAssignmentBudget = std::uint64_t{1} << 24;

WorldSet eval(const PointedModel& m, const Formula& f);
bool holds_at(const PointedModel& m, std::size_t w, const Formula& f);
bool valid_on(const PointedModel& m, const Formula& f);

// Worlds all of whose up/down-connected component satisfies f.
WorldSet multiverse_truth(const PointedModel& m, const Formula& f);

// Classes of the largest bisimulation for both relations and the given
// letters, numbered by least member.
struct Partition {
  std::vector<std::size_t> block_of;
  std::vector<WorldSet> blocks;
};
Partition bisimulation_classes(const PointedModel& m, const std::set<std::string>& letters);

struct DefinableAlgebra {
  Partition atoms;
  // All unions of atoms; members[mask] is the union of the atoms whose index
  // bits are set in mask.
  std::vector<WorldSet> members;
};

DefinableAlgebra definable_algebra(const PointedModel& m, const std::set<std::string>& letters,
                                   std::size_t budget = kDefaultAlgebraBudget);

using Assignment = std::map<std::string, WorldSet>;

struct Membership {
  bool member = true;
  // First failing assignment in canonical order when member is false.
  std::optional<Assignment> witness;
};

struct MlBudget {
  std::size_t algebra = kDefaultAlgebraBudget;
  std::uint64_t assignments = kDefaultAssignmentBudget;
};

// Decides ML membership at any world of one model. Construction computes the
// quotient once; check() may be called concurrently.
class MlChecker {
 public:
  explicit MlChecker(const PointedModel& m, MlBudget budget = {});

  Membership check(const Formula& f) const { return check_at(model_.point, f); }
  Membership check_at(std::size_t w, const Formula& f) const;

  const Partition& partition() const noexcept { return partition_; }
  const PointedModel& model() const noexcept { return model_; }
  std::size_t block_count() const noexcept { return partition_.blocks.size(); }
  // Up rows of the quotient frame over blocks.
  const Frame& quotient() const noexcept { return quotient_; }

 private:
  PointedModel model_;
  MlBudget budget_;
  Partition partition_;
  Frame quotient_;
};

bool ml_member(const PointedModel& m, const Formula& f, MlBudget budget = {});

struct FragmentEntry {
  Formula formula;
  bool member = false;
};

struct FragmentReport {
  std::size_t letters = 1;
  std::size_t max_size = 1;
  std::set<Direction> dirs;
  // Every enumerated formula, in enumeration order.
  std::vector<FragmentEntry> entries;
  // Theories whose validity agrees with membership on every comparable entry.
  std::set<Theory> matches;
  // First entry, in enumeration order, where membership and validity differ.
  std::map<Theory, Formula> separators;
  // Entries whose verdict was Unknown, per theory.
  std::map<Theory, std::size_t> unknown;
  // Entries mixing both directions; no monomodal theory applies to them.
  std::size_t bimodal = 0;

  std::vector<Formula> valid() const;
};

// Enumerates formulas over k letters up to max_size and records ML
// membership of each; classification against the four theories is attached.
// threads == 0 picks the hardware concurrency.
FragmentReport ml_fragment(const PointedModel& m, std::size_t k, std::size_t max_size,
                           const std::set<Direction>& dirs, MlBudget budget = {},
                           unsigned threads = 0);

// Runs fn(i) for i in [0, count) on a pool of threads.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace gmv
