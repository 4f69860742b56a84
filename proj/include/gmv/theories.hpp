// Deciders for the monomodal theories PL, S4, S4.2 and S5.
//
// Verdicts come from type elimination over the atoms and modal subformulas of
// f: a type is a truth assignment to those nodes, types are related by
// inclusion of their necessity sets, and types lacking a witness are removed
// until a fixpoint. Countermodels are then searched canonically over small
// frames of the theory's class (size ascending, edges lexicographic,
// valuations lexicographic, failing world ascending), falling back to a model
// read off the surviving types.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gmv/formula.hpp"
#include "gmv/frame.hpp"
#include "gmv/semantics.hpp"
#include "gmv/theory.hpp"

namespace gmv {

// K is implicit. PL = {[]p <-> p}; S4 = {T, 4}; S4.2 = S4 + .2; S5 = S4 + 5.
std::vector<Formula> axioms(Theory t, Direction d = Direction::Up);

// Whether every world of f lies in a frame of the theory's class: preorder
// (S4), directed preorder (S4.2), equivalence relation (S5), identity (PL).
bool frame_in_class(Theory t, const Frame& f, Direction d = Direction::Up);

struct DecideBudget {
  // Work units for type construction and elimination.
  std::uint64_t nodes = std::uint64_t{1} << 30;
  // Largest frame tried by the canonical countermodel search.
  std::size_t search_worlds = 4;
};

struct Verdict {
  enum class Kind { Valid, Invalid, Unknown };
  Kind kind = Kind::Unknown;
  // For Invalid: a model whose point refutes the formula.
  std::optional<PointedModel> countermodel;
  // For Unknown: why the budget ran out.
  std::string report;

  bool is_valid() const noexcept { return kind == Kind::Valid; }
  bool is_invalid() const noexcept { return kind == Kind::Invalid; }
  bool is_unknown() const noexcept { return kind == Kind::Unknown; }
};

const char* to_string(Verdict::Kind k) noexcept;

// Throws MixedDirections when f uses both directions.
Verdict decide(Theory t, const Formula& f, const DecideBudget& budget = {});

// Verdict without a countermodel; nullopt when the budget runs out.
std::optional<bool> is_valid(Theory t, const Formula& f, const DecideBudget& budget = {});

struct Classification {
  std::set<Theory> matches;
  std::map<Theory, Formula> separators;
  std::map<Theory, std::size_t> unknown;
  std::size_t bimodal = 0;
};

Classification classify(const FragmentReport& report, const DecideBudget& budget = {},
                        unsigned threads = 0);

}  // namespace gmv
