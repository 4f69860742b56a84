// Buttons, switches and independent control families.
//
// In direction d at world w: f is a button when [d]<d>[d]f holds, pushed when
// [d]f holds, and a switch when [d](<d>f & <d>~f) holds. A family is
// independent at its point when from every reachable world u every pattern
// (B', T) with B' a superset of the buttons pushed at u and T any switch
// pattern is realized by some successor of u.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gmv/formula.hpp"
#include "gmv/frame.hpp"

namespace gmv {

bool is_button(const PointedModel& m, std::size_t w, const Formula& f, Direction d);
bool is_switch(const PointedModel& m, std::size_t w, const Formula& f, Direction d);
bool is_pushed(const PointedModel& m, std::size_t w, const Formula& f, Direction d);

struct ControlFamily {
  Direction direction = Direction::Up;
  std::vector<Formula> buttons;
  std::vector<Formula> switches;
  // The family lives at base.point.
  PointedModel base;
};

struct IndependenceCertificate {
  struct Entry {
    std::size_t from = 0;
    // Bit i: button i pushed; bit j: switch j true.
    std::uint32_t pushed = 0;
    std::uint32_t pattern = 0;
    std::size_t world = 0;
  };
  ControlFamily family;
  // Ordered by world, then pushed, then pattern.
  std::vector<Entry> table;
};

struct FailureWitness {
  std::string reason;
  std::optional<std::size_t> world;
  std::optional<std::uint32_t> pushed;
  std::optional<std::uint32_t> pattern;
};

using IndependenceResult = std::variant<IndependenceCertificate, FailureWitness>;

struct ControlBudget {
  // Upper bound on cone size times the number of patterns.
  std::uint64_t table = std::uint64_t{1} << 22;
  // Largest compound formula tried by find_family.
  std::size_t max_size = 4;
  // Candidate families checked by find_family.
  std::uint64_t checks = 20000;
};

IndependenceResult check_independent(const ControlFamily& family, const ControlBudget& budget = {});

// Letters first, then compounds over the letters in enumeration order;
// candidates with an already seen extension are skipped. Families are tried
// in lexicographic order of candidate indices.
std::optional<ControlFamily> find_family(const PointedModel& m, std::size_t w, Direction d,
                                         std::size_t buttons, std::size_t switches,
                                         const ControlBudget& budget = {});

// Conjunction of [d]b for pushed buttons, ~[d]b for the rest, and the switch
// literals of the pattern.
Formula pattern_formula(const ControlFamily& family, std::uint32_t pushed, std::uint32_t pattern);

// A substitution of control combinations for the letters of f such that the
// instance of f, read in the family's direction, fails at the family's point.
// cm must refute f at its point on a reflexive transitive frame. Throws
// InsufficientControls when the family is too small for cm and
// VerificationFailed if the instance does not fail.
Substitution simulate_countermodel(const IndependenceCertificate& cert, const Formula& f,
                                   const PointedModel& cm);

}  // namespace gmv
