#include <algorithm>
#include <bit>
#include <unordered_map>

#include "gmv/error.hpp"
#include "gmv/semantics.hpp"
#include "gmv/theories.hpp"
#include "program.hpp"

namespace gmv {

namespace {

std::set<std::string> valuation_letters(const PointedModel& m) {
  std::set<std::string> out;
  for (const auto& [letter, set] : m.valuation) out.insert(letter);
  return out;
}

Frame quotient_frame(const PointedModel& m, const Partition& p) {
  const std::size_t b = p.blocks.size();
  std::vector<WorldSet> rows(b, WorldSet(b));
  for (std::size_t i = 0; i < b; ++i) {
    const std::size_t rep = p.blocks[i].first();
    m.frame.successors(Direction::Up, rep).for_each([&](std::size_t v) {
      rows[i].insert(p.block_of[v]);
    });
  }
  return Frame(b, std::move(rows), m.frame.name() + "/bisim");
}

// Lane j of a 64-assignment chunk has bit q of its local index set.
constexpr std::uint64_t kLanePattern[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

}  // namespace

MlChecker::MlChecker(const PointedModel& m, MlBudget budget)
    : model_(m),
      budget_(budget),
      partition_(bisimulation_classes(m, valuation_letters(m))),
      quotient_(quotient_frame(m, partition_)) {}

Membership MlChecker::check_at(std::size_t w, const Formula& f) const {
  if (w >= model_.frame.size()) throw BadWorldIndex("world " + std::to_string(w) + " out of range");
  const auto dirs = directions(f);
  const std::size_t start = partition_.block_of[w];
  const WorldSet cone_set = quotient_.reach(WorldSet::singleton(quotient_.size(), start),
                                            dirs.count(Direction::Up) > 0,
                                            dirs.count(Direction::Down) > 0);
  const std::vector<std::size_t> cone = cone_set.members();
  const std::size_t c = cone.size();
  std::vector<int> local(quotient_.size(), -1);
  for (std::size_t i = 0; i < c; ++i) local[cone[i]] = static_cast<int>(i);

  const detail::Program prog(f);
  const std::size_t nl = prog.letters.size();
  const std::size_t bits = c * nl;
  if (c >= 63 || (std::size_t{1} << c) > budget_.algebra) {
    throw BudgetExceeded("definable algebra over " + std::to_string(c) +
                         " classes exceeds the set budget");
  }
  if (bits >= 63 || (std::uint64_t{1} << bits) > budget_.assignments) {
    throw BudgetExceeded("2^" + std::to_string(bits) +
                         " assignments exceed the assignment budget");
  }

  std::vector<std::vector<int>> succ[2];
  for (int d = 0; d < 2; ++d) {
    succ[d].resize(c);
    const Direction dir = d == 0 ? Direction::Up : Direction::Down;
    for (std::size_t i = 0; i < c; ++i) {
      quotient_.successors(dir, cone[i]).for_each([&](std::size_t v) {
        if (local[v] >= 0) succ[d][i].push_back(local[v]);
      });
    }
  }

  const std::uint64_t total = std::uint64_t{1} << bits;
  const std::uint64_t chunks = total >= 64 ? total / 64 : 1;
  const std::uint64_t lanes = total >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << total) - 1;
  const std::size_t at = static_cast<std::size_t>(local[start]);
  std::vector<std::uint64_t> val(prog.ops.size() * c);

  for (std::uint64_t chunk = 0; chunk < chunks; ++chunk) {
    for (std::size_t k = 0; k < prog.ops.size(); ++k) {
      const auto& op = prog.ops[k];
      std::uint64_t* out = &val[k * c];
      const std::uint64_t* a = op.a >= 0 ? &val[static_cast<std::size_t>(op.a) * c] : nullptr;
      const std::uint64_t* b = op.b >= 0 ? &val[static_cast<std::size_t>(op.b) * c] : nullptr;
      switch (op.kind) {
        case Kind::Atom:
          for (std::size_t u = 0; u < c; ++u) {
            const std::size_t q = static_cast<std::size_t>(op.letter) * c + u;
            out[u] = q < 6 ? kLanePattern[q] : (((chunk >> (q - 6)) & 1) ? ~std::uint64_t{0} : 0);
          }
          break;
        case Kind::Top: std::fill(out, out + c, ~std::uint64_t{0}); break;
        case Kind::Bot: std::fill(out, out + c, 0); break;
        case Kind::Not: for (std::size_t u = 0; u < c; ++u) out[u] = ~a[u]; break;
        case Kind::And: for (std::size_t u = 0; u < c; ++u) out[u] = a[u] & b[u]; break;
        case Kind::Or: for (std::size_t u = 0; u < c; ++u) out[u] = a[u] | b[u]; break;
        case Kind::Imp: for (std::size_t u = 0; u < c; ++u) out[u] = ~a[u] | b[u]; break;
        case Kind::Iff: for (std::size_t u = 0; u < c; ++u) out[u] = ~(a[u] ^ b[u]); break;
        case Kind::Box: {
          const auto& s = succ[op.dir == Direction::Up ? 0 : 1];
          for (std::size_t u = 0; u < c; ++u) {
            std::uint64_t acc = ~std::uint64_t{0};
            for (int v : s[u]) acc &= a[v];
            out[u] = acc;
          }
          break;
        }
        case Kind::Dia: {
          const auto& s = succ[op.dir == Direction::Up ? 0 : 1];
          for (std::size_t u = 0; u < c; ++u) {
            std::uint64_t acc = 0;
            for (int v : s[u]) acc |= a[v];
            out[u] = acc;
          }
          break;
        }
      }
    }
    const std::uint64_t fail = ~val[(prog.ops.size() - 1) * c + at] & lanes;
    if (fail) {
      const std::uint64_t v = chunk * 64 + static_cast<std::uint64_t>(std::countr_zero(fail));
      Assignment witness;
      for (std::size_t l = 0; l < nl; ++l) {
        WorldSet s(model_.frame.size());
        for (std::size_t u = 0; u < c; ++u) {
          if ((v >> (l * c + u)) & 1) s |= partition_.blocks[cone[u]];
        }
        witness.emplace(prog.letters[l], std::move(s));
      }
      return {false, std::move(witness)};
    }
  }
  return {true, std::nullopt};
}

bool ml_member(const PointedModel& m, const Formula& f, MlBudget budget) {
  return MlChecker(m, budget).check(f).member;
}

std::vector<Formula> FragmentReport::valid() const {
  std::vector<Formula> out;
  for (const auto& e : entries) {
    if (e.member) out.push_back(e.formula);
  }
  return out;
}

FragmentReport ml_fragment(const PointedModel& m, std::size_t k, std::size_t max_size,
                           const std::set<Direction>& dirs, MlBudget budget, unsigned threads) {
  FragmentReport report;
  report.letters = k;
  report.max_size = max_size;
  report.dirs = dirs;
  const auto formulas = enumerate(k, max_size, dirs);
  const MlChecker checker(m, budget);
  std::vector<char> member(formulas.size(), 0);
  parallel_for(formulas.size(), threads,
               [&](std::size_t i) { member[i] = checker.check(formulas[i]).member ? 1 : 0; });
  report.entries.reserve(formulas.size());
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    report.entries.push_back({formulas[i], member[i] != 0});
  }
  const Classification c = classify(report, {}, threads);
  report.matches = c.matches;
  report.separators = c.separators;
  report.unknown = c.unknown;
  report.bimodal = c.bimodal;
  return report;
}

}  // namespace gmv
