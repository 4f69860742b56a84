#include "gmv/semantics.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "gmv/error.hpp"

namespace gmv {

WorldSet eval(const PointedModel& m, const Formula& f) {
  const Frame& fr = m.frame;
  const std::size_t n = fr.size();
  switch (f.kind()) {
    case Kind::Atom: return m.value(f.name());
    case Kind::Top: return WorldSet::full(n);
    case Kind::Bot: return WorldSet(n);
    case Kind::Not: return ~eval(m, f.arg());
    case Kind::Box: return fr.box(f.direction(), eval(m, f.arg()));
    case Kind::Dia: return fr.dia(f.direction(), eval(m, f.arg()));
    case Kind::And: return eval(m, f.lhs()) & eval(m, f.rhs());
    case Kind::Or: return eval(m, f.lhs()) | eval(m, f.rhs());
    case Kind::Imp: return ~eval(m, f.lhs()) | eval(m, f.rhs());
    case Kind::Iff: {
      const WorldSet a = eval(m, f.lhs());
      const WorldSet b = eval(m, f.rhs());
      return (a & b) | (~a & ~b);
    }
  }
  return WorldSet(n);
}

bool holds_at(const PointedModel& m, std::size_t w, const Formula& f) {
  if (w >= m.frame.size()) throw BadWorldIndex("world " + std::to_string(w) + " out of range");
  return eval(m, f).contains(w);
}

bool valid_on(const PointedModel& m, const Formula& f) { return eval(m, f).is_full(); }

WorldSet multiverse_truth(const PointedModel& m, const Formula& f) {
  const std::size_t n = m.frame.size();
  const WorldSet truth = eval(m, f);
  WorldSet out(n);
  WorldSet done(n);
  for (std::size_t w = 0; w < n; ++w) {
    if (done.contains(w)) continue;
    const WorldSet comp = m.frame.component(w);
    done |= comp;
    if (comp.subset_of(truth)) out |= comp;
  }
  return out;
}

Partition bisimulation_classes(const PointedModel& m, const std::set<std::string>& letters) {
  const Frame& fr = m.frame;
  const std::size_t n = fr.size();
  std::vector<WorldSet> vals;
  for (const auto& l : letters) vals.push_back(m.value(l));

  // Initial split by valuation, then refine by successor classes in both
  // directions until the number of classes is stable.
  std::vector<std::size_t> block(n);
  std::size_t count = 0;
  {
    std::map<std::vector<bool>, std::size_t> ids;
    for (std::size_t w = 0; w < n; ++w) {
      std::vector<bool> key;
      key.reserve(vals.size());
      for (const auto& v : vals) key.push_back(v.contains(w));
      auto [it, fresh] = ids.emplace(std::move(key), ids.size());
      block[w] = it->second;
    }
    count = ids.size();
  }
  while (true) {
    using Key = std::tuple<std::size_t, std::vector<std::uint64_t>, std::vector<std::uint64_t>>;
    std::map<Key, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (std::size_t w = 0; w < n; ++w) {
      WorldSet up(count), down(count);
      fr.successors(Direction::Up, w).for_each([&](std::size_t v) { up.insert(block[v]); });
      fr.successors(Direction::Down, w).for_each([&](std::size_t v) { down.insert(block[v]); });
      Key key{block[w], up.words(), down.words()};
      auto [it, fresh] = ids.emplace(std::move(key), ids.size());
      next[w] = it->second;
    }
    block = std::move(next);
    const std::size_t refined = ids.size();
    if (refined == count) break;
    count = refined;
  }

  Partition p;
  p.block_of = block;
  p.blocks.assign(count, WorldSet(n));
  for (std::size_t w = 0; w < n; ++w) p.blocks[block[w]].insert(w);
  return p;
}

DefinableAlgebra definable_algebra(const PointedModel& m, const std::set<std::string>& letters,
                                   std::size_t budget) {
  DefinableAlgebra a;
  a.atoms = bisimulation_classes(m, letters);
  const std::size_t b = a.atoms.blocks.size();
  if (b >= 63 || (std::size_t{1} << b) > budget) {
    throw BudgetExceeded("definable algebra has 2^" + std::to_string(b) +
                         " members, over the budget of " + std::to_string(budget));
  }
  const std::size_t total = std::size_t{1} << b;
  a.members.reserve(total);
  for (std::size_t mask = 0; mask < total; ++mask) {
    WorldSet s(m.frame.size());
    for (std::size_t i = 0; i < b; ++i) {
      if (mask & (std::size_t{1} << i)) s |= a.atoms.blocks[i];
    }
    a.members.push_back(std::move(s));
  }
  return a;
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      while (!failed.load(std::memory_order_relaxed)) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          failed = true;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace gmv
