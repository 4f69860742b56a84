#include <random>

#include "doctest.h"
#include "gmv/error.hpp"
#include "gmv/semantics.hpp"
#include "gmv/theories.hpp"
#include "oracles.hpp"

using namespace gmv;

namespace {

PointedModel random_model(std::mt19937& rng, std::size_t n, std::size_t letters, double density,
                          bool preorder) {
  std::bernoulli_distribution edge(density), bit(0.5);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (edge(rng)) edges.emplace_back(i, j);
    }
  }
  PointedModel m{make_frame(n, edges, {preorder, preorder}), {}, 0};
  for (std::size_t l = 0; l < letters; ++l) {
    WorldSet s(n);
    for (std::size_t w = 0; w < n; ++w) {
      if (bit(rng)) s.insert(w);
    }
    m.valuation[canonical_letter(l)] = s;
  }
  std::uniform_int_distribution<std::size_t> pt(0, n - 1);
  m.point = pt(rng);
  return m;
}

PointedModel model(const Frame& f, std::map<std::string, WorldSet> val, std::size_t point = 0) {
  return PointedModel{f, std::move(val), point};
}

}  // namespace

TEST_CASE("eval examples") {
  CHECK(eval(model(single_point(), {{"p", WorldSet(1, {0})}}), parse("[u]p <-> p")).is_full());
  const auto c = model(chain(2), {{"p", WorldSet(2, {1})}});
  CHECK(eval(c, parse("<u>p")) == WorldSet(2, {0, 1}));
  CHECK(holds_at(c, 1, parse("<u>p")));
  CHECK(holds_at(c, 0, parse("true")));
  CHECK_THROWS_AS(holds_at(c, 2, parse("p")), BadWorldIndex);
  CHECK(valid_on(model(cluster(3), {{"p", WorldSet(3, {2})}}), parse("<u>p -> [u]<u>p")));
}

TEST_CASE("converse validities hold on every random model") {
  std::mt19937 rng(3);
  const Formula a = parse("p -> [u]~[d]~p");
  const Formula b = parse("p -> [d]~[u]~p");
  for (int t = 0; t < 200; ++t) {
    const auto m = random_model(rng, 1 + t % 8, 1, 0.3, false);
    CHECK(valid_on(m, a));
    CHECK(valid_on(m, b));
  }
}

TEST_CASE("eval agrees with the naive evaluator") {
  std::mt19937 rng(5);
  const auto corpus = enumerate(3, 6, {Direction::Up, Direction::Down});
  std::uniform_int_distribution<std::size_t> pick(0, corpus.size() - 1);
  for (int t = 0; t < 300; ++t) {
    const auto m = random_model(rng, 1 + t % 8, 3, 0.35, t % 2 == 0);
    const auto om = oracle::from(m);
    for (int k = 0; k < 20; ++k) {
      const Formula& f = corpus[pick(rng)];
      const WorldSet truth = eval(m, f);
      for (std::size_t w = 0; w < m.frame.size(); ++w) {
        CHECK(truth.contains(w) == oracle::holds(om, w, f));
      }
    }
  }
}

TEST_CASE("multiverse_truth") {
  CHECK(multiverse_truth(model(chain(3), {}), parse("true")).is_full());
  CHECK(multiverse_truth(model(chain(2), {{"p", WorldSet(2, {1})}}), parse("p")).empty());
  const Frame two = make_frame(2, {}, {true, false});
  CHECK(multiverse_truth(model(two, {{"p", WorldSet(2, {1})}}), parse("p")) == WorldSet(2, {1}));
}

TEST_CASE("definable algebra examples") {
  CHECK(definable_algebra(model(single_point(), {{"p", WorldSet(1, {0})}}), {"p"}).members.size() ==
        2);
  CHECK(definable_algebra(model(chain(2), {{"p", WorldSet(2, {1})}}), {"p"}).members.size() == 4);
  const auto a = definable_algebra(model(cluster(2), {}), {});
  REQUIRE(a.members.size() == 2);
  CHECK(a.members[0].empty());
  CHECK(a.members[1].is_full());
  CHECK_THROWS_AS(definable_algebra(with_world_letters(cluster(5), 0), {"w0", "w1", "w2", "w3", "w4"}, 16),
                  BudgetExceeded);
}

TEST_CASE("definable algebra equals the naive closure") {
  std::mt19937 rng(17);
  for (int t = 0; t < 150; ++t) {
    const auto m = random_model(rng, 1 + t % 7, 1 + t % 2, 0.3, t % 3 == 0);
    std::set<std::string> ls;
    for (const auto& [l, s] : m.valuation) ls.insert(l);
    const auto alg = definable_algebra(m, ls);
    std::set<oracle::Set> mine;
    for (const auto& s : alg.members) {
      oracle::Set v(m.frame.size());
      for (std::size_t w = 0; w < m.frame.size(); ++w) v[w] = s.contains(w);
      mine.insert(v);
    }
    CHECK(mine == oracle::algebra_closure(oracle::from(m)));
  }
}

TEST_CASE("ml_member examples") {
  CHECK(ml_member(model(single_point(), {}), parse("[d]p <-> p")));
  const auto pw = powerset_frame({{0}, {}}, {0});
  CHECK_FALSE(ml_member(pw, parse("<d>[d]b0 -> b0")));
  std::mt19937 rng(23);
  for (int t = 0; t < 30; ++t) {
    CHECK(ml_member(random_model(rng, 1 + t % 6, 2, 0.4, true), parse("[u]p -> [u][u]p")));
  }
}

TEST_CASE("ml_member agrees with the naive closure oracle") {
  std::mt19937 rng(29);
  const auto corpus = enumerate(2, 5, {Direction::Up, Direction::Down});
  std::uniform_int_distribution<std::size_t> pick(0, corpus.size() - 1);
  for (int t = 0; t < 60; ++t) {
    const auto m = random_model(rng, 1 + t % 5, 1, 0.4, t % 2 == 0);
    const MlChecker checker(m);
    const auto om = oracle::from(m);
    for (int k = 0; k < 15; ++k) {
      const Formula& f = corpus[pick(rng)];
      const auto r = checker.check(f);
      CHECK_MESSAGE(r.member == oracle::ml_member(om, m.point, f), print(f));
      if (!r.member) {
        REQUIRE(r.witness.has_value());
        PointedModel inst = m;
        for (const auto& [l, s] : *r.witness) inst.valuation[l] = s;
        CHECK_FALSE(holds_at(inst, m.point, f));
      }
    }
  }
}

TEST_CASE("ml_member budget") {
  const auto m = with_world_letters(cluster(20), 0);
  MlBudget b;
  b.algebra = 1024;
  CHECK_THROWS_AS(ml_member(m, parse("p -> [u]p"), b), BudgetExceeded);
}

TEST_CASE("fragments and classification") {
  SUBCASE("single point, down") {
    const auto r = ml_fragment(model(single_point(), {}), 1, 5, {Direction::Down});
    for (const auto& e : r.entries) CHECK(e.member == *is_valid(Theory::PL, e.formula));
    CHECK(r.matches.count(Theory::PL));
  }
  SUBCASE("cluster(3)") {
    const auto r = ml_fragment(with_world_letters(cluster(3), 1), 1, 7, {Direction::Up});
    CHECK(r.matches.count(Theory::S5));
    REQUIRE(r.separators.count(Theory::S4_2));
    const Formula sep = r.separators.at(Theory::S4_2);
    CHECK(*is_valid(Theory::S5, sep));
    CHECK_FALSE(*is_valid(Theory::S4_2, sep));
  }
  SUBCASE("bs_frame(2,2) root") {
    const auto r = ml_fragment(bs_model(2, 2), 1, 7, {Direction::Up});
    const Formula b = parse("<u>[u]p0 -> p0");
    for (const auto& e : r.entries) {
      if (*is_valid(Theory::S4_2, e.formula)) CHECK(e.member);
      if (e.formula == b) CHECK_FALSE(e.member);
    }
    CHECK(r.matches.count(Theory::S4_2));
    REQUIRE(r.separators.count(Theory::S5));
    CHECK(r.bimodal == 0);
  }
}
