#include <cstdio>
#include <random>

#include "doctest.h"
#include "gmv/error.hpp"
#include "gmv/frame.hpp"

using namespace gmv;

namespace {

Frame random_frame(std::mt19937& rng, std::size_t n) {
  std::bernoulli_distribution coin(0.3);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (coin(rng)) edges.emplace_back(i, j);
    }
  }
  return make_frame(n, edges);
}

}  // namespace

TEST_CASE("make_frame closures") {
  CHECK(make_frame(1, {}, {true, false}).same_relation(single_point()));
  const Frame c2 = make_frame(2, {{0, 1}}, {true, true});
  CHECK(c2.same_relation(chain(2)));
  CHECK(make_frame(3, {{0, 1}, {1, 2}}, {false, true}).up(0, 2));
  CHECK_THROWS_AS(make_frame(2, {{0, 2}}), BadWorldIndex);
}

TEST_CASE("converse coherence on random frames") {
  std::mt19937 rng(11);
  for (int t = 0; t < 200; ++t) {
    const Frame f = random_frame(rng, 1 + t % 10);
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (std::size_t j = 0; j < f.size(); ++j) {
        CHECK(f.down(i, j) == f.up(j, i));
        CHECK(f.successors(Direction::Down, i).contains(j) == f.up(j, i));
      }
    }
    CHECK(f.converse().converse().same_relation(f));
  }
}

TEST_CASE("properties") {
  const auto pt = properties(single_point());
  CHECK((pt.reflexive && pt.transitive && pt.antisymmetric && pt.up_directed && pt.down_directed));
  const Frame fork = make_frame(3, {{0, 1}, {0, 2}}, {true, true});
  CHECK_FALSE(properties(fork).up_directed);
  CHECK(properties(fork).down_directed);
  const auto lattice = powerset_frame({{0, 1, 2}, {}}, {});
  CHECK(lattice.frame.size() == 8);
  CHECK(properties(lattice.frame).up_directed);
  CHECK(properties(lattice.frame).down_directed);
  CHECK(properties(lattice.frame).antisymmetric);
  CHECK_FALSE(properties(cluster(2)).antisymmetric);
}

TEST_CASE("small constructors") {
  CHECK(cluster(1).same_relation(single_point()));
  CHECK(cluster(3).edge_count() == 9);
  const Frame c = chain(2);
  CHECK(c.edge_count() == 3);
  CHECK((c.up(0, 0) && c.up(0, 1) && c.up(1, 1) && !c.up(1, 0)));
}

TEST_CASE("bs_frame") {
  CHECK(bs_frame(0, 0).first.same_relation(single_point()));
  CHECK(bs_frame(1, 0).first.same_relation(chain(2)));
  const auto [f, root] = bs_frame(1, 1);
  CHECK(f.size() == 4);
  CHECK(root == 0);
  CHECK(f.successors(Direction::Up, 0).count() == 4);
  CHECK(is_preorder(f));
  CHECK_THROWS_AS(bs_frame(10, 10, 1024), BudgetExceeded);
  const auto m = bs_model(2, 1);
  CHECK(m.value("b1").count() == 4);
  CHECK(m.value("s1").count() == 4);
}

TEST_CASE("powerset_frame letters") {
  const auto a = powerset_frame({{0}, {}}, {0});
  CHECK(a.point == 1);
  CHECK_FALSE(a.value("b0").contains(1));
  CHECK(a.value("b0").contains(0));

  // Worlds over {1,2}: 0 = {}, 1 = {1}, 2 = {2}, 3 = {1,2}.
  const auto b = powerset_frame({{}, {{1, 2}}}, {1, 2});
  CHECK(b.value("s1") == WorldSet(4, {1, 3}));

  const auto c = powerset_frame({{0}, {{1, 2}}}, {0, 1, 2});
  CHECK(c.frame.size() == 8);
  CHECK(properties(c.frame).down_directed);

  CHECK_THROWS_AS(powerset_frame({{0, 1}, {{1, 2}}}, {}), OverlappingIndexSets);
  CHECK_THROWS_AS(powerset_frame({{0}, {}}, {3}), BadWorldIndex);
}

TEST_CASE("combo_frame") {
  const auto [bs, root] = bs_frame(1, 1);
  const auto one = combo_frame(ComboKind::ClusterBelowBs, 1, 1, 1);
  CHECK(one.frame.same_relation(bs));
  CHECK(one.point == root);

  const auto below = combo_frame(ComboKind::ClusterBelowBs, 2, 1, 0);
  CHECK(below.frame.size() == 3);
  CHECK(is_preorder(below.frame));

  const auto above = combo_frame(ComboKind::ClusterAboveBs, 2, 1, 0);
  CHECK(above.frame.cone(Direction::Down, above.point).is_full());
  CHECK(above.frame.cone(Direction::Up, above.point) == WorldSet(3, {0, 1}));
}

TEST_CASE("text format round trip") {
  const auto m = powerset_frame({{0}, {{1, 2}}}, {0, 1, 2});
  const std::string path = "gmv_test_model.txt";
  save(m, path);
  const PointedModel back = load_model(path);
  std::remove(path.c_str());
  CHECK(back.frame.same_relation(m.frame));
  CHECK(back.valuation == m.valuation);
  CHECK(back.point == m.point);

  const std::string text = to_text(single_point());
  CHECK(text.find("worlds 1") != std::string::npos);
  CHECK(text.find("up 0 0") != std::string::npos);
  CHECK(frame_from_text(text).same_relation(single_point()));
}

TEST_CASE("text format errors") {
  CHECK_THROWS_AS(model_from_text("frame x\nworlds 3\nup 0 5\nend\n"), ParseError);
  CHECK_THROWS_AS(model_from_text("worlds 3\nend\n"), ParseError);
  CHECK_THROWS_AS(model_from_text("frame x\nworlds 2\nval p 0\nup 0 1\nend\n"), ParseError);
  CHECK_THROWS_AS(model_from_text("frame x\nworlds 2\n"), ParseError);
  CHECK_THROWS_AS(load_model("/nonexistent/dir/model.txt"), IoError);
  try {
    model_from_text("frame x\nworlds 3\n# note\nup 0 7\nend\n");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("4") != std::string::npos);
  }
  const auto [m, has_point] =
      model_from_text("frame x # comment\nworlds 2\nup 0 1\nclosure reflexive transitive\nend\n");
  CHECK_FALSE(has_point);
  CHECK(m.frame.same_relation(chain(2)));
}
