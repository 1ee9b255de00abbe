#include <doctest.h>

#include <cmath>
#include <set>

#include "helpers.hpp"
#include "pathforest/generators.hpp"
#include "pathforest/merge_tree.hpp"
#include "pathforest/trim.hpp"

using namespace pathforest;

TEST_CASE("P0 merge tree structure") {
  const MergeTree tree = build_merge_tree(fixture_p0());
  CHECK(tree.leaf_count() == 2);
  CHECK(tree.total_length() == doctest::Approx(4.0));

  std::multiset<double> leaf_levels;
  for (int id : tree.leaves()) leaf_levels.insert(tree.node(id).level);
  CHECK(leaf_levels == std::multiset<double>{2.0, 3.0});

  int branches = 0;
  for (const auto& n : tree.nodes()) {
    if (n.kind == NodeKind::branch) {
      ++branches;
      CHECK(n.level == doctest::Approx(1.0));
      CHECK(n.height == doctest::Approx(2.0));
    }
    if (n.kind == NodeKind::root) {
      CHECK(n.level == doctest::Approx(0.0));
      CHECK(n.height == doctest::Approx(3.0));
      CHECK(n.t_start == doctest::Approx(0.0));
      CHECK(n.t_end == doctest::Approx(1.0));
    }
    if (n.parent >= 0) CHECK(tree.node(n.parent).level < n.level);
  }
  CHECK(branches == 1);

  // finite-variation identity 2 lambda - delta(0,1) = TV
  CHECK(2 * tree.total_length() - fixture_p0().delta(0, 1) ==
        doctest::Approx(fixture_p0().total_variation()));
}

TEST_CASE("monotone path tree is a single arc") {
  const SampledPath mono = SampledPath::from_knots({0, 1}, {0, 1});
  const MergeTree tree = build_merge_tree(mono);
  CHECK(tree.leaf_count() == 1);
  CHECK(tree.total_length() == doctest::Approx(1.0));
  CHECK(persistence_pairs(tree) == std::vector<double>{1.0});
}

TEST_CASE("P1 tree: two boundary leaves joined at the root") {
  const SampledPath p1 = fixture_p1();
  const MergeTree tree = build_merge_tree(p1);
  CHECK(tree.leaf_count() == 2);
  CHECK(tree.total_length() == doctest::Approx(3.0));
  CHECK(2 * tree.total_length() - p1.delta(0, 1) ==
        doctest::Approx(p1.total_variation()));
  const auto pers = persistence_pairs(tree);
  CHECK(pers == std::vector<double>{2.0, 1.0});
}

TEST_CASE("finite-variation identity on random paths") {
  CounterRng rng(23);
  for (int rep = 0; rep < 120; ++rep) {
    const SampledPath p = test::random_path(rng, 200);
    const MergeTree tree = build_merge_tree(p);
    const double lhs = 2 * tree.total_length() - p.delta(0, 1);
    CHECK(lhs == doctest::Approx(p.total_variation()).epsilon(1e-11));
  }
}

TEST_CASE("persistence pairs fixtures") {
  CHECK(persistence_pairs(build_merge_tree(fixture_p0())) ==
        std::vector<double>{3.0, 1.0});
  CHECK(persistence_pairs(build_merge_tree(zigzag(2))) ==
        std::vector<double>{1.0, 1.0});
  const auto pers = persistence_pairs(build_merge_tree(fixture_p0()));
  CHECK(count_at_scale(pers, 0.5) == 2);
  CHECK(count_at_scale(pers, 1.5) == 1);
  CHECK(count_at_scale(pers, 1.0) == 2);  // step function uses >=
  CHECK(count_at_scale(pers, 3.5) == 0);
}

TEST_CASE("plateaus collapse to single tree points") {
  const SampledPath p = SampledPath::from_knots(
      {0, 0.2, 0.4, 0.6, 0.8, 1}, {0, 1, 1, 0, 2, 0});
  const MergeTree tree = build_merge_tree(p);
  CHECK(tree.leaf_count() == 2);  // the plateau is one maximum
  for (int id : tree.leaves()) {
    const auto& n = tree.node(id);
    if (n.level == 1.0) {
      CHECK(n.t_start == doctest::Approx(0.2));
      CHECK(n.t_end == doctest::Approx(0.4));
    }
  }
}

TEST_CASE("height integral closed form") {
  const MergeTree tree = build_merge_tree(fixture_p0());
  CHECK(height_integral(tree, 2.0) == doctest::Approx(5.0));
  CHECK(height_integral(tree, 1.0) == doctest::Approx(tree.total_length()));
  CHECK_THROWS_AS(height_integral(tree, 0.5), Error);

  // cross-check against the persistence route: int a^{p-1} N(a) da
  // equals sum pers^p / p
  for (double p : {1.5, 2.0, 3.0}) {
    CounterRng rng(31);
    for (int rep = 0; rep < 25; ++rep) {
      const SampledPath path = test::random_path(rng, 120);
      const MergeTree t = build_merge_tree(path);
      double step_route = 0;
      for (double h : persistence_pairs(t)) step_route += std::pow(h, p) / p;
      CHECK(height_integral(t, p) ==
            doctest::Approx(step_route).epsilon(1e-9));
    }
  }
}

TEST_CASE("node anchors bound the excursions") {
  CounterRng rng(41);
  for (int rep = 0; rep < 25; ++rep) {
    const SampledPath p = test::random_rooted_path(rng, 80);
    const MergeTree tree = build_merge_tree(p);
    for (const auto& n : tree.nodes()) {
      CHECK(n.t_start <= n.t_end + 1e-15);
      if (n.kind == NodeKind::leaf) continue;
      // the level is attained at both anchor ends and nothing dips below
      // inside
      CHECK(p(n.t_start) == doctest::Approx(n.level).epsilon(1e-9));
      CHECK(p(n.t_end) == doctest::Approx(n.level).epsilon(1e-9));
      CHECK(p.infimum(n.t_start, n.t_end) >= n.level - 1e-9);
    }
  }
}
