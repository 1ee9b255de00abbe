#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "pathforest/embedding.hpp"
#include "pathforest/generators.hpp"
#include "pathforest/path.hpp"
#include "pathforest/range_min.hpp"
#include "pathforest/variation.hpp"

using namespace pathforest;

namespace {
bool throws_code(Errc code, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}
}  // namespace

TEST_CASE("normalize rescales time affinely") {
  const SampledPath p = normalize({{0, 0}, {2, 1}});
  CHECK(p.size() == 2);
  CHECK(p.time(0) == 0.0);
  CHECK(p.time(1) == 1.0);
  CHECK(p.value(0) == 0.0);
  CHECK(p.value(1) == 1.0);

  const SampledPath p0 = normalize(
      {{0, 0}, {0.25, 2}, {0.5, 1}, {0.75, 3}, {1, 0}});
  for (std::size_t i = 0; i < p0.size(); ++i) {
    CHECK(p0.time(i) == fixture_p0().time(i));
    CHECK(p0.value(i) == fixture_p0().value(i));
  }
}

TEST_CASE("normalize rejects bad input") {
  CHECK(throws_code(Errc::constant_path, [] { normalize({{0, 5}, {1, 5}}); }));
  CHECK(throws_code(Errc::empty_input, [] { normalize({{0, 5}}); }));
  CHECK(throws_code(Errc::non_monotone_time,
                    [] { normalize({{0, 0}, {0, 1}, {1, 2}}); }));
  CHECK(throws_code(Errc::non_finite_value, [] {
    normalize({{0, 0}, {1, std::nan("")}});
  }));
}

TEST_CASE("infimum is exact on segments") {
  const SampledPath p0 = fixture_p0();
  CHECK(p0.infimum(0, 1) == doctest::Approx(0).epsilon(1e-15));
  CHECK(p0.infimum(0.25, 0.75) == doctest::Approx(1));
  // interpolated endpoint 2 - 4(0.4 - 0.25) on the descending segment
  CHECK(p0.infimum(0.3, 0.4) == doctest::Approx(1.4));
  CHECK(throws_code(Errc::out_of_range, [&] { p0.infimum(-0.1, 0.5); }));
}

TEST_CASE("delta fixture values and properties") {
  const SampledPath p0 = fixture_p0();
  CHECK(p0.delta(0, 1) == doctest::Approx(0));
  CHECK(p0.delta(0.25, 0.75) == doctest::Approx(3));
  CHECK(p0.delta(0.4, 0.4) == doctest::Approx(0));

  CounterRng rng(7);
  for (int rep = 0; rep < 30; ++rep) {
    const SampledPath p = test::random_path(rng, 60);
    for (int k = 0; k < 40; ++k) {
      double s = rng.uniform01(), t = rng.uniform01(), u = rng.uniform01();
      if (s > t) std::swap(s, t);
      if (t > u) std::swap(t, u);
      if (s > t) std::swap(s, t);
      CHECK(p.delta(s, t) >= -1e-12);
      CHECK(p.delta(s, t) == doctest::Approx(p.delta(t, s)).epsilon(1e-12));
      // tree semi-distance triangle through an intermediate time
      CHECK(p.delta(s, u) <= p.delta(s, t) + p.delta(t, u) + 1e-9);
      // nested-interval monotonicity
      CHECK(p.infimum(s, u) <= p.infimum(s, t) + 1e-12);
      CHECK(p.infimum(s, u) <= p.infimum(t, u) + 1e-12);
    }
  }
}

TEST_CASE("range-min index matches the exact infimum") {
  CounterRng rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    const SampledPath p = test::random_path(rng, 400);
    const RangeMinIndex idx(p);
    for (int k = 0; k < 200; ++k) {
      double s = rng.uniform01(), t = rng.uniform01();
      CHECK(idx.infimum(s, t) == doctest::Approx(p.infimum(s, t)).epsilon(1e-14));
      CHECK(idx.delta(s, t) == doctest::Approx(p.delta(s, t)).epsilon(1e-14));
    }
  }
}

TEST_CASE("extend adds monotone ramps only where needed") {
  // already rooted: unchanged
  const ExtensionResult r0 = extend(fixture_p0());
  CHECK(!r0.extended_left);
  CHECK(!r0.extended_right);
  CHECK(r0.original_start == 0.0);
  CHECK(r0.original_end == 1.0);

  // V-then-up path: ramps on both sides down to the infimum
  const ExtensionResult r1 = extend(fixture_p1());
  CHECK(r1.extended_left);
  CHECK(r1.extended_right);
  CHECK(r1.path.first_value() == doctest::Approx(0));
  CHECK(r1.path.last_value() == doctest::Approx(0));
  CHECK(om01_holds(r1.path));
  // the original path sits unchanged inside the window
  const double mid = r1.original_start + 0.5 * (r1.original_end - r1.original_start);
  CHECK(r1.path(mid) == doctest::Approx(0));
  CHECK(r1.path(r1.original_start) == doctest::Approx(1));
  CHECK(r1.path(r1.original_end) == doctest::Approx(2));

  const ExtensionResult r2 =
      extend(SampledPath::from_knots({0, 1}, {0, 1}));
  CHECK(!r2.extended_left);
  CHECK(r2.extended_right);
}

TEST_CASE("valley floor fixtures") {
  // rooted path: floor is the constant infimum
  const SampledPath f0 = valley_floor(fixture_p0());
  for (double t : {0.0, 0.3, 0.7, 1.0}) CHECK(f0(t) == doctest::Approx(0));

  // V-shaped path equals its own floor
  const SampledPath f1 = valley_floor(fixture_p1());
  const SampledPath p1 = fixture_p1();
  for (double t = 0; t <= 1.0; t += 0.05)
    CHECK(f1(t) == doctest::Approx(p1(t)).epsilon(1e-12));

  const SampledPath fm = valley_floor(SampledPath::from_knots({0, 1}, {0, 1}));
  for (double t = 0; t <= 1.0; t += 0.1)
    CHECK(fm(t) == doctest::Approx(t).epsilon(1e-12));

  CounterRng rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    const SampledPath p = test::random_path(rng, 80);
    const SampledPath f = valley_floor(p);
    for (double t = 0; t <= 1.0; t += 0.01)
      CHECK(f(t) <= p(t) + 1e-12);
    // monotone down then up => finite variation == drop + rise
    const double tv_expected = (p.first_value() - p.min_value()) +
                               (p.last_value() - p.min_value());
    CHECK(f.total_variation() == doctest::Approx(tv_expected).epsilon(1e-9));
  }
}

TEST_CASE("cadlag embedding basics") {
  // continuous input: identity embedding
  const CadlagPath cont = CadlagPath::from_knots(
      {0, 0.5, 1}, {0, 1, 0.5}, {0, 1, 0.5});
  const GraphEmbedding emb0 = embed_cadlag(cont);
  CHECK(emb0.continuous.size() == 3);
  for (const auto& mk : emb0.time_map)
    CHECK(mk.embedded_start == mk.embedded_end);

  // single unit jump: one rising window, total variation 1
  const CadlagPath one = CadlagPath::from_knots(
      {0, 0.5, 1}, {0, 0, 1}, {0, 1, 1});
  const GraphEmbedding emb1 = embed_cadlag(one);
  CHECK(one.total_variation() == doctest::Approx(1));
  CHECK(emb1.continuous.total_variation() == doctest::Approx(1));
  CHECK(emb1.jump_weights.size() == 1);

  // two equal jumps get equal windows under the proportional rule
  const CadlagPath two = CadlagPath::from_knots(
      {0, 0.3, 0.7, 1}, {0, 0, 1, 2}, {0, 1, 2, 2});
  const GraphEmbedding emb2 = embed_cadlag(two);
  REQUIRE(emb2.jump_weights.size() == 2);
  CHECK(emb2.jump_weights[0] == doctest::Approx(emb2.jump_weights[1]));

  // forward map reproduces right values exactly
  for (std::size_t i = 0; i < two.size(); ++i)
    CHECK(emb2.continuous(emb2.forward(two.time(i))) ==
          doctest::Approx(two.right(i)).epsilon(1e-14));
}

TEST_CASE("tree metric is invariant under jump-window weights") {
  CounterRng rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    const CadlagPath x = gen_stable(64, 1.5, 1.0, 1000 + rep);
    const GraphEmbedding ea = embed_cadlag(x, JumpWeightRule::proportional);
    const GraphEmbedding eb = embed_cadlag(x, JumpWeightRule::equal);
    for (int k = 0; k < 50; ++k) {
      const double s = rng.uniform01(), t = rng.uniform01();
      const double da = ea.continuous.delta(ea.forward(s), ea.forward(t));
      const double db = eb.continuous.delta(eb.forward(s), eb.forward(t));
      CHECK(da == doctest::Approx(db).epsilon(1e-12));
    }
  }
}

TEST_CASE("embedding preserves p-variation") {
  for (int rep = 0; rep < 8; ++rep) {
    const CadlagPath x = gen_stable(128, 1.5, 1.0, 2000 + rep);
    const GraphEmbedding emb = embed_cadlag(x);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      const double v_cadlag = pvar_exact(x.interleaved_values(), p);
      const double v_embedded = pvar_exact(emb.continuous.values(), p);
      CHECK(v_cadlag == doctest::Approx(v_embedded).epsilon(1e-12));
    }
  }
}
