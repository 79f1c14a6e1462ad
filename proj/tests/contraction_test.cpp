#include "thetafix/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "thetafix/catalog.hpp"
#include "thetafix/errors.hpp"

using namespace thetafix;

namespace {

const auto kUnit = PointDomain::interval(0, 1);

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

struct RandomInstance {
  std::vector<std::string> labels;
  std::vector<double> table;  // row-major, metric closure of random weights
  std::vector<std::size_t> image;
};

RandomInstance random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> size(1, 6);
  std::uniform_real_distribution<double> weight(0.05, 10);
  const std::size_t n = size(rng);
  RandomInstance inst;
  for (std::size_t i = 0; i < n; ++i) inst.labels.push_back("p" + std::to_string(i));
  inst.table.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) inst.table[i * n + j] = inst.table[j * n + i] = weight(rng);
  // shortest paths, so the table is an ordinary metric
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        inst.table[i * n + j] =
            std::min(inst.table[i * n + j], inst.table[i * n + k] + inst.table[k * n + j]);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t i = 0; i < n; ++i) inst.image.push_back(pick(rng));
  return inst;
}

struct OracleMin {
  double value = std::numeric_limits<double>::infinity();
  std::size_t i = 0, j = 0;
};

// Plain double loop over index pairs of the raw table.
template <class F>
OracleMin oracle_min(std::size_t n, F&& f) {
  OracleMin m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double v = f(i, j);
      if (v < m.value) m = {v, i, j};
    }
  return m;
}

}  // namespace

TEST(ZMargin, IdentityIsViolatedAtTheWidestPair) {
  const auto space = ThetaMetricSpace::euclidean(0, 1, make_b_action("sum"));
  const auto id = make_self_map("identity", {}, kUnit);
  const auto r = z_margin(space, id, make_simulation("linear", std::vector{0.5}), SamplePlan{});
  EXPECT_FALSE(r.nonnegative());
  EXPECT_EQ(r.min_margin, -0.5);
  ASSERT_TRUE(r.argmin);
  EXPECT_EQ(r.argmin->first, Point::coord(0));
  EXPECT_EQ(r.argmin->second, Point::coord(1));
  EXPECT_EQ(r.pair_count, 101u * 101u);
}

TEST(ZMargin, AffineMapIsCertified) {
  const auto space = ThetaMetricSpace::euclidean(0, 1, make_b_action("product-sum"));
  const auto t = make_self_map("affine", std::vector{2.0, 0.25}, kUnit);
  const auto r = z_margin(space, t, make_simulation("linear", std::vector{0.6}), SamplePlan{});
  EXPECT_TRUE(r.nonnegative());
  EXPECT_EQ(r.min_margin, 0.0);  // diagonal
  // 0.6 d - d/2 at the grid spacing 0.01
  EXPECT_NEAR(r.min_margin_distinct, 0.1 * 0.01, 1e-15);
  EXPECT_FALSE(r.clamped);
}

TEST(ZMargin, ForeignDomainIsAMismatch) {
  const auto space = ThetaMetricSpace::euclidean(0, 2, make_b_action("sum"));
  const auto t = make_self_map("identity", {}, kUnit);
  EXPECT_THROW(z_margin(space, t, make_simulation("linear", std::vector{0.5}), SamplePlan{}),
               DomainMismatch);
}

TEST(SamplePoints, SplitPointIsInjected) {
  const auto space = ThetaMetricSpace::euclidean(0, 1, make_b_action("sum"));
  const auto t = make_self_map("two-piece", std::vector{2.0 / 9, 1.0 / 9, 1.0 / 3}, kUnit);
  const auto pts = sample_points(space, t, SamplePlan{});
  EXPECT_EQ(pts.size(), 102u);
  EXPECT_TRUE(std::find(pts.begin(), pts.end(), Point::coord(1.0 / 3)) != pts.end());
  EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.coordinate() < b.coordinate();
  }));
  // 0.5 already lies on the 101-point grid
  const auto half = make_self_map("two-piece", std::vector{2.0 / 9, 1.0 / 9, 0.5}, kUnit);
  EXPECT_EQ(sample_points(space, half, SamplePlan{}).size(), 101u);
}

TEST(SamplePoints, FiniteDomainUsesAllLabels) {
  const auto dom = PointDomain::finite({"x", "y"});
  const auto space = ThetaMetricSpace::finite(dom, {0, 1, 1, 0}, make_b_action("sum"));
  const auto t = make_self_map("finite-table", std::vector{1.0, 0.0}, dom);
  SamplePlan p;
  p.pair_points = 7;
  EXPECT_EQ(sample_points(space, t, p), (std::vector{Point::label(0), Point::label(1)}));
}

TEST(MValue, DominatesDistance) {
  const auto space = ThetaMetricSpace::euclidean(0, 1, make_b_action("sum"));
  const auto t = make_self_map("reciprocal", {}, kUnit);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 2000; ++i) {
    const auto x = Point::coord(u(rng)), y = Point::coord(u(rng));
    const double m = m_value(space, t, x, y);
    EXPECT_GE(m, space.distance(x, y));
    EXPECT_GE(m, space.distance(x, t.apply(x)));
    EXPECT_GE(m, space.distance(y, t.apply(y)));
  }
}

TEST(ModifiedZMargin, DiagonalReducesToDisplacement) {
  // zeta(0, d(x,Tx)) = lambda d(x,Tx) on the diagonal
  const auto dom = PointDomain::finite({"u"});
  const auto space = ThetaMetricSpace::finite(dom, {0}, make_b_action("sum"));
  const auto fixed = make_self_map("finite-table", std::vector{0.0}, dom);
  const auto r = modified_z_margin(space, fixed, make_simulation("linear", std::vector{0.5}),
                                   SamplePlan{});
  EXPECT_EQ(r.pair_count, 1u);
  EXPECT_EQ(r.min_margin, 0.0);
  EXPECT_EQ(r.min_margin_distinct, std::numeric_limits<double>::infinity());

  const auto space1 = ThetaMetricSpace::euclidean(0, 1, make_b_action("sum"));
  const auto t = make_self_map("constant", std::vector{0.3}, kUnit);
  const auto z = make_simulation("linear", std::vector{0.5});
  for (double x : {0.0, 0.3, 0.75, 1.0}) {
    const auto p = Point::coord(x);
    EXPECT_DOUBLE_EQ(z.eval(space1.distance(t.apply(p), t.apply(p)), m_value(space1, t, p, p)),
                     0.5 * std::abs(x - 0.3));
  }
}

TEST(Contractivity, DoubletonSwapIsAnIsometry) {
  const auto dom = PointDomain::finite({"a", "b"});
  const auto space = ThetaMetricSpace::finite(dom, {0, 1, 1, 0}, make_b_action("sum"));
  const auto swap = make_self_map("finite-table", std::vector{1.0, 0.0}, dom);
  const auto c = contractivity_check(space, swap, SamplePlan{});
  EXPECT_FALSE(c.nonnegative());
  EXPECT_EQ(c.pair_count, 2u);
  EXPECT_EQ(c.min_margin, 0.0);
  const auto z = z_margin(space, swap, make_simulation("linear", std::vector{0.5}), SamplePlan{});
  EXPECT_FALSE(z.nonnegative());
  EXPECT_EQ(z.min_margin, -0.5);
  ASSERT_TRUE(z.argmin);
  EXPECT_EQ(z.argmin->first, Point::label(0));
  EXPECT_EQ(z.argmin->second, Point::label(1));
}

TEST(Contractivity, SingletonHasNoDistinctPairs) {
  const auto dom = PointDomain::finite({"u"});
  const auto space = ThetaMetricSpace::finite(dom, {0}, make_b_action("sum"));
  const auto c = contractivity_check(space, make_self_map("identity", {}, dom), SamplePlan{});
  EXPECT_EQ(c.pair_count, 0u);
  EXPECT_TRUE(c.nonnegative());
}

TEST(OracleEquivalence, RandomFiniteTablesBitExact) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> lambda(0, 0.999);
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = random_instance(rng);
    const std::size_t n = inst.labels.size();
    const auto dom = PointDomain::finite(inst.labels);
    const auto space = ThetaMetricSpace::finite(dom, inst.table, make_b_action("sum"));
    std::vector<double> image(inst.image.begin(), inst.image.end());
    const auto t = make_self_map("finite-table", image, dom);
    const auto zeta = trial % 2 == 0 ? make_simulation("linear", std::vector{lambda(rng)})
                                     : make_simulation("rational", {});

    auto d = [&](std::size_t i, std::size_t j) { return inst.table[i * n + j]; };
    const auto& T = inst.image;
    const auto plain = oracle_min(n, [&](std::size_t i, std::size_t j) {
      return zeta.eval(d(T[i], T[j]), d(i, j));
    });
    const auto modified = oracle_min(n, [&](std::size_t i, std::size_t j) {
      return zeta.eval(d(T[i], T[j]), std::max({d(i, j), d(i, T[i]), d(j, T[j])}));
    });

    const auto z = z_margin(space, t, zeta, SamplePlan{});
    const auto mz = modified_z_margin(space, t, zeta, SamplePlan{});
    EXPECT_TRUE(same_bits(z.min_margin, plain.value)) << trial;
    EXPECT_TRUE(same_bits(mz.min_margin, modified.value)) << trial;
    ASSERT_TRUE(z.argmin);
    EXPECT_EQ(z.argmin->first, Point::label(plain.i));
    EXPECT_EQ(z.argmin->second, Point::label(plain.j));
    EXPECT_EQ(mz.argmin->first, Point::label(modified.i));
    EXPECT_EQ(z.pair_count, n * n);
    EXPECT_EQ(z.nonnegative(), plain.value >= -1e-9);
  }
}

TEST(Property, PositiveZMarginImpliesContractive) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> slope(1.01, 10), lambda(0, 0.999), frac(0, 1);
  SamplePlan plan;
  plan.pair_points = 41;
  int positive = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const double a = slope(rng);
    const double b = frac(rng) * (1 - 1 / a);
    const auto t = make_self_map("affine", std::vector{a, b}, kUnit);
    const auto space = ThetaMetricSpace::euclidean(0, 1, make_b_action("sum"));
    const auto zeta = make_simulation("linear", std::vector{lambda(rng)});
    const auto z = z_margin(space, t, zeta, plan);
    if (z.min_margin_distinct > 0) {
      ++positive;
      EXPECT_TRUE(contractivity_check(space, t, plan).nonnegative()) << a << " " << b;
    }
  }
  EXPECT_GT(positive, 50);
}
