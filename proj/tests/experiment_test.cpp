#include "thetafix/experiment.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "thetafix/errors.hpp"

using namespace thetafix;

namespace {

std::string read_config(const std::string& name) {
  std::ifstream in(std::string(THETAFIX_CONFIG_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Line number carried by the ParseError thrown for `text`, or -1.
int error_line(const std::string& text) {
  try {
    parse_experiment(text);
  } catch (const ParseError& e) {
    return static_cast<int>(e.line());
  }
  return -1;
}

const char* kMinimal = R"([experiment]
mode = verify-axioms
[space]
domain = interval
lower = 0
upper = 1
action = sum
)";

}  // namespace

TEST(ParseReal, DecimalsAndRatios) {
  EXPECT_EQ(parse_real("0.25"), 0.25);
  EXPECT_EQ(parse_real("-3"), -3.0);
  EXPECT_EQ(parse_real("1e-9"), 1e-9);
  EXPECT_EQ(parse_real("2/9"), 2.0 / 9);
  EXPECT_EQ(parse_real("7/8"), 0.875);
  EXPECT_FALSE(parse_real("abc"));
  EXPECT_FALSE(parse_real("1/0"));
  EXPECT_FALSE(parse_real("1/"));
  EXPECT_FALSE(parse_real(""));
  EXPECT_FALSE(parse_real("0.5x"));
}

TEST(ParseExperiment, AffineConfig) {
  const auto exp = parse_experiment(read_config("affine.cfg"));
  EXPECT_EQ(exp.name, "affine");
  EXPECT_EQ(exp.mode, Mode::Full);
  EXPECT_FALSE(exp.space.finite);
  EXPECT_EQ(exp.space.action, "product-sum");
  ASSERT_TRUE(exp.map);
  EXPECT_EQ(exp.map->kind, "affine");
  EXPECT_EQ(exp.map->params, (std::vector{2.0, 0.25}));
  ASSERT_TRUE(exp.zeta);
  EXPECT_EQ(exp.zeta->params, std::vector{0.6});
  EXPECT_EQ(exp.starts, (std::vector{Point::coord(0), Point::coord(0.5), Point::coord(1)}));
  EXPECT_EQ(exp.plan, SamplePlan{});
}

TEST(ParseExperiment, TriangleConfig) {
  const auto exp = parse_experiment(read_config("triangle.cfg"));
  EXPECT_TRUE(exp.space.finite);
  EXPECT_EQ(exp.space.labels, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(exp.space.table, (std::vector<double>{0, 5, 13, 5, 0, 12, 13, 12, 0}));
  const auto r = resolve(exp);
  EXPECT_EQ(r.starts.size(), 3u);
  EXPECT_FALSE(r.map);
}

TEST(ParseExperiment, AllBundledConfigsParse) {
  for (auto name : {"affine.cfg", "reciprocal.cfg", "two_piece_ninths.cfg",
                    "two_piece_sevenths.cfg", "triangle.cfg", "identity.cfg"})
    EXPECT_NO_THROW(parse_experiment(read_config(name))) << name;
}

TEST(ParseExperiment, StartGridDefaults) {
  const auto r = resolve(parse_experiment(read_config("two_piece_ninths.cfg")));
  ASSERT_EQ(r.starts.size(), 11u);
  EXPECT_EQ(r.starts.front(), Point::coord(0));
  EXPECT_EQ(r.starts.back(), Point::coord(1));
  EXPECT_EQ(r.map->breakpoints, std::vector{0.5});
}

TEST(ParseExperiment, CommentsAndBlankLines) {
  const std::string text = std::string("# leading\n; also a comment\n\n") + kMinimal;
  EXPECT_EQ(parse_experiment(text).mode, Mode::VerifyAxioms);
}

TEST(ParseExperiment, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line(std::string(kMinimal) + "colour = red\n"), 8);
  EXPECT_EQ(error_line(std::string(kMinimal) + "lower = 0\n"), 8);  // duplicate
  EXPECT_EQ(error_line(std::string(kMinimal) + "[bogus]\n"), 8);
  EXPECT_EQ(error_line(std::string(kMinimal) + "[plan\n"), 8);
  EXPECT_EQ(error_line(std::string(kMinimal) + "no equals sign\n"), 8);
  EXPECT_EQ(error_line(std::string(kMinimal) + "[plan]\nstep = fast\n"), 9);
  EXPECT_EQ(error_line(std::string(kMinimal) + "[plan]\nrandom = -4\n"), 9);
  EXPECT_EQ(error_line("[experiment]\nmode = sideways\n[space]\ndomain = interval\n"), 2);
  EXPECT_EQ(error_line("mode = full\n"), 1);
}

TEST(ParseExperiment, FiniteTableNeedsEveryDistance) {
  const std::string text = R"([experiment]
mode = verify-axioms
[space]
domain = finite
labels = a b c
d(a,b) = 5
d(b,c) = 12
action = euclid
)";
  EXPECT_THROW(parse_experiment(text), ParseError);
  EXPECT_THROW(parse_experiment(text + "d(a,z) = 1\n"), ParseError);
  EXPECT_THROW(parse_experiment(text + "d(a,c) = 13\nd(c,a) = 13\n"), ParseError);
  EXPECT_NO_THROW(parse_experiment(text + "d(c,a) = 13\n"));
}

TEST(ParseExperiment, CatalogErrorsPropagate) {
  const std::string base = std::string(kMinimal);
  auto no_action = base;
  no_action.replace(no_action.find("action = sum"), 12, "action = max");
  EXPECT_THROW(parse_experiment(no_action), UnknownKind);
  EXPECT_THROW(parse_experiment(base + "[map]\nkind = affine\nparams = 2 0.6\n"), ParameterError);
  EXPECT_THROW(parse_experiment(base + "[zeta]\nkind = linear\nparams = 1\n"), ParameterError);
  EXPECT_THROW(parse_experiment(base + "[map]\nkind = warp\n"), UnknownKind);
}

TEST(Resolve, ModeNeedsItsSections) {
  Experiment exp;
  exp.mode = Mode::Solve;
  EXPECT_THROW(resolve(exp), InvalidArgument);
  exp.map = MapSpec{"identity", {}, {}};
  EXPECT_NO_THROW(resolve(exp));
  exp.mode = Mode::CertifyZ;
  EXPECT_THROW(resolve(exp), InvalidArgument);
  exp.zeta = ZetaSpec{"linear", {0.5}, ""};
  EXPECT_NO_THROW(resolve(exp));
  exp.starts = {Point::coord(0.1)};
  exp.start_grid = 4;
  EXPECT_THROW(resolve(exp), ParameterError);
}

TEST(Mode, NamesRoundTrip) {
  for (auto m : {Mode::VerifyAxioms, Mode::CertifyZ, Mode::CertifyModifiedZ, Mode::Solve, Mode::Full})
    EXPECT_EQ(mode_from_string(to_string(m)), m);
  EXPECT_THROW(mode_from_string("everything"), UnknownKind);
}

TEST(EmitExperiment, BundledConfigsRoundTrip) {
  for (auto name : {"affine.cfg", "reciprocal.cfg", "two_piece_ninths.cfg",
                    "two_piece_sevenths.cfg", "triangle.cfg", "identity.cfg"}) {
    const auto exp = parse_experiment(read_config(name));
    EXPECT_EQ(parse_experiment(emit_experiment(exp)), exp) << name;
  }
}

TEST(Property, RandomExperimentsRoundTrip) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> coin(0, 1);
  const Mode modes[] = {Mode::VerifyAxioms, Mode::CertifyZ, Mode::CertifyModifiedZ, Mode::Solve,
                        Mode::Full};
  const char* actions[] = {"sum", "product-sum", "euclid", "sqrt-sum", "rational"};
  for (int trial = 0; trial < 200; ++trial) {
    Experiment exp;
    exp.name = "trial" + std::to_string(trial);
    exp.mode = modes[trial % 5];
    exp.space.action = actions[rng() % 5];
    exp.plan.step = 0.05 + u(rng);
    exp.plan.upper = 1 + 10 * u(rng);
    exp.plan.random_count = rng() % 300;
    exp.plan.seed = rng();
    exp.plan.pair_points = 2 + rng() % 200;
    exp.tol = 1e-12 + u(rng) * 1e-6;
    exp.max_iter = 1 + rng() % 20000;
    exp.sequences.tail_start = 10 + rng() % 100;
    exp.sequences.tail_length = 1 + rng() % 500;
    exp.sequences.limits = {0.1 + u(rng), 2 + u(rng)};
    exp.sequences.coefficients = {-u(rng), u(rng)};
    if (coin(rng)) {
      const std::size_t n = 2 + rng() % 4;
      exp.space.finite = true;
      exp.space.labels.clear();
      for (std::size_t i = 0; i < n; ++i) exp.space.labels.push_back("q" + std::to_string(i));
      exp.space.table.assign(n * n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          exp.space.table[i * n + j] = exp.space.table[j * n + i] = 0.5 + u(rng);
      MapSpec map{"finite-table", {}, {}};
      for (std::size_t i = 0; i < n; ++i) map.image.push_back(exp.space.labels[rng() % n]);
      exp.map = map;
      if (coin(rng)) exp.starts = {Point::label(rng() % n), Point::label(0)};
    } else {
      exp.space.lower = -5 * u(rng);
      exp.space.upper = exp.space.lower + 0.5 + 5 * u(rng);
      const double c = exp.space.lower + u(rng) * (exp.space.upper - exp.space.lower);
      exp.map = MapSpec{"constant", {c}, {}};
      if (coin(rng))
        exp.starts = {Point::coord(exp.space.lower), Point::coord(c)};
      else
        exp.start_grid = rng() % 30;
    }
    if (coin(rng) || exp.mode == Mode::CertifyZ || exp.mode == Mode::CertifyModifiedZ ||
        exp.mode == Mode::Full)
      exp.zeta = coin(rng) ? ZetaSpec{"linear", {u(rng) * 0.99}, ""} : ZetaSpec{"phi", {}, "half"};

    const auto text = emit_experiment(exp);
    Experiment back;
    ASSERT_NO_THROW(back = parse_experiment(text)) << text;
    EXPECT_EQ(back, exp) << text;
  }
}
