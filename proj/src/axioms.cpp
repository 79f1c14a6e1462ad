#include "thetafix/axioms.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <utility>

#include "thetafix/bisection.hpp"
#include "thetafix/errors.hpp"
#include "thetafix/tolerances.hpp"

namespace thetafix {

namespace {

// Random streams drawn from one plan seed.
enum Stream : std::uint64_t {
  kAxisStream = 1,
  kQuadStream = 2,
  kImageStream = 3,
  kPointStream = 4,
  kPairStream = 5,
  kTripleStream = 6,
};

// Accumulates one axiom's samples in canonical order.
class Tally {
 public:
  explicit Tally(std::string axiom) { v_.axiom = std::move(axiom); }

  void observe(const Witness& w) {
    ++v_.samples;
    const double m = w.slack();
    if (v_.samples == 1 || m < v_.worst_margin || (std::isnan(m) && !std::isnan(v_.worst_margin))) {
      v_.worst_margin = m;
      v_.worst = w;
    }
    if (!v_.witness && w.violated()) v_.witness = w;
  }

  AxiomVerdict finish() && {
    v_.verdict = v_.witness ? Verdict::Violated : Verdict::HoldsOnSamples;
    return std::move(v_);
  }

 private:
  AxiomVerdict v_;
};

std::vector<double> strided(const std::vector<double>& v, std::size_t max_count) {
  if (v.size() <= max_count) return v;
  std::vector<double> out;
  const std::size_t stride = (v.size() + max_count - 2) / (max_count - 1);
  for (std::size_t i = 0; i < v.size(); i += stride) out.push_back(v[i]);
  if (out.back() != v.back()) out.push_back(v.back());
  return out;
}

}  // namespace

bool Witness::violated() const {
  switch (relation) {
    case Relation::Exact:
      return !(lhs <= rhs);
    case Relation::LessEqual:
      return !leq_tol(lhs, rhs);
    case Relation::Less:
      return !less_strict(lhs, rhs);
  }
  return true;
}

bool AxiomReport::all_hold() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const AxiomVerdict& v) { return v.holds(); });
}

const AxiomVerdict& AxiomReport::at(std::string_view axiom) const {
  for (const auto& v : verdicts)
    if (v.axiom == axiom) return v;
  throw InvalidArgument("axiom '" + std::string(axiom) + "' not in " + subject + " report");
}

std::string_view to_string(Verdict v) {
  return v == Verdict::HoldsOnSamples ? "holds-on-samples" : "violated";
}

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Exact:
      return "exact";
    case Relation::LessEqual:
      return "leq";
    case Relation::Less:
      return "less";
  }
  return "leq";
}

std::vector<double> axis_samples(const SamplePlan& plan) {
  plan.validate();
  auto out = grid_values(0.0, plan.upper, plan.step);
  const auto extra = random_values(plan, 0.0, plan.upper, plan.random_count, kAxisStream);
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

AxiomReport check_b_action(const BAction& action, const SamplePlan& plan) {
  const auto samples = axis_samples(plan);
  const auto grid = grid_values(0.0, plan.upper, plan.step);
  auto theta = [&](double s, double t) { return theta_eval(action, s, t); };

  AxiomReport report{"b-action", action.name, {}, {}};

  // B1: theta(0,0) = 0 and theta(s,t) = theta(t,s).
  {
    Tally b1("B1");
    b1.observe({{0.0, 0.0}, {}, std::abs(theta(0.0, 0.0)), 0.0, Relation::Exact});
    for (double s : samples)
      for (double t : samples)
        b1.observe({{s, t}, {}, std::abs(theta(s, t) - theta(t, s)), kSymmetryTolerance,
                    Relation::Exact});
    report.verdicts.push_back(std::move(b1).finish());
  }

  // B2: (s < u and t <= v) or (s <= u and t < v)  =>  theta(s,t) < theta(u,v).
  {
    Tally b2("B2");
    auto quad = [&](double s, double t, double u, double v) {
      b2.observe({{s, t, u, v}, {}, theta(s, t), theta(u, v), Relation::Less});
    };
    const auto base = strided(grid, 21);
    const double offsets[] = {0.0, plan.step, 10.0 * plan.step};
    for (double s : base)
      for (double t : base)
        for (double du : offsets)
          for (double dv : offsets)
            if (du > 0.0 || dv > 0.0) quad(s, t, s + du, t + dv);
    SampleStream rng(plan.seed, kQuadStream);
    for (std::size_t i = 0; i < plan.random_count; ++i) {
      const double a = rng.uniform(0.0, plan.upper);
      const double b = rng.uniform(0.0, plan.upper);
      const double c = rng.uniform(0.0, plan.upper);
      const double d = rng.uniform(0.0, plan.upper);
      const double s = std::min(a, b), u = std::max(a, b);
      const double t = std::min(c, d), v = std::max(c, d);
      if (s < u || t < v) quad(s, t, u, v);
    }
    report.verdicts.push_back(std::move(b2).finish());
  }

  // B3: for r in the sampled image and s in [0,r], some t in [0,r] has theta(t,s) = r.
  {
    Tally b3("B3");
    std::vector<double> image;
    const auto base = strided(grid, 11);
    for (double a : base)
      for (double b : base) image.push_back(theta(a, b));
    const auto extra = random_values(plan, 0.0, plan.upper,
                                     std::min<std::size_t>(plan.random_count, 40), kImageStream);
    for (std::size_t i = 0; i + 1 < extra.size(); i += 2)
      image.push_back(theta(extra[i], extra[i + 1]));

    for (double r : image) {
      if (!(r >= 0.0) || !std::isfinite(r)) {
        b3.observe({{r, 0.0, 0.0}, {}, std::abs(r), 0.0, Relation::LessEqual});
        continue;
      }
      for (double s : linspace(0.0, r, 11)) {
        const auto root = find_first_root([&](double t) { return theta(t, s) - r; }, 0.0, r,
                                          100, kTolerance);
        b3.observe({{r, s, root.t}, {}, root.residual, 0.0, Relation::LessEqual});
      }
    }
    report.verdicts.push_back(std::move(b3).finish());
  }

  // B4: theta(s,0) <= s for s > 0.
  {
    Tally b4("B4");
    for (double s : samples)
      if (s > 0.0) b4.observe({{s}, {}, theta(s, 0.0), s, Relation::LessEqual});
    report.verdicts.push_back(std::move(b4).finish());
  }
  return report;
}

namespace {

AxiomReport check_finite_metric(const ThetaMetricSpace& space) {
  const auto& dom = space.domain();
  const std::size_t n = dom.size();
  const auto labels = dom.labels();
  auto d = [&](std::size_t i, std::size_t j) {
    return space.distance(Point::label(i), Point::label(j));
  };

  Tally t1("theta1"), t2("theta2"), t3("theta3");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double dij = d(i, j);
      if (i == j)
        t1.observe({{}, {labels[i], labels[j]}, dij, 0.0, Relation::Exact});
      else
        t1.observe({{}, {labels[i], labels[j]}, 0.0, dij, Relation::Less});
      t2.observe({{}, {labels[i], labels[j]}, std::abs(dij - d(j, i)), 0.0, Relation::Exact});
    }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        t3.observe({{},
                    {labels[x], labels[y], labels[z]},
                    d(x, y),
                    theta_eval(space.action(), d(x, z), d(z, y)),
                    Relation::LessEqual});
  return {"theta-metric",
          space.metric_name() + "/" + space.action().name,
          {std::move(t1).finish(), std::move(t2).finish(), std::move(t3).finish()},
          {}};
}

AxiomReport check_interval_metric(const ThetaMetricSpace& space, const SamplePlan& plan) {
  plan.validate();
  const auto& dom = space.domain();
  const auto grid = grid_values(dom.lower(), dom.upper(), plan.step);
  auto d = [&](double x, double y) { return space.distance(Point::coord(x), Point::coord(y)); };

  Tally t1("theta1"), t2("theta2"), t3("theta3");
  auto pair = [&](double x, double y) {
    const double dxy = d(x, y);
    if (x == y)
      t1.observe({{x, y}, {}, dxy, 0.0, Relation::Exact});
    else
      t1.observe({{x, y}, {}, 0.0, dxy, Relation::Less});
    t2.observe({{x, y}, {}, std::abs(dxy - d(y, x)), 0.0, Relation::Exact});
  };
  auto triple = [&](double x, double y, double z) {
    t3.observe({{x, y, z}, {}, d(x, y), theta_eval(space.action(), d(x, z), d(z, y)),
                Relation::LessEqual});
  };

  for (double x : grid)
    for (double y : grid) pair(x, y);
  SampleStream pairs(plan.seed, kPairStream);
  for (std::size_t i = 0; i < plan.random_count; ++i) {
    const double x = pairs.uniform(dom.lower(), dom.upper());
    pair(x, x);
    pair(x, pairs.uniform(dom.lower(), dom.upper()));
  }

  const auto base = strided(grid, 51);
  for (double x : base)
    for (double y : base)
      for (double z : base) triple(x, y, z);
  SampleStream triples(plan.seed, kTripleStream);
  for (std::size_t i = 0; i < plan.random_count; ++i) {
    const double x = triples.uniform(dom.lower(), dom.upper());
    const double y = triples.uniform(dom.lower(), dom.upper());
    const double z = triples.uniform(dom.lower(), dom.upper());
    triple(x, y, z);
  }
  return {"theta-metric",
          space.metric_name() + "/" + space.action().name,
          {std::move(t1).finish(), std::move(t2).finish(), std::move(t3).finish()},
          {}};
}

}  // namespace

AxiomReport check_theta_metric(const ThetaMetricSpace& space, const SamplePlan& plan) {
  if (space.domain().is_finite()) return check_finite_metric(space);
  return check_interval_metric(space, plan);
}

std::pair<double, std::size_t> zeta_tail_max(const SimulationFunction& zeta, double limit,
                                            double alpha, double beta, std::size_t from,
                                            std::size_t to) {
  double best = -std::numeric_limits<double>::infinity();
  std::size_t at = from;
  for (std::size_t n = from; n <= to; ++n) {
    const double dn = static_cast<double>(n);
    const double t = limit * (1.0 + alpha / dn);
    const double s = limit * (1.0 + beta / dn);
    const double z = zeta.eval(t, s);
    if (z > best || std::isnan(z)) {
      best = z;
      at = n;
      if (std::isnan(z)) break;
    }
  }
  return {best, at};
}

AxiomReport check_simulation(const SimulationFunction& zeta, const SamplePlan& plan,
                             const SequencePlan& sequences) {
  sequences.validate();
  const auto samples = axis_samples(plan);
  AxiomReport report{"simulation", zeta.aux.empty() ? zeta.name : zeta.name + ":" + zeta.aux,
                     {}, {}};

  Tally z1("zeta1");
  z1.observe({{0.0, 0.0}, {}, std::abs(zeta.eval(0.0, 0.0)), 0.0, Relation::Exact});
  report.verdicts.push_back(std::move(z1).finish());

  Tally z2("zeta2");
  for (double t : samples) {
    if (!(t > 0.0)) continue;
    for (double s : samples)
      if (s > 0.0) z2.observe({{t, s}, {}, zeta.eval(t, s), s - t, Relation::Less});
  }
  report.verdicts.push_back(std::move(z2).finish());

  Tally z3("zeta3");
  const std::size_t first = sequences.tail_start;
  const std::size_t last = sequences.tail_start + sequences.tail_length;
  for (double limit : sequences.limits)
    for (double alpha : sequences.coefficients)
      for (double beta : sequences.coefficients) {
        const auto [tail_max, at] = zeta_tail_max(zeta, limit, alpha, beta, first, last);
        z3.observe({{limit, alpha, beta, static_cast<double>(at)},
                    {},
                    tail_max,
                    0.0,
                    Relation::Less});
        // sup over n >= N estimated on [N, last]; must not grow with N
        double previous = tail_max;
        for (std::size_t k = 1; k <= 4; ++k) {
          const std::size_t from = first + k * sequences.tail_length / 4;
          const double sup = zeta_tail_max(zeta, limit, alpha, beta, from, last).first;
          if (sup > previous) {
            report.flags.push_back("zeta3 tail sup grows with N for L=" + format_real(limit) +
                                   " alpha=" + format_real(alpha) + " beta=" +
                                   format_real(beta));
            break;
          }
          previous = sup;
        }
      }
  report.verdicts.push_back(std::move(z3).finish());
  return report;
}

}  // namespace thetafix
