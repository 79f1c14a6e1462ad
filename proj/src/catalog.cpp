#include "thetafix/catalog.hpp"

#include <array>
#include <cmath>

#include "thetafix/errors.hpp"

namespace thetafix {

namespace {

constexpr std::array<std::string_view, 4> kSimulationKinds{"linear", "rational", "eta",
                                                           "phi"};
constexpr std::array<std::string_view, 5> kBActionKinds{"sum", "product-sum", "euclid",
                                                        "rational", "sqrt-sum"};
constexpr std::array<std::string_view, 6> kSelfMapKinds{
    "affine", "reciprocal", "two-piece", "constant", "identity", "finite-table"};
constexpr std::array<std::string_view, 2> kEtaKinds{"half", "ratio"};
constexpr std::array<std::string_view, 2> kPhiKinds{"half", "square-ratio"};

void expect_arity(std::string_view what, std::string_view kind,
                  std::span<const double> params, std::size_t n) {
  if (params.size() != n)
    throw ParameterError(std::string(what) + " '" + std::string(kind) + "' takes " +
                         std::to_string(n) + " parameter(s), got " +
                         std::to_string(params.size()));
  for (double p : params)
    if (!std::isfinite(p))
      throw ParameterError(std::string(what) + " '" + std::string(kind) +
                           "' has a non-finite parameter");
}

std::vector<double> to_vec(std::span<const double> p) { return {p.begin(), p.end()}; }

}  // namespace

std::span<const std::string_view> simulation_kinds() { return kSimulationKinds; }
std::span<const std::string_view> b_action_kinds() { return kBActionKinds; }
std::span<const std::string_view> self_map_kinds() { return kSelfMapKinds; }
std::span<const std::string_view> eta_kinds() { return kEtaKinds; }
std::span<const std::string_view> phi_kinds() { return kPhiKinds; }

Point SelfMap::apply(const Point& x) const {
  domain.require(x);
  return fn(x);
}

AuxFunction make_eta(std::string_view name) {
  if (name == "half") return {"half", AuxKind::Eta, [](double t) { return t / 2.0; }};
  if (name == "ratio")
    return {"ratio", AuxKind::Eta, [](double t) { return t / (1.0 + t); }};
  throw UnknownKind("unknown eta function '" + std::string(name) + "'");
}

AuxFunction make_phi(std::string_view name) {
  if (name == "half") return {"half", AuxKind::Phi, [](double t) { return t / 2.0; }};
  if (name == "square-ratio")
    return {"square-ratio", AuxKind::Phi, [](double t) { return t * t / (1.0 + t); }};
  throw UnknownKind("unknown phi function '" + std::string(name) + "'");
}

SimulationFunction make_simulation(std::string_view kind, std::span<const double> params,
                                   std::string_view aux) {
  const std::string k(kind);
  if (kind != "eta" && kind != "phi" && !aux.empty())
    throw ParameterError("simulation function '" + k + "' takes no aux function");

  if (kind == "linear") {
    expect_arity("simulation function", kind, params, 1);
    const double lambda = params[0];
    if (!(lambda >= 0.0 && lambda < 1.0))
      throw ParameterError("linear simulation function needs 0 <= lambda < 1, got " +
                           format_real(lambda));
    return {k, to_vec(params), "",
            [lambda](double t, double s) { return lambda * s - t; }};
  }
  if (kind == "rational") {
    expect_arity("simulation function", kind, params, 0);
    return {k, {}, "", [](double t, double s) { return s / (s + 1.0) - t; }};
  }
  if (kind == "eta") {
    expect_arity("simulation function", kind, params, 0);
    if (aux.empty()) throw ParameterError("simulation function 'eta' needs an aux function");
    auto eta = make_eta(aux).eval;
    return {k, {}, std::string(aux),
            [eta](double t, double s) { return eta(s) - t; }};
  }
  if (kind == "phi") {
    expect_arity("simulation function", kind, params, 0);
    if (aux.empty()) throw ParameterError("simulation function 'phi' needs an aux function");
    auto phi = make_phi(aux).eval;
    return {k, {}, std::string(aux),
            [phi](double t, double s) { return s - phi(s) - t; }};
  }
  throw UnknownKind("unknown simulation function kind '" + k + "'");
}

BAction make_b_action(std::string_view kind, std::span<const double> params) {
  const std::string k(kind);
  expect_arity("B-action", kind, params, 0);
  if (kind == "sum") return {k, {}, [](double s, double t) { return s + t; }};
  if (kind == "product-sum")
    return {k, {}, [](double s, double t) { return s + t + s * t; }};
  if (kind == "euclid")
    return {k, {}, [](double s, double t) { return std::sqrt(s * s + t * t); }};
  if (kind == "rational")
    return {k, {}, [](double s, double t) { return t * s / (1.0 + t * s); }};
  if (kind == "sqrt-sum")
    return {k, {}, [](double s, double t) { return t + s + std::sqrt(t * s); }};
  throw UnknownKind("unknown B-action kind '" + k + "'");
}

namespace {

void require_interval(std::string_view kind, const PointDomain& domain) {
  if (domain.is_finite())
    throw ParameterError("self-map '" + std::string(kind) + "' needs an interval domain");
}

void require_inside(std::string_view kind, const PointDomain& domain, double lo,
                    double hi) {
  if (lo < domain.lower() || hi > domain.upper())
    throw ParameterError("self-map '" + std::string(kind) + "' has image [" +
                         format_real(lo) + ", " + format_real(hi) +
                         "] outside its domain [" + format_real(domain.lower()) + ", " +
                         format_real(domain.upper()) + "]");
}

}  // namespace

SelfMap make_self_map(std::string_view kind, std::span<const double> params,
                      const PointDomain& domain) {
  const std::string k(kind);
  SelfMap map{k, to_vec(params), domain, {}, {}, {}};

  if (kind == "identity") {
    expect_arity("self-map", kind, params, 0);
    map.fn = [](const Point& x) { return x; };
    return map;
  }
  if (kind == "finite-table") {
    if (!domain.is_finite())
      throw ParameterError("self-map 'finite-table' needs a finite domain");
    if (params.size() != domain.size())
      throw ParameterError("finite-table needs one image per label (" +
                           std::to_string(domain.size()) + "), got " +
                           std::to_string(params.size()));
    for (double p : params) {
      if (!(p >= 0.0) || p != std::floor(p) || p >= static_cast<double>(domain.size()))
        throw ParameterError("finite-table image " + format_real(p) +
                             " is not a label index of the domain");
      map.image_table.push_back(static_cast<std::size_t>(p));
    }
    map.fn = [table = map.image_table](const Point& x) {
      return Point::label(table[x.index()]);
    };
    return map;
  }

  require_interval(kind, domain);
  if (kind == "affine") {
    expect_arity("self-map", kind, params, 2);
    const double a = params[0];
    const double b = params[1];
    if (!(a > 1.0)) throw ParameterError("affine map needs a > 1, got " + format_real(a));
    if (!(b + 1.0 / a < 1.0))
      throw ParameterError("affine map needs b + 1/a < 1, got " + format_real(b + 1.0 / a));
    require_inside(kind, domain, domain.lower() / a + b, domain.upper() / a + b);
    map.fn = [a, b](const Point& x) { return Point::coord(x.coordinate() / a + b); };
    return map;
  }
  if (kind == "reciprocal") {
    expect_arity("self-map", kind, params, 0);
    if (!(domain.lower() > -1.0))
      throw ParameterError("reciprocal map needs lower bound > -1");
    require_inside(kind, domain, 1.0 / (1.0 + domain.upper()), 1.0 / (1.0 + domain.lower()));
    map.fn = [](const Point& x) { return Point::coord(1.0 / (1.0 + x.coordinate())); };
    return map;
  }
  if (kind == "two-piece") {
    expect_arity("self-map", kind, params, 3);
    const double c1 = params[0];
    const double c2 = params[1];
    const double split = params[2];
    if (!(split > domain.lower() && split <= domain.upper()))
      throw ParameterError("two-piece split " + format_real(split) +
                           " must lie in (lower, upper]");
    require_inside(kind, domain, std::min(c1, c2), std::max(c1, c2));
    map.breakpoints.push_back(split);
    map.fn = [c1, c2, split](const Point& x) {
      return Point::coord(x.coordinate() < split ? c1 : c2);
    };
    return map;
  }
  if (kind == "constant") {
    expect_arity("self-map", kind, params, 1);
    const double c = params[0];
    require_inside(kind, domain, c, c);
    map.fn = [c](const Point&) { return Point::coord(c); };
    return map;
  }
  throw UnknownKind("unknown self-map kind '" + k + "'");
}

}  // namespace thetafix
