#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "thetafix/spaces.hpp"

namespace thetafix {

/// zeta(t, s): the auxiliary function that drives the contraction condition.
/// Note the argument order: t is the image distance, s the source distance.
struct SimulationFunction {
  std::string name;
  std::vector<double> params;
  std::string aux;  // sub-catalog member for "eta" / "phi" kinds, else empty
  std::function<double(double t, double s)> eval;
};

enum class AuxKind { Eta, Phi };

/// eta: eta(0) = 0, eta(t) < t for t > 0.  phi: phi(t) = 0 iff t = 0.
struct AuxFunction {
  std::string name;
  AuxKind kind = AuxKind::Eta;
  std::function<double(double)> eval;
};

/// The self-map T. Finite-domain maps keep their image table.
struct SelfMap {
  std::string name;
  std::vector<double> params;
  PointDomain domain;
  std::function<Point(const Point&)> fn;
  /// Discontinuities of interval maps; always included in pair samples.
  std::vector<double> breakpoints;
  /// image_table[i] = index of T(label i); empty for interval maps.
  std::vector<std::size_t> image_table;

  /// Throws DomainMismatch if x is outside the domain.
  Point apply(const Point& x) const;
};

/// "half" -> t/2, "ratio" -> t/(1+t).
AuxFunction make_eta(std::string_view name);
/// "half" -> t/2, "square-ratio" -> t^2/(1+t).
AuxFunction make_phi(std::string_view name);

/// Kinds: "linear" [lambda] (lambda*s - t, 0 <= lambda < 1), "rational" []
/// (s/(s+1) - t), "eta" [] (eta(s) - t), "phi" [] (s - phi(s) - t).
/// `aux` names the eta/phi member and is required for those kinds only.
SimulationFunction make_simulation(std::string_view kind, std::span<const double> params,
                                   std::string_view aux = {});

/// Kinds: "sum", "product-sum", "euclid", "rational", "sqrt-sum".
BAction make_b_action(std::string_view kind, std::span<const double> params = {});

/// Kinds and parameters:
///   affine       [a, b]          x/a + b, a > 1, b + 1/a < 1, image inside the domain
///   reciprocal   []              1/(1+x)
///   two-piece    [c1, c2, split] c1 on [lower, split), c2 on [split, upper]
///   constant     [c]
///   identity     []
///   finite-table [i0, i1, ...]   label i -> label params[i] (finite domains)
SelfMap make_self_map(std::string_view kind, std::span<const double> params,
                      const PointDomain& domain);

std::span<const std::string_view> simulation_kinds();
std::span<const std::string_view> b_action_kinds();
std::span<const std::string_view> self_map_kinds();
std::span<const std::string_view> eta_kinds();
std::span<const std::string_view> phi_kinds();

}  // namespace thetafix
