#pragma once

// Finite-difference Riemann tensor of diag(1, F(r), G(r)) in (r, theta,
// lambda). Used only to cross-check the closed-form curvature formulas, so
// it reads metric components and never the analytic derivatives.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "drillvol/warped_metrics.hpp"

namespace drillvol {

/// Diagonal metric whose components depend on r only; g_rr is identically 1.
struct DiagonalMetric {
  std::function<double(double)> g_thetatheta;
  std::function<double(double)> g_lambdalambda;
  RadialDomain domain;
  double h = 1e-4;

  /// Metric components f(r)^2 and g(r)^2 read from the values of w.
  static DiagonalMetric from_warping(const WarpingPair& w, double h = 1e-4);

  std::array<double, 3> diagonal(double r) const {
    return {1.0, g_thetatheta(r), g_lambdalambda(r)};
  }
};

/// Coordinate indices.
enum Axis : int { kR = 0, kTheta = 1, kLambda = 2 };

/// Gamma[k][i][j] = Christoffel symbol Gamma^k_{ij}.
using Christoffel = std::array<std::array<std::array<double, 3>, 3>, 3>;
/// Riemann[a][b][c][d] = R_{abcd} (all indices lowered).
using Riemann = std::array<Christoffel, 3>;

/// Levi-Civita connection from centered differences of the metric.
/// Requires [r - 2h, r + 2h] inside the domain (DomainError otherwise).
Christoffel christoffel_fd(const DiagonalMetric& m, double r);

/// R_{abcd} with R^a_{bcd} = d_c G^a_{db} - d_d G^a_{cb}
///                        + G^a_{ce} G^e_{db} - G^a_{de} G^e_{cb},
/// so that the sectional curvature of span(d_a, d_b) is
/// R_{abab} / (g_aa g_bb).
Riemann riemann_fd(const DiagonalMetric& m, double r);

/// R(e_a, e_b, e_c, e_d) in the orthonormal coordinate frame.
double frame_component(const DiagonalMetric& m, const Riemann& riem, double r,
                       int a, int b, int c, int d);

struct OracleValue {
  double value = 0.0;
  std::optional<std::string> warning;  // set for an ill-conditioned step
};

/// Sectional curvature of the coordinate plane (i, j).
OracleValue sectional_fd(const DiagonalMetric& m, double r, int i, int j);

struct CurvatureSample {
  double r = 0.0;
  std::array<double, 3> closed_form{};  // K_rtheta, K_rlambda, K_thetalambda
  std::array<double, 3> oracle{};
  std::array<double, 3> abs_error{};
  std::array<double, 3> rel_error{};
  bool ok = true;
};

struct CurvatureReport {
  std::string pair_name;
  double tolerance = 0.0;
  double abs_floor = 0.0;
  std::vector<CurvatureSample> samples;
  double max_rel_error = 0.0;
  double max_abs_error = 0.0;
  int worst_component = -1;
  std::vector<std::string> warnings;
  bool pass = false;
};

struct ValidationOptions {
  double tolerance = 1e-5;
  /// Below this magnitude of the closed form, compare absolutely.
  double near_zero = 1e-3;
  double abs_floor = 1e-8;
  double h = 1e-4;
  /// Combine the h and h/2 estimates as (4 K(h/2) - K(h)) / 3, cancelling
  /// the O(h^2) term. Needed where the metric has large fourth derivatives,
  /// e.g. inside a smoothing collar.
  bool richardson = true;
  std::uint64_t seed = 20061017;
  /// Sampling window; derived from the pair's domain when absent.
  std::optional<RadialDomain> window;
};

/// Sampling window used when none is supplied: a 5-unit span anchored at
/// the finite end of the domain, kept 4h clear of every finite endpoint.
RadialDomain default_sampling_window(const WarpingPair& w, double h);

/// Compares the three closed-form curvatures with the oracle at uniformly
/// random radii. Failures are reported, never thrown.
CurvatureReport validate_lemma_curvature(const WarpingPair& w, int samples,
                                         const ValidationOptions& opts = {});

}  // namespace drillvol
