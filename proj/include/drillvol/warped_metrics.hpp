#pragma once

// Closed-form geometry of rotationally symmetric tube metrics
//
//   ds^2 = dr^2 + f(r)^2 dtheta^2 + g(r)^2 dlambda^2
//
// in coordinates (r, theta, lambda): sectional curvatures of the coordinate
// planes, the (diagonal) Ricci tensor, the hyperbolic tube and its
// exponential continuation past the core, and volume integrals.

#include <functional>
#include <limits>
#include <optional>
#include <string>

namespace drillvol {

/// Value and first two derivatives of a scalar function at one point.
struct Jet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Both warping functions at one radius.
struct WarpingSample {
  Jet f;
  Jet g;
};

/// Closed interval of radii; `lo` may be -infinity.
struct RadialDomain {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double r) const { return r >= lo && r <= hi; }
};

struct SectionalCurvatures {
  double K_rtheta = 0.0;
  double K_rlambda = 0.0;
  double K_thetalambda = 0.0;
};

/// Ricci eigenvalues in the orthonormal frame (d/dr, f^-1 d/dtheta,
/// g^-1 d/dlambda).
struct RicciDiagonal {
  double ric_1 = 0.0;
  double ric_2 = 0.0;
  double ric_3 = 0.0;
};

/// A pair (f, g) with analytic first and second derivatives.
///
/// Derivatives always come from the constructor's evaluator; nothing in
/// the library differentiates values numerically except the independent
/// curvature oracle. Instances are immutable and cheap to copy.
class WarpingPair {
 public:
  using Evaluator = std::function<WarpingSample(double)>;

  WarpingPair(std::string name, Evaluator eval, RadialDomain domain,
              bool smooth_axis = false,
              std::optional<SectionalCurvatures> axis_limit = std::nullopt);

  /// Throws DomainError outside the domain.
  WarpingSample at(double r) const;
  /// Evaluates without the domain check (for extension past the domain).
  WarpingSample eval_unchecked(double r) const { return eval_(r); }

  const std::string& name() const { return name_; }
  const RadialDomain& domain() const { return domain_; }
  /// r = 0 is a smooth rotation axis (f(0) = 0, f'(0) = 1).
  bool smooth_axis() const { return smooth_axis_; }
  /// Analytic curvature limit at the axis; present only for built-in pairs.
  const std::optional<SectionalCurvatures>& axis_limit() const {
    return axis_limit_;
  }

 private:
  std::string name_;
  Evaluator eval_;
  RadialDomain domain_;
  bool smooth_axis_;
  std::optional<SectionalCurvatures> axis_limit_;
};

/// Core geodesic tube parameters. phi is carried for completeness; no
/// computed quantity depends on it.
struct TubeParams {
  double R;
  double l;
  double phi = 0.0;

  /// Validating constructor: R > 0, l > 0, phi in [0, 2 pi).
  static TubeParams make(double R, double l, double phi = 0.0);
};

/// K_thetalambda = -f'g'/(fg), K_rtheta = -f''/f, K_rlambda = -g''/g.
SectionalCurvatures sectional_curvatures(const WarpingPair& w, double r);

/// Pairwise sums (K_rtheta + K_rlambda, K_rtheta + K_thetalambda,
/// K_rlambda + K_thetalambda).
RicciDiagonal ricci_diagonal(const WarpingPair& w, double r);

/// max(-ric_1, -ric_2, -ric_3) at r: Ric >= -2k holds at r iff this is <= 2k.
double ricci_deficit(const WarpingPair& w, double r);

/// Half the largest Ricci deficit over a uniform grid of grid_n points on
/// [r_lo, r_hi], so that Ric >= -2k at every grid point.
double ricci_lower_bound_constant(const WarpingPair& w, double r_lo,
                                  double r_hi, int grid_n);

/// (sinh r, cosh r) on [0, inf): the constant curvature -1 tube.
WarpingPair hyperbolic_tube();

/// f(r) = sinh R e^{coth R (r - R)}, g(r) = cosh R e^{tanh R (r - R)} on
/// (-inf, R]; C^1-glues to the hyperbolic tube at r = R.
WarpingPair kerckhoff_extension(double R);

/// pi l sinh^2 R: volume of the embedded hyperbolic tube.
double tube_volume(const TubeParams& p);

/// 2 pi l sinh R cosh R / (coth R + tanh R): volume of the continuation
/// region (-inf, R] under the Kerckhoff extension.
double extended_tube_volume(const TubeParams& p);

struct VolumeQuadrature {
  double volume = 0.0;
  double abs_error = 0.0;        // quadrature error estimate
  double truncation_bound = 0.0; // estimated tail beyond the truncation point
  double r_lo_used = 0.0;
  int evaluations = 0;
};

inline constexpr double kDefaultTruncationDepth = 40.0;

/// 2 pi l \int_{r_lo}^{r_hi} f g dr. An infinite r_lo is truncated at
/// r_hi - depth; the tail is estimated from the logarithmic derivative of
/// f g at the cut, which is exact for exponential tails.
VolumeQuadrature warped_volume_quadrature(
    const WarpingPair& w, double r_lo, double r_hi, double l,
    double depth = kDefaultTruncationDepth);

}  // namespace drillvol
