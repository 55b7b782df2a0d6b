#pragma once

// C-infinity interpolation between two functions that agree to first order
// at a junction radius R, with the second derivative kept between the two
// one-sided second derivatives in the limit. Applied to the Kerckhoff
// extension / hyperbolic tube junction it yields the smoothed, negatively
// curved tube metrics used to pass the Ricci bound to a smooth metric.
//
// Construction, for eps > 0 and phi_s(r) = beta((r - R)/s + 1):
//   eta'   = b''(1 - phi_eps) + c'' phi_eps
//   eta    = b'(R - eps) + \int_{R-eps}^r eta'
//   iota   = |c'(R) - eta(R)|^{1/2}
//   kappa' = eta + (c'(R) - eta(R)) phi_iota
//   kappa  = b(R - iota) + \int_{R-iota}^r kappa'
//   omega  = |c(R) - kappa(R)|^{1/3}
//   a      = kappa + (c(R) - kappa(R)) phi_omega
//   delta  = max{eps, iota, omega}

#include <functional>
#include <memory>

#include "drillvol/quadrature.hpp"
#include "drillvol/warped_metrics.hpp"

namespace drillvol {

/// e^{-1/r^2} e^{-1/(1-r)^2} on (0, 1), zero elsewhere.
double bump_alpha(double r);
/// d/dr of bump_alpha.
double bump_alpha_prime(double r);

/// Normalized running integral of alpha: 0 for r <= 0, 1 for r >= 1.
double ramp_beta(double r);
/// beta', beta'' (closed form from alpha).
double ramp_beta_prime(double r);
double ramp_beta_second(double r);
/// \int_0^r beta: 0 for r <= 0, grows with slope 1 past r = 1.
double ramp_beta_integral(double r);

/// phi_eps(r) = beta((r - R)/eps + 1); identically 0 when eps == 0.
double step_phi(double eps, double R, double r);
/// phi_eps with its first two r-derivatives.
Jet step_phi_jet(double eps, double R, double r);

using Profile = std::function<Jet(double)>;

/// Two smooth functions b (used below R) and c (used above R) on a common
/// interval containing R, with b(R) = c(R) and b'(R) = c'(R).
struct JunctionInput {
  Profile b;
  Profile c;
  double R = 0.0;
  RadialDomain domain;
};

inline constexpr double kJunctionMatchTolerance = 1e-12;
inline constexpr int kStageKnots = 512;

class SmoothedJunction {
 public:
  /// Throws PreconditionError if b, c do not match to first order at R,
  /// ParameterError for eps <= 0, WidthError if R - delta(eps) leaves the
  /// domain.
  SmoothedJunction(JunctionInput input, double eps);

  double eps() const { return eps_; }
  double iota() const { return iota_; }
  double omega() const { return omega_; }
  double delta() const { return delta_; }
  double R() const { return in_.R; }

  /// Lower end of the kappa integral; equals iota unless iota < eps.
  double kappa_start_width() const { return kappa_width_; }
  /// c'(R) - eta(R) and c(R) - kappa(R): the two bump amplitudes.
  double slope_defect() const { return slope_defect_; }
  double value_defect() const { return value_defect_; }

  double eta_prime(double r) const;
  double eta(double r) const;
  double kappa_prime(double r) const;
  double kappa(double r) const;

  /// a_eps with its first and second derivatives.
  Jet operator()(double r) const;

  /// The C^1 function being smoothed: b below R, c from R on.
  Jet unsmoothed(double r) const;

  const JunctionInput& input() const { return in_; }

 private:
  double second_jump_integral(double r) const;  // \int_{R-eps}^r (c''-b'')phi_eps
  double nested_jump_integral(double r) const;  // \int_{R-eps}^r (r-t)(c''-b'')phi_eps

  JunctionInput in_;
  double eps_;
  CumulativeIntegral jump0_;  // \int (c''-b'') phi_eps
  CumulativeIntegral jump1_;  // \int (t - R)(c''-b'') phi_eps
  double slope_defect_ = 0.0;
  double value_defect_ = 0.0;
  double iota_ = 0.0;
  double kappa_width_ = 0.0;
  double omega_ = 0.0;
  double delta_ = 0.0;
};

/// Largest observed (inf, sup) of a_eps'' on [R - delta, R].
struct Envelope {
  double inf = 0.0;
  double sup = 0.0;
};
Envelope second_derivative_envelope(const SmoothedJunction& s, int grid_n);

/// How far past R the smoothed pair is defined.
inline constexpr double kSmoothedMargin = 0.5;
inline constexpr int kRicciGrid = 4096;

/// sup of f''/f, g''/g and f'g'/(fg) over a radial window.
struct CurvatureRatioSups {
  double f_ratio = 0.0;
  double g_ratio = 0.0;
  double cross_ratio = 0.0;
};

struct SmoothedWarpingFamily {
  double R = 0.0;
  double eps = 0.0;
  std::shared_ptr<const SmoothedJunction> f_junction;
  std::shared_ptr<const SmoothedJunction> g_junction;
  WarpingPair pair;
  double delta = 0.0;  // larger of the two collar widths
  double k = 0.0;      // Ricci lower bound constant, Ric >= -2k
  CurvatureRatioSups collar_sups;
  CurvatureRatioSups domain_sups;
};

/// Smooths the Kerckhoff extension into the hyperbolic tube at R, for f
/// and g separately. The pair lives on (-inf, R + kSmoothedMargin].
/// Throws WidthError if delta(eps) >= R.
SmoothedWarpingFamily smoothed_metric(double R, double eps,
                                      int grid_n = kRicciGrid);

/// Ricci lower bound constant of a pair over [r_lo, r_hi]: the grid maximum
/// of half the Ricci deficit, refined by golden-section search around every
/// grid-local maximum.
double refined_ricci_constant(const WarpingPair& w, double r_lo, double r_hi,
                              int grid_n);

/// k_eps of the smoothed family, over [R - delta - 1, R + kSmoothedMargin].
double k_eps(double R, double eps, int grid_n = kRicciGrid);

/// (1 + coth^2 R)/2, the eps -> 0 limit of k_eps; equals coth R coth 2R.
double k_limit(double R);

}  // namespace drillvol
