#include "drillvol/warped_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "drillvol/errors.hpp"
#include "drillvol/format.hpp"
#include "drillvol/quadrature.hpp"

namespace drillvol {

namespace {

std::string radius_text(double r) {
  std::ostringstream os;
  os.precision(17);
  os << r;
  return os.str();
}

void require_in_domain(const WarpingPair& w, double r) {
  if (!w.domain().contains(r)) {
    throw DomainError("radius " + radius_text(r) + " outside the domain of " +
                      w.name() + " [" + radius_text(w.domain().lo) + ", " +
                      radius_text(w.domain().hi) + "]");
  }
}

}  // namespace

WarpingPair::WarpingPair(std::string name, Evaluator eval, RadialDomain domain,
                         bool smooth_axis,
                         std::optional<SectionalCurvatures> axis_limit)
    : name_(std::move(name)),
      eval_(std::move(eval)),
      domain_(domain),
      smooth_axis_(smooth_axis),
      axis_limit_(axis_limit) {
  if (!(domain_.lo < domain_.hi)) {
    throw ParameterError("warping pair " + name_ + " has an empty domain");
  }
}

WarpingSample WarpingPair::at(double r) const {
  require_in_domain(*this, r);
  return eval_(r);
}

TubeParams TubeParams::make(double R, double l, double phi) {
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw ParameterError("tube radius must be positive, got " + radius_text(R));
  }
  if (!(l > 0.0) || !std::isfinite(l)) {
    throw ParameterError("core length must be positive, got " + radius_text(l));
  }
  if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) {
    throw ParameterError("holonomy angle must lie in [0, 2pi), got " +
                         radius_text(phi));
  }
  return TubeParams{R, l, phi};
}

SectionalCurvatures sectional_curvatures(const WarpingPair& w, double r) {
  const WarpingSample s = w.at(r);
  if (s.f.value == 0.0 || s.g.value == 0.0) {
    if (w.smooth_axis() && r == 0.0 && w.axis_limit()) return *w.axis_limit();
    throw SingularAxisError("warping function vanishes at r = " +
                            radius_text(r) + " for " + w.name());
  }
  SectionalCurvatures k;
  k.K_thetalambda = -(s.f.d1 * s.g.d1) / (s.f.value * s.g.value);
  k.K_rtheta = -s.f.d2 / s.f.value;
  k.K_rlambda = -s.g.d2 / s.g.value;
  return k;
}

RicciDiagonal ricci_diagonal(const WarpingPair& w, double r) {
  const SectionalCurvatures k = sectional_curvatures(w, r);
  return {k.K_rtheta + k.K_rlambda, k.K_rtheta + k.K_thetalambda,
          k.K_rlambda + k.K_thetalambda};
}

double ricci_deficit(const WarpingPair& w, double r) {
  const RicciDiagonal ric = ricci_diagonal(w, r);
  return std::max({-ric.ric_1, -ric.ric_2, -ric.ric_3});
}

double ricci_lower_bound_constant(const WarpingPair& w, double r_lo,
                                  double r_hi, int grid_n) {
  if (!(r_lo < r_hi)) {
    throw DomainError("empty interval [" + radius_text(r_lo) + ", " +
                      radius_text(r_hi) + "]");
  }
  if (grid_n < 2) throw ParameterError("grid needs at least 2 points");
  require_in_domain(w, r_lo);
  require_in_domain(w, r_hi);
  double worst = -std::numeric_limits<double>::infinity();
  const double step = (r_hi - r_lo) / (grid_n - 1);
  for (int i = 0; i < grid_n; ++i) {
    const double r = (i + 1 == grid_n) ? r_hi : r_lo + i * step;
    worst = std::max(worst, ricci_deficit(w, r));
  }
  return 0.5 * worst;
}

WarpingPair hyperbolic_tube() {
  auto eval = [](double r) {
    const double sh = std::sinh(r);
    const double ch = std::cosh(r);
    return WarpingSample{{sh, ch, sh}, {ch, sh, ch}};
  };
  return WarpingPair("hyperbolic_tube", eval,
                     RadialDomain{0.0, std::numeric_limits<double>::infinity()},
                     true, SectionalCurvatures{-1.0, -1.0, -1.0});
}

WarpingPair kerckhoff_extension(double R) {
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw ParameterError("extension radius must be positive, got " +
                         radius_text(R));
  }
  const double sh = std::sinh(R);
  const double ch = std::cosh(R);
  const double th = std::tanh(R);
  const double cth = 1.0 / th;
  auto eval = [=](double r) {
    const double f = sh * std::exp(cth * (r - R));
    const double g = ch * std::exp(th * (r - R));
    return WarpingSample{{f, cth * f, cth * cth * f}, {g, th * g, th * th * g}};
  };
  return WarpingPair("kerckhoff_extension(R=" + format_number(R) + ")", eval,
                     RadialDomain{-std::numeric_limits<double>::infinity(), R});
}

double tube_volume(const TubeParams& p) {
  const double sh = std::sinh(p.R);
  return std::numbers::pi * p.l * sh * sh;
}

double extended_tube_volume(const TubeParams& p) {
  const double th = std::tanh(p.R);
  return 2.0 * std::numbers::pi * p.l * std::sinh(p.R) * std::cosh(p.R) /
         (1.0 / th + th);
}

VolumeQuadrature warped_volume_quadrature(const WarpingPair& w, double r_lo,
                                          double r_hi, double l,
                                          double depth) {
  if (!(l >= 0.0)) throw ParameterError("length must be non-negative");
  if (!std::isfinite(r_hi)) throw DomainError("upper radius must be finite");
  VolumeQuadrature out;
  const bool truncated = std::isinf(r_lo) && r_lo < 0.0;
  if (truncated) {
    if (!(depth > 0.0)) throw ParameterError("truncation depth must be positive");
    r_lo = r_hi - depth;
  }
  out.r_lo_used = r_lo;
  if (r_lo == r_hi) return out;
  if (r_lo > r_hi) {
    throw DomainError("integration interval is reversed: [" +
                      radius_text(r_lo) + ", " + radius_text(r_hi) + "]");
  }
  require_in_domain(w, r_lo);
  require_in_domain(w, r_hi);

  auto density = [&w](double r) {
    const WarpingSample s = w.eval_unchecked(r);
    return s.f.value * s.g.value;
  };
  const QuadratureResult q = integrate_adaptive(density, r_lo, r_hi, 1e-12);
  const double scale = 2.0 * std::numbers::pi * l;
  out.volume = scale * q.value;
  out.abs_error = scale * q.abs_error;
  out.evaluations = q.evaluations;

  if (truncated) {
    const WarpingSample s = w.eval_unchecked(r_lo);
    const double fg = s.f.value * s.g.value;
    const double rate = s.f.d1 / s.f.value + s.g.d1 / s.g.value;
    out.truncation_bound = rate > 0.0
                               ? scale * fg / rate
                               : std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace drillvol
