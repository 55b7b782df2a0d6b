#include "drillvol/curvature_oracle.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "drillvol/errors.hpp"

namespace drillvol {

namespace {

constexpr int kDim = 3;

void require_margin(const DiagonalMetric& m, double r) {
  const double margin = 2.0 * m.h;
  if (!(m.h > 0.0)) throw ParameterError("finite-difference step must be positive");
  if (!(r - margin >= m.domain.lo && r + margin <= m.domain.hi)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "radius " << r << " is within 2h = " << margin
        << " of the metric's domain boundary";
    throw DomainError(msg.str());
  }
}

Christoffel christoffel_unchecked(const DiagonalMetric& m, double r) {
  const std::array<double, 3> g = m.diagonal(r);
  const std::array<double, 3> gp = m.diagonal(r + m.h);
  const std::array<double, 3> gm = m.diagonal(r - m.h);
  // Only d/dr of the metric is non-zero.
  std::array<double, 3> dg{};
  for (int a = 0; a < kDim; ++a) dg[a] = (gp[a] - gm[a]) / (2.0 * m.h);

  // d_i g_{kj} for a diagonal metric depending on r alone.
  auto dmetric = [&dg](int i, int k, int j) {
    return (i == kR && k == j) ? dg[k] : 0.0;
  };

  Christoffel gamma{};
  for (int k = 0; k < kDim; ++k) {
    for (int i = 0; i < kDim; ++i) {
      for (int j = 0; j < kDim; ++j) {
        gamma[k][i][j] = 0.5 / g[k] *
                         (dmetric(i, k, j) + dmetric(j, k, i) - dmetric(k, i, j));
      }
    }
  }
  return gamma;
}

std::optional<std::string> step_warning(double h) {
  if (h >= 1e-6 && h <= 1e-2) return std::nullopt;
  std::ostringstream msg;
  msg << "finite-difference step h = " << h
      << " is outside [1e-6, 1e-2]; roundoff or truncation may dominate";
  return msg.str();
}

}  // namespace

DiagonalMetric DiagonalMetric::from_warping(const WarpingPair& w, double h) {
  DiagonalMetric m;
  m.g_thetatheta = [w](double r) {
    const double f = w.eval_unchecked(r).f.value;
    return f * f;
  };
  m.g_lambdalambda = [w](double r) {
    const double g = w.eval_unchecked(r).g.value;
    return g * g;
  };
  m.domain = w.domain();
  m.h = h;
  return m;
}

Christoffel christoffel_fd(const DiagonalMetric& m, double r) {
  require_margin(m, r);
  return christoffel_unchecked(m, r);
}

Riemann riemann_fd(const DiagonalMetric& m, double r) {
  require_margin(m, r);
  const Christoffel gamma = christoffel_unchecked(m, r);
  const Christoffel plus = christoffel_unchecked(m, r + m.h);
  const Christoffel minus = christoffel_unchecked(m, r - m.h);
  const std::array<double, 3> g = m.diagonal(r);

  // d_c Gamma^a_{db}; only c = r contributes.
  auto dgamma = [&](int c, int a, int d, int b) {
    if (c != kR) return 0.0;
    return (plus[a][d][b] - minus[a][d][b]) / (2.0 * m.h);
  };

  Riemann riem{};
  for (int a = 0; a < kDim; ++a) {
    for (int b = 0; b < kDim; ++b) {
      for (int c = 0; c < kDim; ++c) {
        for (int d = 0; d < kDim; ++d) {
          double up = dgamma(c, a, d, b) - dgamma(d, a, c, b);
          for (int e = 0; e < kDim; ++e) {
            up += gamma[a][c][e] * gamma[e][d][b] - gamma[a][d][e] * gamma[e][c][b];
          }
          riem[a][b][c][d] = g[a] * up;
        }
      }
    }
  }
  return riem;
}

double frame_component(const DiagonalMetric& m, const Riemann& riem, double r,
                       int a, int b, int c, int d) {
  const std::array<double, 3> g = m.diagonal(r);
  return riem[a][b][c][d] / std::sqrt(g[a] * g[b] * g[c] * g[d]);
}

OracleValue sectional_fd(const DiagonalMetric& m, double r, int i, int j) {
  if (i < 0 || j < 0 || i >= kDim || j >= kDim || i == j) {
    throw ParameterError("sectional plane needs two distinct axes in {0,1,2}");
  }
  const Riemann riem = riemann_fd(m, r);
  OracleValue out;
  out.value = frame_component(m, riem, r, i, j, i, j);
  out.warning = step_warning(m.h);
  return out;
}

RadialDomain default_sampling_window(const WarpingPair& w, double h) {
  const RadialDomain& d = w.domain();
  const double guard = 4.0 * h;
  const double span = 5.0;
  const bool lo_finite = std::isfinite(d.lo);
  const bool hi_finite = std::isfinite(d.hi);
  if (lo_finite) {
    // Stay clear of a rotation axis where the metric degenerates.
    const double lo = d.lo + std::max(guard, 0.01);
    const double hi = hi_finite ? std::min(d.hi - guard, lo + span) : lo + span;
    return {lo, hi};
  }
  if (hi_finite) return {d.hi - span, d.hi - guard};
  return {-0.5 * span, 0.5 * span};
}

CurvatureReport validate_lemma_curvature(const WarpingPair& w, int samples,
                                         const ValidationOptions& opts) {
  if (samples < 1) throw ParameterError("validation needs at least one sample");
  CurvatureReport report;
  report.pair_name = w.name();
  report.tolerance = opts.tolerance;
  report.abs_floor = opts.abs_floor;

  const DiagonalMetric metric = DiagonalMetric::from_warping(w, opts.h);
  const DiagonalMetric half = DiagonalMetric::from_warping(w, 0.5 * opts.h);
  const RadialDomain window =
      opts.window.value_or(default_sampling_window(w, opts.h));
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> pick(window.lo, window.hi);

  // Planes in closed-form order: (r, theta), (r, lambda), (theta, lambda).
  constexpr std::array<std::array<int, 2>, 3> kPlanes = {
      {{kR, kTheta}, {kR, kLambda}, {kTheta, kLambda}}};

  if (auto warning = step_warning(opts.h)) report.warnings.push_back(*warning);

  bool all_ok = true;
  for (int n = 0; n < samples; ++n) {
    CurvatureSample s;
    s.r = pick(rng);
    const SectionalCurvatures k = sectional_curvatures(w, s.r);
    s.closed_form = {k.K_rtheta, k.K_rlambda, k.K_thetalambda};
    const Riemann riem = riemann_fd(metric, s.r);
    std::optional<Riemann> riem_half;
    if (opts.richardson) riem_half = riemann_fd(half, s.r);
    for (int p = 0; p < 3; ++p) {
      const int i = kPlanes[p][0];
      const int j = kPlanes[p][1];
      s.oracle[p] = frame_component(metric, riem, s.r, i, j, i, j);
      if (riem_half) {
        const double fine = frame_component(half, *riem_half, s.r, i, j, i, j);
        s.oracle[p] = (4.0 * fine - s.oracle[p]) / 3.0;
      }
      s.abs_error[p] = std::abs(s.oracle[p] - s.closed_form[p]);
      const double scale = std::abs(s.closed_form[p]);
      s.rel_error[p] = scale > 0.0 ? s.abs_error[p] / scale : s.abs_error[p];
      bool component_ok;
      if (scale > opts.near_zero) {
        component_ok = s.rel_error[p] <= opts.tolerance;
        if (s.rel_error[p] > report.max_rel_error) {
          report.max_rel_error = s.rel_error[p];
          report.worst_component = p;
        }
      } else {
        component_ok = s.abs_error[p] <= opts.abs_floor;
      }
      report.max_abs_error = std::max(report.max_abs_error, s.abs_error[p]);
      s.ok = s.ok && component_ok;
    }
    all_ok = all_ok && s.ok;
    report.samples.push_back(s);
  }
  report.pass = all_ok;
  return report;
}

}  // namespace drillvol
