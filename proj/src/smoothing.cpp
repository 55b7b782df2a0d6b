#include "drillvol/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "drillvol/errors.hpp"

namespace drillvol {

namespace {

// log alpha below this is flushed to zero.
constexpr double kLogCutoff = -700.0;
// alpha is tabulated as alpha * e^8, so the table peaks at 1.
constexpr double kAlphaShift = 8.0;
constexpr int kBetaPanels = 2048;

double log_alpha(double r) {
  const double s = 1.0 - r;
  return -1.0 / (r * r) - 1.0 / (s * s);
}

double scaled_alpha(double r) {
  if (r <= 0.0 || r >= 1.0) return 0.0;
  const double la = log_alpha(r);
  if (la < kLogCutoff) return 0.0;
  return std::exp(la + kAlphaShift);
}

struct BetaTables {
  CumulativeIntegral mass;    // \int_0^x alpha e^8
  CumulativeIntegral moment;  // \int_0^x s alpha(s) e^8
  double total;

  BetaTables()
      : mass(scaled_alpha, 0.0, 1.0, kBetaPanels, 1e-15),
        moment([](double s) { return s * scaled_alpha(s); }, 0.0, 1.0,
               kBetaPanels, 1e-15),
        total(mass.total()) {}
};

const BetaTables& beta_tables() {
  static const BetaTables tables;
  return tables;
}

std::string number(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

double bump_alpha(double r) {
  if (r <= 0.0 || r >= 1.0) return 0.0;
  const double la = log_alpha(r);
  return la < kLogCutoff ? 0.0 : std::exp(la);
}

double bump_alpha_prime(double r) {
  const double a = bump_alpha(r);
  if (a == 0.0) return 0.0;
  const double s = 1.0 - r;
  return a * (2.0 / (r * r * r) - 2.0 / (s * s * s));
}

double ramp_beta(double r) {
  if (r <= 0.0) return 0.0;
  if (r >= 1.0) return 1.0;
  const BetaTables& t = beta_tables();
  return t.mass(r) / t.total;
}

double ramp_beta_prime(double r) {
  return scaled_alpha(r) / beta_tables().total;
}

double ramp_beta_second(double r) {
  const double a = scaled_alpha(r);
  if (a == 0.0) return 0.0;
  const double s = 1.0 - r;
  return a * (2.0 / (r * r * r) - 2.0 / (s * s * s)) / beta_tables().total;
}

double ramp_beta_integral(double r) {
  if (r <= 0.0) return 0.0;
  const BetaTables& t = beta_tables();
  // \int_0^x beta = x beta(x) - \int_0^x s beta'(s) ds
  const double x = std::min(r, 1.0);
  const double inside = x * ramp_beta(x) - t.moment(x) / t.total;
  return r > 1.0 ? inside + (r - 1.0) : inside;
}

double step_phi(double eps, double R, double r) {
  if (eps == 0.0) return 0.0;
  return ramp_beta((r - R) / eps + 1.0);
}

Jet step_phi_jet(double eps, double R, double r) {
  if (eps == 0.0) return {};
  const double x = (r - R) / eps + 1.0;
  return {ramp_beta(x), ramp_beta_prime(x) / eps,
          ramp_beta_second(x) / (eps * eps)};
}

SmoothedJunction::SmoothedJunction(JunctionInput input, double eps)
    : in_(std::move(input)), eps_(eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw ParameterError("smoothing parameter must be positive, got " + number(eps));
  }
  const double R = in_.R;
  if (!in_.domain.contains(R)) {
    throw PreconditionError("junction radius " + number(R) + " outside the domain");
  }
  const Jet bR = in_.b(R);
  const Jet cR = in_.c(R);
  if (std::abs(bR.value - cR.value) >= kJunctionMatchTolerance ||
      std::abs(bR.d1 - cR.d1) >= kJunctionMatchTolerance) {
    throw PreconditionError(
        "junction hypothesis violated: b(R) - c(R) = " + number(bR.value - cR.value) +
        ", b'(R) - c'(R) = " + number(bR.d1 - cR.d1));
  }
  auto require_width = [&](double width, const char* what) {
    if (R - width < in_.domain.lo) {
      throw WidthError(std::string(what) + " " + number(width) +
                       " exceeds the domain margin below R = " + number(R));
    }
  };
  require_width(eps, "smoothing width eps =");

  const Profile b = in_.b;
  const Profile c = in_.c;
  auto jump = [b, c, R, eps](double t) {
    return (c(t).d2 - b(t).d2) * step_phi(eps, R, t);
  };
  jump0_ = CumulativeIntegral(jump, R - eps, R, kStageKnots, 1e-12);
  jump1_ = CumulativeIntegral([jump, R](double t) { return (t - R) * jump(t); },
                              R - eps, R, kStageKnots, 1e-12);

  // eta(R) = b'(R) + \int_{R-eps}^R (c''-b'') phi_eps
  slope_defect_ = cR.d1 - (bR.d1 + jump0_.total());
  iota_ = std::sqrt(std::abs(slope_defect_));
  // kappa's integral starts where both eta and phi_iota have returned to b'.
  kappa_width_ = std::max(iota_, eps_);
  require_width(kappa_width_, "slope-correction width");

  const double kappa_R = bR.value + nested_jump_integral(R) +
                         slope_defect_ * iota_ * ramp_beta_integral(1.0);
  value_defect_ = cR.value - kappa_R;
  omega_ = std::cbrt(std::abs(value_defect_));
  delta_ = std::max({eps_, iota_, omega_});
  require_width(delta_, "collar width delta =");
}

double SmoothedJunction::second_jump_integral(double r) const {
  return jump0_(r);
}

double SmoothedJunction::nested_jump_integral(double r) const {
  const double R = in_.R;
  if (r <= R - eps_) return 0.0;
  const double x = std::min(r, R);
  return (x - R) * jump0_(x) - jump1_(x);
}

double SmoothedJunction::eta_prime(double r) const {
  if (r >= in_.R) return in_.c(r).d2;
  const double phi = step_phi(eps_, in_.R, r);
  return in_.b(r).d2 * (1.0 - phi) + in_.c(r).d2 * phi;
}

double SmoothedJunction::eta(double r) const {
  const double R = in_.R;
  if (r >= R) return in_.c(r).d1 - in_.c(R).d1 + in_.b(R).d1 + jump0_.total();
  return in_.b(r).d1 + second_jump_integral(r);
}

double SmoothedJunction::kappa_prime(double r) const {
  if (r >= in_.R) return in_.c(r).d1;
  return eta(r) + slope_defect_ * step_phi(iota_, in_.R, r);
}

double SmoothedJunction::kappa(double r) const {
  const double R = in_.R;
  auto below = [this, R](double x) {
    double v = in_.b(x).value + nested_jump_integral(x);
    if (iota_ > 0.0) {
      v += slope_defect_ * iota_ * ramp_beta_integral((x - R) / iota_ + 1.0);
    }
    return v;
  };
  if (r >= R) return below(R) + in_.c(r).value - in_.c(R).value;
  return below(r);
}

Jet SmoothedJunction::operator()(double r) const {
  const double R = in_.R;
  const Jet omega_bump = step_phi_jet(omega_, R, r);
  if (r >= R) {
    const Jet c = in_.c(r);
    return {kappa(r) + value_defect_ * omega_bump.value, c.d1, c.d2};
  }
  const Jet iota_bump = step_phi_jet(iota_, R, r);
  Jet out;
  out.value = kappa(r) + value_defect_ * omega_bump.value;
  out.d1 = kappa_prime(r) + value_defect_ * omega_bump.d1;
  out.d2 = eta_prime(r) + slope_defect_ * iota_bump.d1 +
           value_defect_ * omega_bump.d2;
  return out;
}

Jet SmoothedJunction::unsmoothed(double r) const {
  return r < in_.R ? in_.b(r) : in_.c(r);
}

Envelope second_derivative_envelope(const SmoothedJunction& s, int grid_n) {
  if (grid_n < 16) throw ParameterError("envelope grid needs at least 16 points");
  const double lo = s.R() - s.delta();
  const double hi = s.R();
  Envelope env{std::numeric_limits<double>::infinity(),
               -std::numeric_limits<double>::infinity()};
  for (int i = 0; i < grid_n; ++i) {
    const double r = (i + 1 == grid_n) ? hi : lo + (hi - lo) * i / (grid_n - 1);
    const double d2 = s(r).d2;
    env.inf = std::min(env.inf, d2);
    env.sup = std::max(env.sup, d2);
  }
  return env;
}

namespace {

double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, int iterations = 60) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  double best = std::max({f(lo), f(hi), f1, f2});
  for (int i = 0; i < iterations && hi - lo > 1e-14; ++i) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
      best = std::max(best, f2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
      best = std::max(best, f1);
    }
  }
  return best;
}

Profile kerckhoff_f(double R) {
  const double sh = std::sinh(R);
  const double cth = 1.0 / std::tanh(R);
  return [=](double r) {
    const double v = sh * std::exp(cth * (r - R));
    return Jet{v, cth * v, cth * cth * v};
  };
}

Profile kerckhoff_g(double R) {
  const double ch = std::cosh(R);
  const double th = std::tanh(R);
  return [=](double r) {
    const double v = ch * std::exp(th * (r - R));
    return Jet{v, th * v, th * th * v};
  };
}

CurvatureRatioSups ratio_sups(const WarpingPair& w, double lo, double hi, int n) {
  CurvatureRatioSups sups{-std::numeric_limits<double>::infinity(),
                          -std::numeric_limits<double>::infinity(),
                          -std::numeric_limits<double>::infinity()};
  for (int i = 0; i < n; ++i) {
    const double r = (i + 1 == n) ? hi : lo + (hi - lo) * i / (n - 1);
    const WarpingSample s = w.eval_unchecked(r);
    sups.f_ratio = std::max(sups.f_ratio, s.f.d2 / s.f.value);
    sups.g_ratio = std::max(sups.g_ratio, s.g.d2 / s.g.value);
    sups.cross_ratio =
        std::max(sups.cross_ratio, s.f.d1 * s.g.d1 / (s.f.value * s.g.value));
  }
  return sups;
}

}  // namespace

double refined_ricci_constant(const WarpingPair& w, double r_lo, double r_hi,
                              int grid_n) {
  if (!(r_lo < r_hi)) throw DomainError("empty interval for the Ricci bound");
  if (grid_n < 3) throw ParameterError("grid needs at least 3 points");
  const double step = (r_hi - r_lo) / (grid_n - 1);
  std::vector<double> r(grid_n), d(grid_n);
  for (int i = 0; i < grid_n; ++i) {
    r[i] = (i + 1 == grid_n) ? r_hi : r_lo + i * step;
    d[i] = ricci_deficit(w, r[i]);
  }
  double best = *std::max_element(d.begin(), d.end());

  // Refine the strongest strict local maxima; plateaus need no refinement.
  std::vector<int> peaks;
  for (int i = 1; i + 1 < grid_n; ++i) {
    if (d[i] > d[i - 1] && d[i] >= d[i + 1]) peaks.push_back(i);
  }
  constexpr std::size_t kPeaksRefined = 16;
  if (peaks.size() > kPeaksRefined) {
    std::partial_sort(peaks.begin(), peaks.begin() + kPeaksRefined, peaks.end(),
                      [&d](int a, int b) { return d[a] > d[b]; });
    peaks.resize(kPeaksRefined);
  }
  auto deficit = [&w](double x) { return ricci_deficit(w, x); };
  for (int i : peaks) {
    best = std::max(best, golden_section_max(deficit, r[i - 1], r[i + 1]));
  }
  return 0.5 * best;
}

SmoothedWarpingFamily smoothed_metric(double R, double eps, int grid_n) {
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw ParameterError("tube radius must be positive, got " + number(R));
  }
  const RadialDomain domain{-std::numeric_limits<double>::infinity(),
                            R + kSmoothedMargin};
  auto sinh_profile = [](double r) {
    const double s = std::sinh(r);
    return Jet{s, std::cosh(r), s};
  };
  auto cosh_profile = [](double r) {
    const double c = std::cosh(r);
    return Jet{c, std::sinh(r), c};
  };
  auto fj = std::make_shared<const SmoothedJunction>(
      JunctionInput{kerckhoff_f(R), sinh_profile, R, domain}, eps);
  auto gj = std::make_shared<const SmoothedJunction>(
      JunctionInput{kerckhoff_g(R), cosh_profile, R, domain}, eps);
  const double delta = std::max(fj->delta(), gj->delta());
  if (delta >= R) {
    throw WidthError("collar width delta = " + number(delta) +
                     " is not below the tube radius R = " + number(R));
  }

  auto eval = [fj, gj](double r) { return WarpingSample{(*fj)(r), (*gj)(r)}; };
  WarpingPair pair("smoothed(R=" + number(R) + ",eps=" + number(eps) + ")", eval,
                   domain);
  const double lo = R - delta - 1.0;
  const double hi = R + kSmoothedMargin;
  SmoothedWarpingFamily out{R, eps, fj, gj, pair, delta, 0.0, {}, {}};
  out.k = refined_ricci_constant(pair, lo, hi, grid_n);
  out.collar_sups = ratio_sups(pair, R - delta, R, grid_n);
  out.domain_sups = ratio_sups(pair, lo, hi, grid_n);
  // The collar grid is finer; the window contains it.
  out.domain_sups.f_ratio = std::max(out.domain_sups.f_ratio, out.collar_sups.f_ratio);
  out.domain_sups.g_ratio = std::max(out.domain_sups.g_ratio, out.collar_sups.g_ratio);
  out.domain_sups.cross_ratio =
      std::max(out.domain_sups.cross_ratio, out.collar_sups.cross_ratio);
  return out;
}

double k_eps(double R, double eps, int grid_n) {
  return smoothed_metric(R, eps, grid_n).k;
}

double k_limit(double R) {
  const double cth = 1.0 / std::tanh(R);
  return 0.5 * (1.0 + cth * cth);
}

}  // namespace drillvol
