#include "drillvol/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "drillvol/errors.hpp"

namespace drillvol {

namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd Kronrod nodes (indices 1, 3, 5, 7).
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr std::array<double, 5> kLegendreNodes = {
    0.148874338981631210884826001129720, 0.433395394129247190799265943165784,
    0.679409568299024406234327365114874, 0.865063366688984510732096688423493,
    0.973906528517171720077964012084452};

constexpr std::array<double, 5> kLegendreWeights = {
    0.295524224714752870173892994651338, 0.269266719309996355091226921569469,
    0.219086362515982043995534934228163, 0.149451349150580593145776339657697,
    0.066671344308688137593568809893332};

struct PanelEstimate {
  double kronrod;
  double error;
};

PanelEstimate gauss_kronrod15(const RealFunction& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {kronrod, std::abs(kronrod - gauss)};
}

void refine(const RealFunction& f, double a, double b, double tol, int depth,
            int max_depth, QuadratureResult& acc) {
  const PanelEstimate est = gauss_kronrod15(f, a, b);
  acc.evaluations += 15;
  if (!std::isfinite(est.kronrod)) {
    std::ostringstream msg;
    msg << "non-finite integrand on [" << a << ", " << b << "]";
    throw NumericError(msg.str());
  }
  if (est.error <= tol) {
    acc.value += est.kronrod;
    acc.abs_error += est.error;
    ++acc.panels;
    return;
  }
  if (depth >= max_depth) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "quadrature did not converge: panel [" << a << ", " << b
        << "] estimate " << est.kronrod << " error " << est.error
        << " > tolerance " << tol << " after " << acc.evaluations
        << " evaluations";
    throw NumericError(msg.str());
  }
  const double mid = 0.5 * (a + b);
  refine(f, a, mid, tol, depth + 1, max_depth, acc);
  refine(f, mid, b, tol, depth + 1, max_depth, acc);
}

}  // namespace

QuadratureResult integrate_adaptive(const RealFunction& f, double a, double b,
                                    double panel_abs_tol, int max_depth) {
  QuadratureResult acc;
  if (a == b) return acc;
  if (a > b) {
    acc = integrate_adaptive(f, b, a, panel_abs_tol, max_depth);
    acc.value = -acc.value;
    return acc;
  }
  refine(f, a, b, panel_abs_tol, 0, max_depth, acc);
  return acc;
}

double gauss_legendre10(const RealFunction& f, double a, double b) {
  if (a == b) return 0.0;
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < kLegendreNodes.size(); ++i) {
    const double dx = half * kLegendreNodes[i];
    sum += kLegendreWeights[i] * (f(center - dx) + f(center + dx));
  }
  return sum * half;
}

CumulativeIntegral::CumulativeIntegral(RealFunction f, double a, double b,
                                       int panels, double panel_abs_tol)
    : f_(std::move(f)), a_(a), b_(b) {
  if (!(b >= a) || panels < 1) {
    throw ParameterError("cumulative integral needs a <= b and panels >= 1");
  }
  width_ = (b - a) / panels;
  prefix_.assign(static_cast<std::size_t>(panels) + 1, 0.0);
  if (width_ == 0.0) return;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * width_;
    const double hi = (k + 1 == panels) ? b : a + (k + 1) * width_;
    prefix_[k + 1] =
        prefix_[k] + integrate_adaptive(f_, lo, hi, panel_abs_tol).value;
  }
}

double CumulativeIntegral::operator()(double x) const {
  if (prefix_.empty() || x <= a_ || width_ == 0.0) return 0.0;
  if (x >= b_) return prefix_.back();
  const auto panels = static_cast<std::ptrdiff_t>(prefix_.size()) - 1;
  auto k = static_cast<std::ptrdiff_t>((x - a_) / width_);
  k = std::clamp<std::ptrdiff_t>(k, 0, panels - 1);
  const double knot = a_ + static_cast<double>(k) * width_;
  return prefix_[k] + gauss_legendre10(f_, knot, x);
}

}  // namespace drillvol
