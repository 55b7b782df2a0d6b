#pragma once

#include <functional>
#include <vector>

namespace drillvol {

using RealFunction = std::function<double(double)>;

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;  // sum of accepted panel error estimates
  int evaluations = 0;
  int panels = 0;
};

/// Adaptive Gauss-Kronrod (G7/K15) integration on [a, b] by recursive
/// bisection. A panel is accepted once |K15 - G7| <= panel_abs_tol.
/// Throws NumericError if a panel is still unresolved at max_depth.
/// a == b returns an exact zero; a > b integrates with the sign flipped.
QuadratureResult integrate_adaptive(const RealFunction& f, double a, double b,
                                    double panel_abs_tol = 1e-12,
                                    int max_depth = 48);

/// Fixed 10-point Gauss-Legendre rule on [a, b].
double gauss_legendre10(const RealFunction& f, double a, double b);

/// Memoized running integral x -> \int_a^x f on a uniform knot grid.
///
/// Panel integrals between knots are computed once with integrate_adaptive;
/// an evaluation adds the cached prefix to a Gauss-Legendre pass over the
/// partial panel. Intended for integrands that are smooth on the scale of
/// one panel. Values outside [a, b] clamp to the endpoints.
class CumulativeIntegral {
 public:
  CumulativeIntegral() = default;
  CumulativeIntegral(RealFunction f, double a, double b, int panels,
                     double panel_abs_tol = 1e-12);

  double operator()(double x) const;
  double total() const { return prefix_.empty() ? 0.0 : prefix_.back(); }
  double lower() const { return a_; }
  double upper() const { return b_; }

 private:
  RealFunction f_;
  double a_ = 0.0;
  double b_ = 0.0;
  double width_ = 0.0;
  std::vector<double> prefix_;
};

}  // namespace drillvol
