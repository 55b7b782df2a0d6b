#pragma once

// Volume bounds for drilling a closed geodesic with an embedded tube of
// radius R out of a closed hyperbolic 3-manifold, their inversion, and the
// minimum-volume corollary built on them.

#include <optional>
#include <string>
#include <vector>

namespace drillvol {

/// Named numeric constant with its literature source.
struct SourcedConstant {
  std::string key;
  double value;
  std::string source;
};

namespace constants {
/// Minimum volume of an orientable cusped hyperbolic 3-manifold (lower bound).
inline constexpr double kCuspedVolume = 2.0298;
/// Weeks manifold volume to four digits.
inline constexpr double kWeeksVolume = 0.9427;
/// Rounded Weeks volume used in the tube-radius equation.
inline constexpr double kWeeksVolumeRounded = 0.943;
/// Volume of the third smallest closed census manifold.
inline constexpr double kVol3Volume = 1.0149;
/// Volume lower bound shared by the two non-generic tube radius cases.
inline constexpr double kExceptionalCaseVolume = 1.01;
inline constexpr double kCase2RadiusUpper = 1.0953 / 2.0;
inline constexpr double kCase2RadiusLower = 1.0591 / 2.0;
inline constexpr double kCase2LengthLower = 1.059;
inline constexpr double kCase3Radius = 0.8314 / 2.0;
/// (ln 3)/2; coth of it is exactly 2.
double ln3_half();

/// The table above, with sources, in a fixed order.
const std::vector<SourcedConstant>& table();
}  // namespace constants

/// coth(R)^{5/2} coth(2R)^{1/2}: strictly decreasing in R, -> 1 as R -> inf.
double coarse_factor(double R);

/// coth R coth 2R.
double ricci_scale(double R);

struct DrillEstimate {
  double vol_M = 0.0;
  double l = 0.0;
  double R = 0.0;
  double k = 0.0;             // coth R coth 2R
  double tube_volume = 0.0;   // pi l sinh^2 R
  double bound_tight = 0.0;   // k^{3/2} (vol_M + pi l sinh^2 R (coth R / coth 2R - 1))
  double bound_coarse = 0.0;  // coarse_factor(R) vol_M
  bool tube_fits = false;     // pi l sinh^2 R <= vol_M
  std::optional<std::string> warning;
};

/// Upper bounds on the drilled volume. Throws ParameterError unless
/// vol_M, l, R are all positive. When the tube does not fit in the
/// parent volume the tight bound is still computed and a warning is set.
DrillEstimate drilled_volume_bound(double vol_M, double l, double R);

/// vol_drilled / coarse_factor(R).
double parent_volume_lower_bound(double vol_drilled, double R);

inline constexpr double kRadiusBracketLo = 1e-6;
inline constexpr double kRadiusBracketHi = 50.0;
inline constexpr double kRadiusTolerance = 1e-12;

/// The R0 > 0 with coarse_factor(R0) * vol_M_max = vol_drilled_min, by
/// bisection on [1e-6, 50]. DomainError unless vol_drilled_min > vol_M_max > 0.
double solve_radius_bound(double vol_drilled_min, double vol_M_max);

/// One branch of the Gabai-Meyerhoff-Thurston classification of the tube
/// radius R and length l of a shortest geodesic in a closed orientable
/// hyperbolic 3-manifold.
struct GmtCase {
  int id = 0;
  std::optional<double> radius_lower;  // strict
  std::optional<double> radius_upper;  // strict
  std::optional<double> radius_exact;  // R equals this (truncated) value
  std::optional<double> length_lower;  // strict
  /// Lower bound (or value) of the manifold volume in this case, if known.
  std::optional<double> volume;
  std::string note;
};

const std::vector<GmtCase>& gmt_cases();

/// Bridgeman's conjectured bound vol_M + pi l.
double bridgeman_bound(double vol_M, double l);

struct MinVolumeReport {
  double cusped_volume = 0.0;
  double weeks_volume = 0.0;
  double equation_volume = 0.0;
  double radius_threshold = 0.0;
  std::vector<int> excluded_cases;
  std::string case_filter;
  double lower_bound = 0.0;
  double radius_bound = 0.0;        // R0 with the rounded Weeks volume
  double radius_bound_weeks = 0.0;  // R0 with 0.9427
  double radius_residual = 0.0;
  std::vector<SourcedConstant> provenance;
};

/// The minimum-volume argument: any minimal-volume closed orientable
/// hyperbolic 3-manifold has volume above lower_bound and its shortest
/// geodesic has tube radius below radius_bound.
MinVolumeReport min_volume_corollary();

}  // namespace drillvol
