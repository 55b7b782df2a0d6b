#include "drillvol/drill_bounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "drillvol/errors.hpp"

namespace drillvol {

namespace {

std::string number(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw ParameterError(std::string(what) + " must be positive, got " + number(x));
  }
}

double coth(double x) { return 1.0 / std::tanh(x); }

}  // namespace

namespace constants {

double ln3_half() { return 0.5 * std::log(3.0); }

const std::vector<SourcedConstant>& table() {
  static const std::vector<SourcedConstant> rows = {
      {"cusped_volume", kCuspedVolume,
       "Cao-Meyerhoff: orientable cusped hyperbolic 3-manifolds have volume > 2.0298"},
      {"weeks_volume", kWeeksVolume, "Weeks manifold volume 0.9427..."},
      {"equation_volume", kWeeksVolumeRounded,
       "Weeks volume rounded up, used as the parent volume in the radius equation"},
      {"vol3_volume", kVol3Volume,
       "Vol3, third smallest closed census manifold, volume 1.0149..."},
      {"exceptional_case_volume", kExceptionalCaseVolume,
       "Gabai-Meyerhoff-Thurston: volume > 1.01 in the non-generic cases"},
      {"radius_threshold", ln3_half(), "Gabai-Meyerhoff-Thurston generic case R > (ln 3)/2"},
      {"case2_radius_upper", kCase2RadiusUpper, "Gabai-Meyerhoff-Thurston case 2: R < 1.0953/2"},
      {"case2_radius_lower", kCase2RadiusLower, "Gabai-Meyerhoff-Thurston case 2: R > 1.0591/2"},
      {"case2_length_lower", kCase2LengthLower, "Gabai-Meyerhoff-Thurston case 2: l > 1.059"},
      {"case3_radius", kCase3Radius, "Gabai-Meyerhoff-Thurston case 3: R = 0.8314.../2"},
  };
  return rows;
}

}  // namespace constants

double coarse_factor(double R) {
  return std::pow(coth(R), 2.5) * std::sqrt(coth(2.0 * R));
}

double ricci_scale(double R) { return coth(R) * coth(2.0 * R); }

DrillEstimate drilled_volume_bound(double vol_M, double l, double R) {
  require_positive(vol_M, "parent volume");
  require_positive(l, "geodesic length");
  require_positive(R, "tube radius");
  DrillEstimate e;
  e.vol_M = vol_M;
  e.l = l;
  e.R = R;
  e.k = ricci_scale(R);
  const double sh = std::sinh(R);
  e.tube_volume = std::numbers::pi * l * sh * sh;
  const double added = e.tube_volume * (coth(R) / coth(2.0 * R) - 1.0);
  e.bound_tight = std::pow(e.k, 1.5) * (vol_M + added);
  e.bound_coarse = coarse_factor(R) * vol_M;
  e.tube_fits = e.tube_volume <= vol_M;
  if (!e.tube_fits) {
    e.warning = "tube volume " + number(e.tube_volume) +
                " exceeds the parent volume; tight bound need not be below the coarse one";
  }
  return e;
}

double parent_volume_lower_bound(double vol_drilled, double R) {
  require_positive(vol_drilled, "drilled volume");
  require_positive(R, "tube radius");
  return vol_drilled / coarse_factor(R);
}

double solve_radius_bound(double vol_drilled_min, double vol_M_max) {
  if (!(vol_M_max > 0.0) || !(vol_drilled_min > vol_M_max) ||
      !std::isfinite(vol_drilled_min)) {
    throw DomainError("no finite radius root: need drilled volume " +
                      number(vol_drilled_min) + " > parent volume " +
                      number(vol_M_max) + " > 0");
  }
  auto residual = [&](double R) { return coarse_factor(R) * vol_M_max - vol_drilled_min; };
  double lo = kRadiusBracketLo;
  double hi = kRadiusBracketHi;
  if (!(residual(lo) > 0.0) || !(residual(hi) < 0.0)) {
    throw DomainError("radius root not bracketed by [" + number(lo) + ", " +
                      number(hi) + "]");
  }
  while (hi - lo > kRadiusTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (residual(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

const std::vector<GmtCase>& gmt_cases() {
  using namespace constants;
  static const std::vector<GmtCase> cases = {
      {1, ln3_half(), std::nullopt, std::nullopt, std::nullopt, std::nullopt,
       "generic case: R > (ln 3)/2"},
      {2, kCase2RadiusLower, kCase2RadiusUpper, std::nullopt, kCase2LengthLower,
       kExceptionalCaseVolume,
       "1.0591/2 < R < 1.0953/2 and l > 1.059; volume > 1.01"},
      {3, std::nullopt, std::nullopt, kCase3Radius, std::nullopt, kVol3Volume,
       "R = 0.8314.../2 and M = Vol3 (volume 1.0149...)"},
  };
  return cases;
}

double bridgeman_bound(double vol_M, double l) {
  require_positive(vol_M, "parent volume");
  if (!(l >= 0.0) || !std::isfinite(l)) {
    throw ParameterError("geodesic length must be non-negative, got " + number(l));
  }
  return vol_M + std::numbers::pi * l;
}

MinVolumeReport min_volume_corollary() {
  using namespace constants;
  MinVolumeReport rep;
  rep.cusped_volume = kCuspedVolume;
  rep.weeks_volume = kWeeksVolume;
  rep.equation_volume = kWeeksVolumeRounded;
  rep.radius_threshold = ln3_half();

  std::ostringstream filter;
  for (const GmtCase& c : gmt_cases()) {
    if (c.volume && *c.volume > kWeeksVolume) {
      rep.excluded_cases.push_back(c.id);
      if (filter.tellp() > 0) filter << "; ";
      filter << "case " << c.id << " excluded (volume " << number(*c.volume)
             << " > Weeks " << number(kWeeksVolume) << ")";
    }
  }
  rep.case_filter = filter.str();

  // The drilled manifold is cusped, hence has volume > 2.0298; the generic
  // case gives R > (ln 3)/2, where the coarse factor is largest.
  rep.lower_bound = parent_volume_lower_bound(kCuspedVolume, rep.radius_threshold);
  rep.radius_bound = solve_radius_bound(kCuspedVolume, kWeeksVolumeRounded);
  rep.radius_bound_weeks = solve_radius_bound(kCuspedVolume, kWeeksVolume);
  rep.radius_residual =
      coarse_factor(rep.radius_bound) * kWeeksVolumeRounded - kCuspedVolume;
  rep.provenance = table();
  return rep;
}

}  // namespace drillvol
