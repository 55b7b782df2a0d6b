#include "drillvol/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>

#include "drillvol/curvature_oracle.hpp"
#include "drillvol/drill_bounds.hpp"
#include "drillvol/errors.hpp"
#include "drillvol/format.hpp"
#include "drillvol/geodesic_data.hpp"
#include "drillvol/smoothing.hpp"
#include "drillvol/warped_metrics.hpp"

#ifndef DRILLVOL_VERSION
#define DRILLVOL_VERSION "unknown"
#endif

namespace drillvol::cli {

namespace {

struct UsageError : Error {
  explicit UsageError(const std::string& what) : Error("usage", what) {}
};

/// key=value lines; free text goes on `#` lines so the block stays parseable.
class KeyValueWriter {
 public:
  KeyValueWriter(std::ostream& out, int precision) : out_(out), precision_(precision) {}

  void num(const std::string& key, double v) {
    out_ << key << '=' << format_number(v, precision_) << '\n';
  }
  void text(const std::string& key, const std::string& v) { out_ << key << '=' << v << '\n'; }
  void flag(const std::string& key, bool v) { text(key, v ? "true" : "false"); }
  void count(const std::string& key, long long v) { out_ << key << '=' << v << '\n'; }
  void comment(const std::string& line) { out_ << "# " << line << '\n'; }

 private:
  std::ostream& out_;
  int precision_;
};

double numeric_flag(const std::string& flag, const std::string& token) {
  try {
    return parse_numeric_token(token);
  } catch (const std::invalid_argument&) {
    throw UsageError("--" + flag + ": '" + token + "' is not a number (or ln3, ln3/2)");
  }
}

int resolve_precision(int flag_value) {
  int precision = 12;
  if (const char* env = std::getenv(kPrecisionEnv)) {
    try {
      std::size_t used = 0;
      precision = std::stoi(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw UsageError(std::string(kPrecisionEnv) + " must be an integer, got '" + env + "'");
    }
  }
  if (flag_value > 0) precision = flag_value;
  if (precision < 1 || precision > 17) {
    throw UsageError("precision must be between 1 and 17, got " + std::to_string(precision));
  }
  return precision;
}

struct CurvatureArgs {
  std::string R;
  bool validate = false;
  int samples = 100;
  std::string tol = "1e-5";
  std::string eps = "1e-2";
};

struct SmoothArgs {
  std::string R;
  std::string eps;
  std::string csv;
  std::string component = "f";
  int samples = 401;
};

struct BoundArgs {
  std::string vol;
  std::string length;
  std::string R;
};

struct AnalyzeArgs {
  std::string input;
  std::string plot;
  std::string style = "linear";
  std::string report;
};

int run_curvature(const CurvatureArgs& a, int precision, std::ostream& out, std::ostream& err) {
  const double R = numeric_flag("R", a.R);
  const double tol = numeric_flag("tol", a.tol);
  const double eps = numeric_flag("eps", a.eps);
  if (a.samples < 1) throw UsageError("--samples must be at least 1");
  KeyValueWriter kv(out, precision);

  const WarpingPair ext = kerckhoff_extension(R);
  const double r = R - 0.5;
  const SectionalCurvatures k = sectional_curvatures(ext, r);
  const RicciDiagonal ric = ricci_diagonal(ext, r);
  kv.comment("Kerckhoff extension (curvatures are constant for r < R)");
  kv.num("R", R);
  kv.num("K_rtheta", k.K_rtheta);
  kv.num("K_rlambda", k.K_rlambda);
  kv.num("K_thetalambda", k.K_thetalambda);
  kv.num("ric_1", ric.ric_1);
  kv.num("ric_2", ric.ric_2);
  kv.num("ric_3", ric.ric_3);
  kv.num("k_grid", ricci_lower_bound_constant(ext, R - 5.0, R - 0.01, 1000));
  kv.num("k_limit", k_limit(R));
  kv.num("coth_R_coth_2R", ricci_scale(R));
  if (!a.validate) return kExitOk;

  ValidationOptions opts;
  opts.tolerance = tol;
  struct Named {
    std::string key;
    WarpingPair pair;
  };
  std::vector<Named> pairs = {{"hyperbolic_tube", hyperbolic_tube()},
                              {"kerckhoff_extension", ext},
                              {"smoothed", smoothed_metric(R, eps).pair}};
  bool all_pass = true;
  for (const Named& n : pairs) {
    const CurvatureReport rep = validate_lemma_curvature(n.pair, a.samples, opts);
    kv.count("validate." + n.key + ".samples", static_cast<long long>(rep.samples.size()));
    kv.num("validate." + n.key + ".max_rel_error", rep.max_rel_error);
    kv.num("validate." + n.key + ".max_abs_error", rep.max_abs_error);
    kv.flag("validate." + n.key + ".pass", rep.pass);
    for (const std::string& w : rep.warnings) kv.comment("warning: " + w);
    all_pass = all_pass && rep.pass;
  }
  kv.num("validate.tolerance", tol);
  kv.flag("validate.pass", all_pass);
  if (!all_pass) {
    err << "error:validation:closed-form curvature disagrees with the oracle beyond tolerance\n";
    return kExitFailure;
  }
  return kExitOk;
}

int run_smooth(const SmoothArgs& a, int precision, std::ostream& out) {
  const double R = numeric_flag("R", a.R);
  const double eps = numeric_flag("eps", a.eps);
  if (a.component != "f" && a.component != "g") {
    throw UsageError("--component must be f or g");
  }
  if (a.samples < 2) throw UsageError("--samples must be at least 2");
  const SmoothedWarpingFamily fam = smoothed_metric(R, eps);
  const SmoothedJunction& j = a.component == "f" ? *fam.f_junction : *fam.g_junction;

  if (!a.csv.empty()) {
    std::ofstream csv(a.csv);
    if (!csv) throw IoError("cannot open '" + a.csv + "' for writing");
    csv << "r,a,da,d2a\n";
    const double lo = R - j.delta() - 0.1;
    const double hi = R + 0.1;
    for (int i = 0; i < a.samples; ++i) {
      const double r = (i + 1 == a.samples) ? hi : lo + (hi - lo) * i / (a.samples - 1);
      const Jet v = j(r);
      csv << format_number(r, precision) << ',' << format_number(v.value, precision) << ','
          << format_number(v.d1, precision) << ',' << format_number(v.d2, precision) << '\n';
    }
    csv.flush();
    if (!csv) throw IoError("failed writing '" + a.csv + "'");
  }

  KeyValueWriter kv(out, precision);
  kv.num("R", R);
  kv.num("eps", eps);
  kv.text("component", a.component);
  kv.num("iota", j.iota());
  kv.num("omega", j.omega());
  kv.num("delta", j.delta());
  kv.num("delta_family", fam.delta);
  kv.num("k_eps", fam.k);
  kv.num("k_limit", k_limit(R));
  kv.num("sup_f_ratio_collar", fam.collar_sups.f_ratio);
  kv.num("sup_f_ratio_domain", fam.domain_sups.f_ratio);
  kv.num("sup_g_ratio_collar", fam.collar_sups.g_ratio);
  kv.num("sup_g_ratio_domain", fam.domain_sups.g_ratio);
  kv.num("sup_cross_ratio_collar", fam.collar_sups.cross_ratio);
  kv.num("sup_cross_ratio_domain", fam.domain_sups.cross_ratio);
  if (!a.csv.empty()) kv.text("csv", a.csv);
  return kExitOk;
}

int run_bound(const BoundArgs& a, int precision, double depth, std::ostream& out) {
  const double vol = numeric_flag("vol", a.vol);
  const double l = numeric_flag("length", a.length);
  const double R = numeric_flag("R", a.R);
  const DrillEstimate e = drilled_volume_bound(vol, l, R);
  const TubeParams tube = TubeParams::make(R, l);
  const VolumeQuadrature q = warped_volume_quadrature(
      kerckhoff_extension(R), -std::numeric_limits<double>::infinity(), R, l, depth);

  KeyValueWriter kv(out, precision);
  kv.comment("drilled volume <= bound_tight <= bound_coarse (when the tube fits)");
  kv.num("vol_M", e.vol_M);
  kv.num("length", e.l);
  kv.num("R", e.R);
  kv.num("k", e.k);
  kv.num("tube_volume", e.tube_volume);
  kv.num("extended_tube_volume", extended_tube_volume(tube));
  kv.num("extended_tube_volume_quadrature", q.volume);
  kv.num("quadrature_truncation_bound", q.truncation_bound);
  kv.num("bound_tight", e.bound_tight);
  kv.num("bound_coarse", e.bound_coarse);
  kv.num("bridgeman_bound", bridgeman_bound(e.vol_M, e.l));
  kv.flag("tube_fits", e.tube_fits);
  if (e.warning) kv.text("warning", *e.warning);
  return kExitOk;
}

int run_minvol(int precision, std::ostream& out) {
  const MinVolumeReport rep = min_volume_corollary();
  KeyValueWriter kv(out, precision);
  kv.comment("minimal volume closed orientable hyperbolic 3-manifold M");
  kv.comment("M cusped => Vol(M) > 2.0298 > Weeks volume, so M is closed");
  kv.comment(rep.case_filter + "; hence R > (ln 3)/2");
  kv.comment("Vol(M) > Vol(M_gamma) / (coth^{5/2}(ln3/2) coth^{1/2}(ln3))");
  kv.num("cusped_volume", rep.cusped_volume);
  kv.num("weeks_volume", rep.weeks_volume);
  kv.num("equation_volume", rep.equation_volume);
  kv.num("radius_threshold", rep.radius_threshold);
  std::string excluded;
  for (int id : rep.excluded_cases) {
    if (!excluded.empty()) excluded += ',';
    excluded += std::to_string(id);
  }
  kv.text("excluded_cases", excluded);
  kv.num("lower_bound", rep.lower_bound);
  kv.flag("lower_bound_exceeds_0.32", rep.lower_bound > 0.32);
  kv.num("radius_bound", rep.radius_bound);
  kv.flag("radius_bound_below_0.956", rep.radius_bound < 0.956);
  kv.num("radius_bound_weeks", rep.radius_bound_weeks);
  kv.num("radius_residual", rep.radius_residual);
  for (const SourcedConstant& c : rep.provenance) {
    kv.comment("source " + c.key + " = " + format_number(c.value, precision) + ": " + c.source);
  }
  return kExitOk;
}

int run_analyze(const AnalyzeArgs& a, int precision, std::ostream& out) {
  const PlotStyle style = parse_plot_style(a.style);
  const std::vector<GeodesicRecord> records = parse_records_file(a.input);
  const AnalysisReport rep = analyze(records);

  if (!a.report.empty()) {
    std::ofstream f(a.report);
    if (!f) throw IoError("cannot open '" + a.report + "' for writing");
    emit_report(rep, f);
  }
  if (!a.plot.empty()) {
    std::ofstream f(a.plot, std::ios::binary);
    if (!f) throw IoError("cannot open '" + a.plot + "' for writing");
    emit_plot(rep, f, style);
  }

  KeyValueWriter kv(out, precision);
  kv.count("records", static_cast<long long>(rep.rows.size()));
  kv.count("violations", rep.violation_count);
  if (rep.max_violation_margin) kv.num("max_violation_margin", *rep.max_violation_margin);
  kv.count("anomalies", rep.anomaly_count);
  for (const RecordAnalysis& row : rep.rows) {
    if (row.violation && *row.violation) {
      kv.count("violation_index", row.record.index);
    }
  }
  kv.count("notices", static_cast<long long>(rep.notices.size()));
  for (const std::string& n : rep.notices) kv.comment("notice: " + n);
  if (!a.report.empty()) kv.text("report", a.report);
  if (!a.plot.empty()) kv.text("plot", a.plot);
  return kExitOk;
}

}  // namespace

double parse_numeric_token(const std::string& token) {
  if (token == "ln3/2") return 0.5 * std::log(3.0);
  if (token == "ln3") return std::log(3.0);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(token);
  }
  if (used != token.size() || !std::isfinite(v)) throw std::invalid_argument(token);
  return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Drilling volume bounds for hyperbolic 3-manifolds", "drillvol"};
  app.set_version_flag("--version", std::string("drillvol ") + DRILLVOL_VERSION);
  int precision_flag = 0;
  double depth = kDefaultTruncationDepth;
  app.add_option("--precision", precision_flag, "Significant digits in output (default 12)");
  app.add_option("--depth", depth, "Truncation depth for integrals over (-inf, R]")
      ->check(CLI::PositiveNumber);

  CurvatureArgs curv;
  auto* c = app.add_subcommand("curvature", "Curvatures of the tube metrics");
  c->add_option("--R", curv.R, "Tube radius")->required();
  c->add_flag("--validate", curv.validate, "Cross-check against the finite-difference oracle");
  c->add_option("--samples", curv.samples, "Validation samples per pair");
  c->add_option("--tol", curv.tol, "Relative tolerance");
  c->add_option("--eps", curv.eps, "Smoothing parameter of the validated smoothed pair");

  SmoothArgs smooth;
  auto* s = app.add_subcommand("smooth", "Smoothed junction and its Ricci constant");
  s->add_option("--R", smooth.R, "Tube radius")->required();
  s->add_option("--eps", smooth.eps, "Smoothing parameter")->required();
  s->add_option("--csv", smooth.csv, "Write (r, a, a', a'') samples here");
  s->add_option("--component", smooth.component, "Junction to sample: f or g");
  s->add_option("--samples", smooth.samples, "Number of CSV samples");

  BoundArgs bound;
  auto* b = app.add_subcommand("bound", "Drilled volume bounds");
  b->add_option("--vol", bound.vol, "Parent volume")->required();
  b->add_option("--length", bound.length, "Geodesic length")->required();
  b->add_option("--R", bound.R, "Tube radius")->required();

  auto* m = app.add_subcommand("minvol", "Minimum-volume and tube-radius bounds");

  AnalyzeArgs an;
  auto* z = app.add_subcommand("analyze", "Check a drilled-geodesic dataset");
  z->add_option("--input", an.input, "Input CSV")->required();
  z->add_option("--plot", an.plot, "Write an SVG plot here");
  z->add_option("--style", an.style, "Plot style: linear or log10");
  z->add_option("--report", an.report, "Write the report CSV here");

  app.require_subcommand(0, 1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error:usage:" << e.what() << '\n';
    err << app.help();
    return kExitUsage;
  }

  try {
    if (app.get_subcommands().empty()) throw UsageError("no subcommand given");
    const int precision = resolve_precision(precision_flag);
    if (c->parsed()) return run_curvature(curv, precision, out, err);
    if (s->parsed()) return run_smooth(smooth, precision, out);
    if (b->parsed()) return run_bound(bound, precision, depth, out);
    if (m->parsed()) return run_minvol(precision, out);
    if (z->parsed()) return run_analyze(an, precision, out);
    throw UsageError("unknown subcommand");
  } catch (const UsageError& e) {
    err << "error:usage:" << e.what() << '\n';
    err << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error:" << e.category() << ':' << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace drillvol::cli
