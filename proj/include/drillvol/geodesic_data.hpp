#pragma once

// Drilled-geodesic datasets produced by external tube/drilling software:
// CSV ingestion, checks against Bridgeman's conjectured bound and the
// drilling volume bound, and CSV/SVG report output.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace drillvol {

struct GeodesicRecord {
  std::string manifold;
  int index = 0;  // 1-based, geodesics ordered by length
  double length = 0.0;
  std::optional<double> tube_radius;
  double vol_parent = 0.0;
  std::optional<double> vol_drilled;
};

inline constexpr std::string_view kInputHeader =
    "manifold,index,length,tube_radius,vol_parent,vol_drilled";
inline constexpr std::string_view kReportHeader =
    "manifold,index,length,tube_radius,vol_parent,vol_drilled,"
    "bridgeman_bound,violation,bound_tight,bound_coarse,consistent";
inline constexpr int kReportColumns = 11;
inline constexpr int kReportPrecision = 12;

/// Reads an input CSV (or a report CSV, whose extra columns are ignored).
/// Throws ParseError (with line number) on malformed rows and
/// ValidationError on duplicate indices or non-positive values.
std::vector<GeodesicRecord> parse_records(std::istream& in);
std::vector<GeodesicRecord> parse_records_file(const std::string& path);

struct RecordAnalysis {
  GeodesicRecord record;
  double bridgeman_bound = 0.0;
  std::optional<bool> violation;       // vol_drilled > vol_parent + pi l
  std::optional<double> margin;        // vol_drilled - (vol_parent + pi l)
  std::optional<double> bound_tight;
  std::optional<double> bound_coarse;
  std::optional<bool> tube_fits;
  std::optional<bool> consistent;      // vol_drilled <= bound_tight
};

struct AnalysisReport {
  std::vector<RecordAnalysis> rows;
  std::vector<std::string> notices;
  int violation_count = 0;
  std::optional<double> max_violation_margin;  // largest margin over checked rows
  int anomaly_count = 0;
};

/// Flags records whose drilled volume strictly exceeds vol_parent + pi l.
/// Records without a drilled volume are skipped with a notice.
AnalysisReport bridgeman_check(std::span<const GeodesicRecord> records);

/// Flags records whose drilled volume exceeds the tight drilling bound.
/// Records missing the tube radius or drilled volume are skipped with a
/// notice; a tube too large for the parent volume adds a warning notice.
AnalysisReport bound_consistency_check(std::span<const GeodesicRecord> records);

/// Both checks, merged row by row.
AnalysisReport analyze(std::span<const GeodesicRecord> records);

/// One CSV row per record under kReportHeader; empty cell = absent. Input
/// columns are written in shortest round-trip form, computed columns to
/// kReportPrecision significant digits.
void emit_report(const AnalysisReport& report, std::ostream& out);

enum class PlotStyle { kLinear, kLog10 };

PlotStyle parse_plot_style(std::string_view name);

inline constexpr int kPlotWidth = 960;
inline constexpr int kPlotHeight = 640;

/// Standalone SVG scatter plot against geodesic index.
///  linear: drilled volume (circles) and vol_parent + pi l (squares);
///  log10:  log10 drilled volume (circles) and log10 of the coarse drilling
///          bound (squares).
/// Throws ValidationError for an empty report or a record lacking a
/// series value.
void emit_plot(const AnalysisReport& report, std::ostream& out, PlotStyle style);

}  // namespace drillvol
