#include "drillvol/geodesic_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "drillvol/drill_bounds.hpp"
#include "drillvol/errors.hpp"
#include "drillvol/format.hpp"

namespace drillvol {

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_real(std::string_view cell, std::size_t line, const char* column) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (!cell.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || cell.empty() || !std::isfinite(value)) {
    throw ParseError(line, std::string("column ") + column + ": '" +
                               std::string(cell) + "' is not a number");
  }
  return value;
}

std::optional<double> parse_optional_real(std::string_view cell, std::size_t line,
                                          const char* column) {
  if (cell.empty()) return std::nullopt;
  return parse_real(cell, line, column);
}

int parse_index(std::string_view cell, std::size_t line) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) {
    throw ParseError(line, "column index: '" + std::string(cell) + "' is not an integer");
  }
  return value;
}

void require_positive(double v, std::size_t line, const char* column) {
  if (!(v > 0.0)) {
    throw ValidationError("line " + std::to_string(line) + ": " + column +
                          " must be positive, got " + format_number(v));
  }
}

std::string exact_cell(const std::optional<double>& v) {
  return v ? format_exact(*v) : std::string();
}

std::string cell(const std::optional<double>& v) {
  return v ? format_number(*v, kReportPrecision) : std::string();
}

std::string cell(const std::optional<bool>& v) {
  if (!v) return {};
  return *v ? "true" : "false";
}

std::string record_label(const GeodesicRecord& r) {
  return r.manifold + "#" + std::to_string(r.index);
}

}  // namespace

std::vector<GeodesicRecord> parse_records(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "missing header line");
  ++line_no;
  std::string_view header = trim(line);
  if (header.size() >= 3 && header.substr(0, 3) == "\xEF\xBB\xBF") header.remove_prefix(3);
  std::size_t columns = 0;
  if (header == kInputHeader) {
    columns = 6;
  } else if (header == kReportHeader) {
    columns = kReportColumns;
  } else {
    throw ParseError(1, "unexpected header '" + std::string(header) + "', expected '" +
                            std::string(kInputHeader) + "'");
  }

  std::vector<GeodesicRecord> records;
  std::set<int> seen;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    std::vector<std::string_view> cells = split_commas(row);
    if (cells.size() != columns) {
      throw ParseError(line_no, "expected " + std::to_string(columns) + " fields, found " +
                                    std::to_string(cells.size()));
    }
    for (auto& c : cells) c = trim(c);

    GeodesicRecord rec;
    rec.manifold = std::string(cells[0]);
    if (rec.manifold.empty()) throw ParseError(line_no, "empty manifold id");
    rec.index = parse_index(cells[1], line_no);
    rec.length = parse_real(cells[2], line_no, "length");
    rec.tube_radius = parse_optional_real(cells[3], line_no, "tube_radius");
    rec.vol_parent = parse_real(cells[4], line_no, "vol_parent");
    rec.vol_drilled = parse_optional_real(cells[5], line_no, "vol_drilled");

    if (rec.index < 1) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": index must be >= 1, got " + std::to_string(rec.index));
    }
    require_positive(rec.length, line_no, "length");
    if (rec.tube_radius) require_positive(*rec.tube_radius, line_no, "tube_radius");
    require_positive(rec.vol_parent, line_no, "vol_parent");
    if (rec.vol_drilled) require_positive(*rec.vol_drilled, line_no, "vol_drilled");
    if (!seen.insert(rec.index).second) {
      throw ValidationError("line " + std::to_string(line_no) + ": duplicate index " +
                            std::to_string(rec.index));
    }
    records.push_back(std::move(rec));
  }
  if (in.bad()) throw IoError("read failure after line " + std::to_string(line_no));
  return records;
}

std::vector<GeodesicRecord> parse_records_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_records(in);
}

AnalysisReport bridgeman_check(std::span<const GeodesicRecord> records) {
  AnalysisReport report;
  for (const GeodesicRecord& rec : records) {
    RecordAnalysis row;
    row.record = rec;
    row.bridgeman_bound = bridgeman_bound(rec.vol_parent, rec.length);
    if (rec.vol_drilled) {
      row.margin = *rec.vol_drilled - row.bridgeman_bound;
      row.violation = *rec.vol_drilled > row.bridgeman_bound;
      if (*row.violation) ++report.violation_count;
      report.max_violation_margin =
          std::max(report.max_violation_margin.value_or(*row.margin), *row.margin);
    } else {
      report.notices.push_back(record_label(rec) +
                               ": no drilled volume, Bridgeman check skipped");
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

AnalysisReport bound_consistency_check(std::span<const GeodesicRecord> records) {
  AnalysisReport report;
  for (const GeodesicRecord& rec : records) {
    RecordAnalysis row;
    row.record = rec;
    row.bridgeman_bound = bridgeman_bound(rec.vol_parent, rec.length);
    if (rec.tube_radius) {
      const DrillEstimate est =
          drilled_volume_bound(rec.vol_parent, rec.length, *rec.tube_radius);
      row.bound_tight = est.bound_tight;
      row.bound_coarse = est.bound_coarse;
      row.tube_fits = est.tube_fits;
      if (est.warning) report.notices.push_back(record_label(rec) + ": " + *est.warning);
      if (rec.vol_drilled) {
        row.consistent = *rec.vol_drilled <= est.bound_tight;
        if (!*row.consistent) ++report.anomaly_count;
      } else {
        report.notices.push_back(record_label(rec) +
                                 ": no drilled volume, bound consistency skipped");
      }
    } else {
      report.notices.push_back(record_label(rec) +
                               ": no tube radius, bound consistency skipped");
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

AnalysisReport analyze(std::span<const GeodesicRecord> records) {
  AnalysisReport merged = bridgeman_check(records);
  AnalysisReport bounds = bound_consistency_check(records);
  for (std::size_t i = 0; i < merged.rows.size(); ++i) {
    RecordAnalysis& row = merged.rows[i];
    const RecordAnalysis& b = bounds.rows[i];
    row.bound_tight = b.bound_tight;
    row.bound_coarse = b.bound_coarse;
    row.tube_fits = b.tube_fits;
    row.consistent = b.consistent;
  }
  merged.anomaly_count = bounds.anomaly_count;
  merged.notices.insert(merged.notices.end(), bounds.notices.begin(), bounds.notices.end());
  return merged;
}

void emit_report(const AnalysisReport& report, std::ostream& out) {
  out << kReportHeader << '\n';
  for (const RecordAnalysis& row : report.rows) {
    const GeodesicRecord& r = row.record;
    // Input columns are echoed exactly; computed ones use kReportPrecision.
    out << r.manifold << ',' << r.index << ',' << format_exact(r.length) << ','
        << exact_cell(r.tube_radius) << ',' << format_exact(r.vol_parent) << ','
        << exact_cell(r.vol_drilled) << ','
        << format_number(row.bridgeman_bound, kReportPrecision) << ','
        << cell(row.violation) << ',' << cell(row.bound_tight) << ','
        << cell(row.bound_coarse) << ',' << cell(row.consistent) << '\n';
  }
  out.flush();
  if (!out) throw IoError("failed to write report");
}

PlotStyle parse_plot_style(std::string_view name) {
  if (name == "linear") return PlotStyle::kLinear;
  if (name == "log10") return PlotStyle::kLog10;
  throw ParameterError("unknown plot style '" + std::string(name) +
                       "' (expected linear or log10)");
}

namespace {

struct SeriesPoint {
  int index;
  double drilled;
  double bound;
};

std::string fixed2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

// 1, 2 or 5 times a power of ten, giving about `target` intervals.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double nice = norm <= 1.0 ? 1.0 : norm <= 2.0 ? 2.0 : norm <= 5.0 ? 5.0 : 10.0;
  return nice * mag;
}

}  // namespace

void emit_plot(const AnalysisReport& report, std::ostream& out, PlotStyle style) {
  if (report.rows.empty()) throw ValidationError("nothing to plot: report is empty");
  const bool log_style = style == PlotStyle::kLog10;

  std::vector<SeriesPoint> points;
  for (const RecordAnalysis& row : report.rows) {
    const GeodesicRecord& r = row.record;
    if (!r.vol_drilled) {
      throw ValidationError(record_label(r) + ": drilled volume required for plotting");
    }
    SeriesPoint p{r.index, *r.vol_drilled, row.bridgeman_bound};
    if (log_style) {
      if (!r.tube_radius) {
        throw ValidationError(record_label(r) + ": tube radius required for the log10 plot");
      }
      p.drilled = std::log10(*r.vol_drilled);
      p.bound = std::log10(coarse_factor(*r.tube_radius) * r.vol_parent);
    }
    points.push_back(p);
  }

  constexpr double kLeft = 90.0, kRight = 40.0, kTop = 70.0, kBottom = 70.0;
  const double plot_w = kPlotWidth - kLeft - kRight;
  const double plot_h = kPlotHeight - kTop - kBottom;

  int max_index = 1;
  double y_min = points.front().drilled, y_max = y_min;
  for (const SeriesPoint& p : points) {
    max_index = std::max(max_index, p.index);
    y_min = std::min({y_min, p.drilled, p.bound});
    y_max = std::max({y_max, p.drilled, p.bound});
  }
  if (!log_style) y_min = std::min(y_min, 0.0);
  if (y_max - y_min < 1e-9) {
    y_min -= 0.5;
    y_max += 0.5;
  }
  const double y_step = nice_step(y_max - y_min, 6);
  y_min = std::floor(y_min / y_step) * y_step;
  y_max = std::ceil(y_max / y_step) * y_step;
  const double x_min = 0.0;
  const double x_max = max_index + 1.0;

  auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double y) { return kTop + (y_max - y) / (y_max - y_min) * plot_h; };

  const char* drilled_label = log_style ? "log₁₀ Vol(Mγ)" : "Vol(Mγ)";
  const char* bound_label = log_style
                                ? "log₁₀ coth^{5/2}R coth^{1/2}2R Vol(M)"
                                : "Vol(M)+πl(γ)";

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kPlotWidth
      << "\" height=\"" << kPlotHeight << "\" viewBox=\"0 0 " << kPlotWidth << ' '
      << kPlotHeight << "\" font-family=\"sans-serif\" font-size=\"14\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << kPlotWidth << "\" height=\"" << kPlotHeight
      << "\" fill=\"white\"/>\n";

  // Axes and ticks.
  out << "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n"
      << "<line x1=\"" << fixed2(kLeft) << "\" y1=\"" << fixed2(kTop + plot_h) << "\" x2=\""
      << fixed2(kLeft + plot_w) << "\" y2=\"" << fixed2(kTop + plot_h) << "\"/>\n"
      << "<line x1=\"" << fixed2(kLeft) << "\" y1=\"" << fixed2(kTop) << "\" x2=\""
      << fixed2(kLeft) << "\" y2=\"" << fixed2(kTop + plot_h) << "\"/>\n"
      << "</g>\n<g class=\"ticks\" fill=\"black\">\n";
  const double x_step = std::max(1.0, nice_step(x_max - x_min, 8));
  for (double x = x_step; x < x_max; x += x_step) {
    out << "<line x1=\"" << fixed2(sx(x)) << "\" y1=\"" << fixed2(kTop + plot_h)
        << "\" x2=\"" << fixed2(sx(x)) << "\" y2=\"" << fixed2(kTop + plot_h + 6)
        << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fixed2(sx(x)) << "\" y=\"" << fixed2(kTop + plot_h + 22)
        << "\" text-anchor=\"middle\">" << format_number(x, 6) << "</text>\n";
  }
  const int y_ticks = static_cast<int>(std::lround((y_max - y_min) / y_step));
  for (int i = 0; i <= y_ticks; ++i) {
    const double y = y_min + i * y_step;
    out << "<line x1=\"" << fixed2(kLeft - 6) << "\" y1=\"" << fixed2(sy(y)) << "\" x2=\""
        << fixed2(kLeft) << "\" y2=\"" << fixed2(sy(y)) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fixed2(kLeft - 10) << "\" y=\"" << fixed2(sy(y) + 5)
        << "\" text-anchor=\"end\">" << format_number(std::abs(y) < 1e-12 ? 0.0 : y, 6)
        << "</text>\n";
  }
  out << "</g>\n"
      << "<text x=\"" << fixed2(kLeft + plot_w / 2) << "\" y=\"" << fixed2(kPlotHeight - 20)
      << "\" text-anchor=\"middle\">geodesics ordered by length</text>\n";

  // Data.
  out << "<g class=\"series series-drilled\" fill=\"none\" stroke=\"#1f4e9c\">\n";
  for (const SeriesPoint& p : points) {
    out << "<circle class=\"data-marker\" data-index=\"" << p.index << "\" data-y=\""
        << format_number(p.drilled, kReportPrecision) << "\" cx=\"" << fixed2(sx(p.index))
        << "\" cy=\"" << fixed2(sy(p.drilled)) << "\" r=\"5\"/>\n";
  }
  out << "</g>\n<g class=\"series series-bound\" fill=\"none\" stroke=\"#b2361f\">\n";
  for (const SeriesPoint& p : points) {
    out << "<rect class=\"data-marker\" data-index=\"" << p.index << "\" data-y=\""
        << format_number(p.bound, kReportPrecision) << "\" x=\"" << fixed2(sx(p.index) - 4.5)
        << "\" y=\"" << fixed2(sy(p.bound) - 4.5) << "\" width=\"9\" height=\"9\"/>\n";
  }
  out << "</g>\n";

  // Legend.
  out << "<g class=\"legend\">\n"
      << "<circle class=\"legend-marker\" cx=\"" << fixed2(kLeft + 20) << "\" cy=\"30\" r=\"5\""
      << " fill=\"none\" stroke=\"#1f4e9c\"/>\n"
      << "<text x=\"" << fixed2(kLeft + 32) << "\" y=\"35\">" << drilled_label << "</text>\n"
      << "<rect class=\"legend-marker\" x=\"" << fixed2(kLeft + 315.5)
      << "\" y=\"25.50\" width=\"9\" height=\"9\" fill=\"none\" stroke=\"#b2361f\"/>\n"
      << "<text x=\"" << fixed2(kLeft + 332) << "\" y=\"35\">" << bound_label << "</text>\n"
      << "</g>\n</svg>\n";
  out.flush();
  if (!out) throw IoError("failed to write plot");
}

}  // namespace drillvol
