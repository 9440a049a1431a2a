#include "dayroute/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "dayroute/csv.hpp"
#include "dayroute/errors.hpp"

namespace dayroute {

namespace {

struct SeriesPoint {
  long long episode;
  Phase phase;
  double value_min;
};

std::vector<SeriesPoint> episode_means(const RunRecord& record,
                                       std::optional<AgentKind> kind) {
  const long long n_episodes =
      static_cast<long long>(record.episode_phase.size());
  std::vector<double> sum(n_episodes, 0.0);
  std::vector<long long> count(n_episodes, 0);
  for (const RunRow& row : record.rows) {
    if (kind && row.kind != *kind) continue;
    sum[row.episode] += row.travel_time_s;
    ++count[row.episode];
  }
  std::vector<SeriesPoint> points;
  for (long long ep = 0; ep < n_episodes; ++ep) {
    if (count[ep] == 0) continue;
    points.push_back({ep, record.episode_phase[ep],
                      sum[ep] / (60.0 * static_cast<double>(count[ep]))});
  }
  return points;
}

void write_series_csv(const std::vector<SeriesPoint>& points,
                      const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << "episode,phase,value_min\n";
  for (const SeriesPoint& p : points) {
    out << p.episode << ',' << phase_name(p.phase) << ','
        << format_fixed(p.value_min, 6) << '\n';
  }
}

struct ChartSeries {
  const char* label;
  const char* color;
  const std::vector<SeriesPoint>* points;
};

void write_chart(const std::vector<ChartSeries>& series,
                 std::optional<double> t_pre_min, long long n_episodes,
                 const std::filesystem::path& path) {
  const double width = 960, height = 540;
  const double left = 70, right = 930, top = 40, bottom = 490;

  double lo = t_pre_min.value_or(1e300), hi = t_pre_min.value_or(-1e300);
  for (const ChartSeries& s : series) {
    for (const SeriesPoint& p : *s.points) {
      lo = std::min(lo, p.value_min);
      hi = std::max(hi, p.value_min);
    }
  }
  if (lo > hi) { lo = 0.0; hi = 1.0; }
  if (hi - lo < 1e-9) { hi += 0.5; lo -= 0.5; }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;

  const double x_span = std::max<long long>(1, n_episodes - 1);
  auto x_of = [&](long long ep) {
    return left + (right - left) * static_cast<double>(ep) / x_span;
  };
  auto y_of = [&](double v) {
    return bottom - (bottom - top) * (v - lo) / (hi - lo);
  };

  std::ofstream out = open_for_write(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width
      << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";

  // Axes and ticks.
  out << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right
      << "\" y2=\"" << bottom << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
      << "\" y2=\"" << bottom << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double v = lo + (hi - lo) * i / 5.0;
    const double y = y_of(v);
    out << "<line x1=\"" << left - 5 << "\" y1=\"" << y << "\" x2=\"" << left
        << "\" y2=\"" << y << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << left - 9 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\">" << format_fixed(v, 2) << "</text>\n";
    const long long ep = std::llround(x_span * i / 5.0);
    const double x = x_of(ep);
    out << "<line x1=\"" << x << "\" y1=\"" << bottom << "\" x2=\"" << x
        << "\" y2=\"" << bottom + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << x << "\" y=\"" << bottom + 20
        << "\" text-anchor=\"middle\">" << ep << "</text>\n";
  }
  out << "<text x=\"" << (left + right) / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\">episode</text>\n";
  out << "<text x=\"18\" y=\"" << (top + bottom) / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << (top + bottom) / 2 << ")\">mean travel time [min]</text>\n";

  if (t_pre_min) {
    const double y = y_of(*t_pre_min);
    out << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << right
        << "\" y2=\"" << y
        << "\" stroke=\"#777777\" stroke-dasharray=\"7 5\"/>\n";
    out << "<text x=\"" << right - 4 << "\" y=\"" << y - 6
        << "\" text-anchor=\"end\" fill=\"#777777\">pre-mutation mean</text>\n";
  }

  for (const ChartSeries& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.4\" points=\"";
    for (const SeriesPoint& p : *s.points) {
      out << format_fixed(x_of(p.episode), 2) << ','
          << format_fixed(y_of(p.value_min), 2) << ' ';
    }
    out << "\"/>\n";
  }

  double ly = top + 8;
  for (const ChartSeries& s : series) {
    out << "<line x1=\"" << right - 150 << "\" y1=\"" << ly << "\" x2=\""
        << right - 120 << "\" y2=\"" << ly << "\" stroke=\"" << s.color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << right - 112 << "\" y=\"" << ly + 4 << "\">"
        << s.label << "</text>\n";
    ly += 18;
  }

  out << "</svg>\n";
}

}  // namespace

void emit_series(const RunRecord& record, std::optional<double> t_pre_min,
                 const std::filesystem::path& out_dir) {
  if (record.rows.empty()) throw Error("cannot emit series for an empty record");

  const auto all = episode_means(record, std::nullopt);
  const auto cav = episode_means(record, AgentKind::cav);
  const auto hdv = episode_means(record, AgentKind::human);

  write_series_csv(all, out_dir / "series" / "mean_tt_all.csv");
  std::vector<ChartSeries> chart_series{{"all", "#444444", &all}};
  if (!hdv.empty()) {
    write_series_csv(hdv, out_dir / "series" / "mean_tt_hdv.csv");
    chart_series.push_back({"human", "#1f77b4", &hdv});
  }
  if (!cav.empty()) {
    write_series_csv(cav, out_dir / "series" / "mean_tt_cav.csv");
    chart_series.push_back({"fleet", "#d62728", &cav});
  }

  write_chart(chart_series, t_pre_min,
              static_cast<long long>(record.episode_phase.size()),
              out_dir / "chart.svg");
}

}  // namespace dayroute
