#include "export.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "json_io.hpp"

namespace tbp {

namespace {

std::string fmt_shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt_fixed(double v, int precision) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed,
                    precision);
  return std::string(buf, res.ptr);
}

std::string value_column(Mode mode) {
  return mode == Mode::cumulative_regret ? "mean_regret" : "error_rate";
}

}  // namespace

std::string to_csv(const ExperimentResult& result) {
  std::string out = "policy,T,N," + value_column(result.config.mode) +
                    ",ci_half_width,censored,wall_time_ms\n";
  for (const Cell& cell : result.cells) {
    out += cell.policy;
    out += ',';
    out += std::to_string(cell.horizon);
    out += ',';
    out += std::to_string(cell.replications);
    out += ',';
    out += fmt_shortest(cell.value);
    out += ',';
    out += fmt_shortest(cell.half_width);
    out += ',';
    out += cell.censored ? '1' : '0';
    out += ',';
    out += std::to_string(int64_t(std::llround(cell.wall_time_ms)));
    out += '\n';
  }
  return out;
}

std::string to_json_text(const ExperimentResult& result) {
  nlohmann::json doc;
  doc["config"] = config_to_json(result.config);
  doc["complexity"] =
      result.complexity ? nlohmann::json(*result.complexity)
                        : nlohmann::json(nullptr);
  const std::string value_key = value_column(result.config.mode);
  auto cells = nlohmann::json::array();
  for (const Cell& cell : result.cells) {
    nlohmann::json row;
    row["policy"] = cell.policy;
    row["T"] = cell.horizon;
    row["N"] = cell.replications;
    row[value_key] = cell.value;
    row["ci_half_width"] = cell.half_width;
    row["censored"] = cell.censored;
    row["wall_time_ms"] = int64_t(std::llround(cell.wall_time_ms));
    cells.push_back(std::move(row));
  }
  doc["cells"] = std::move(cells);
  return doc.dump(2) + "\n";
}

std::string to_svg(const ExperimentResult& result) {
  constexpr double kWidth = 720, kHeight = 480;
  constexpr double kLeft = 70, kRight = 690, kTop = 40, kBottom = 420;
  static const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                   "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  constexpr size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

  struct Point {
    double t = 0;
    double log_value = 0;
    bool censored = false;
  };
  // Series in first-appearance order; cell order is already deterministic.
  std::vector<std::string> order;
  std::map<std::string, std::vector<Point>> series;
  double t_min = 0, t_max = 0, y_min = 0, y_max = 0;
  bool first = true;
  for (const Cell& cell : result.cells) {
    // A log axis cannot place an exact zero; plot censored cells at the
    // resolution floor 1/(2N) and mark them hollow.
    const double value =
        cell.censored ? 1.0 / (2.0 * double(cell.replications)) : cell.value;
    const Point p{double(cell.horizon), std::log10(value), cell.censored};
    if (series.find(cell.policy) == series.end()) order.push_back(cell.policy);
    series[cell.policy].push_back(p);
    if (first) {
      t_min = t_max = p.t;
      y_min = y_max = p.log_value;
      first = false;
    } else {
      t_min = std::min(t_min, p.t);
      t_max = std::max(t_max, p.t);
      y_min = std::min(y_min, p.log_value);
      y_max = std::max(y_max, p.log_value);
    }
  }
  if (t_max == t_min) {
    t_min -= 1;
    t_max += 1;
  }
  if (y_max == y_min) {
    y_min -= 0.5;
    y_max += 0.5;
  } else {
    const double pad = 0.08 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;
  }

  const auto x_of = [&](double t) {
    return kLeft + (t - t_min) / (t_max - t_min) * (kRight - kLeft);
  };
  const auto y_of = [&](double log_value) {
    return kBottom - (log_value - y_min) / (y_max - y_min) * (kBottom - kTop);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         fmt_fixed(kWidth, 0) + "\" height=\"" + fmt_fixed(kHeight, 0) +
         "\" viewBox=\"0 0 " + fmt_fixed(kWidth, 0) + " " +
         fmt_fixed(kHeight, 0) + "\">\n";
  svg += "<rect width=\"" + fmt_fixed(kWidth, 0) + "\" height=\"" +
         fmt_fixed(kHeight, 0) + "\" fill=\"white\"/>\n";

  // axes
  svg += "<line x1=\"" + fmt_fixed(kLeft, 1) + "\" y1=\"" +
         fmt_fixed(kBottom, 1) + "\" x2=\"" + fmt_fixed(kRight, 1) +
         "\" y2=\"" + fmt_fixed(kBottom, 1) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + fmt_fixed(kLeft, 1) + "\" y1=\"" +
         fmt_fixed(kTop, 1) + "\" x2=\"" + fmt_fixed(kLeft, 1) + "\" y2=\"" +
         fmt_fixed(kBottom, 1) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  // x ticks at every distinct horizon
  std::vector<double> ticks;
  for (const auto& label : order) {
    for (const Point& p : series[label]) ticks.push_back(p.t);
  }
  std::sort(ticks.begin(), ticks.end());
  ticks.erase(std::unique(ticks.begin(), ticks.end()), ticks.end());
  for (const double t : ticks) {
    const double x = x_of(t);
    svg += "<line x1=\"" + fmt_fixed(x, 1) + "\" y1=\"" +
           fmt_fixed(kBottom, 1) + "\" x2=\"" + fmt_fixed(x, 1) + "\" y2=\"" +
           fmt_fixed(kBottom + 5, 1) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt_fixed(x, 1) + "\" y=\"" +
           fmt_fixed(kBottom + 18, 1) +
           "\" font-family=\"sans-serif\" font-size=\"11\" "
           "text-anchor=\"middle\">" +
           std::to_string(int64_t(std::llround(t))) + "</text>\n";
  }
  svg += "<text x=\"" + fmt_fixed((kLeft + kRight) / 2, 1) + "\" y=\"" +
         fmt_fixed(kBottom + 36, 1) +
         "\" font-family=\"sans-serif\" font-size=\"12\" "
         "text-anchor=\"middle\">T</text>\n";

  // y ticks at integer decades when the range has them, else at the ends
  std::vector<double> y_ticks;
  for (double e = std::ceil(y_min); e <= std::floor(y_max) + 1e-12; e += 1.0) {
    y_ticks.push_back(e);
  }
  if (y_ticks.empty()) {
    y_ticks = {y_min, y_max};
  }
  for (const double e : y_ticks) {
    const double y = y_of(e);
    svg += "<line x1=\"" + fmt_fixed(kLeft - 5, 1) + "\" y1=\"" +
           fmt_fixed(y, 1) + "\" x2=\"" + fmt_fixed(kLeft, 1) + "\" y2=\"" +
           fmt_fixed(y, 1) + "\" stroke=\"black\"/>\n";
    const std::string label =
        e == std::floor(e) ? "1e" + std::to_string(int64_t(e))
                           : fmt_fixed(std::pow(10.0, e), 3);
    svg += "<text x=\"" + fmt_fixed(kLeft - 8, 1) + "\" y=\"" +
           fmt_fixed(y + 4, 1) +
           "\" font-family=\"sans-serif\" font-size=\"11\" "
           "text-anchor=\"end\">" +
           label + "</text>\n";
  }
  const std::string y_label = result.config.mode == Mode::cumulative_regret
                                  ? "mean regret (log scale)"
                                  : "error rate (log scale)";
  svg += "<text x=\"" + fmt_fixed(kLeft, 1) + "\" y=\"" +
         fmt_fixed(kTop - 12, 1) +
         "\" font-family=\"sans-serif\" font-size=\"12\">" + y_label +
         "</text>\n";

  // one polyline + markers per policy
  for (size_t s = 0; s < order.size(); ++s) {
    const char* color = kPalette[s % kPaletteSize];
    const auto& points = series[order[s]];
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < points.size(); ++i) {
      if (i) svg += ' ';
      svg += fmt_fixed(x_of(points[i].t), 1) + "," +
             fmt_fixed(y_of(points[i].log_value), 1);
    }
    svg += "\"/>\n";
    for (const Point& p : points) {
      svg += "<circle cx=\"" + fmt_fixed(x_of(p.t), 1) + "\" cy=\"" +
             fmt_fixed(y_of(p.log_value), 1) + "\" r=\"3.5\" ";
      if (p.censored) {
        svg += "fill=\"white\" stroke=\"";
        svg += color;
        svg += "\" stroke-width=\"1.5\"/>\n";
      } else {
        svg += "fill=\"";
        svg += color;
        svg += "\"/>\n";
      }
    }
  }

  // legend
  for (size_t s = 0; s < order.size(); ++s) {
    const char* color = kPalette[s % kPaletteSize];
    const double y = kTop + 14 + 16 * double(s);
    svg += "<line x1=\"" + fmt_fixed(kRight - 130, 1) + "\" y1=\"" +
           fmt_fixed(y - 4, 1) + "\" x2=\"" + fmt_fixed(kRight - 112, 1) +
           "\" y2=\"" + fmt_fixed(y - 4, 1) + "\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fmt_fixed(kRight - 106, 1) + "\" y=\"" +
           fmt_fixed(y, 1) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + order[s] +
           "</text>\n";
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace tbp
