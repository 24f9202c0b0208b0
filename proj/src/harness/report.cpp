#include "esddfd/harness/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "esddfd/harness/config.hpp"

namespace esddfd::harness {

namespace {

std::string cell_text(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
  } visitor;
  return std::visit(visitor, c);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') {
      out += '"';
    }
    out += ch;
  }
  return out + "\"";
}

std::optional<double> numeric(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    return *d;
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) {
    return static_cast<double>(*i);
  }
  return std::nullopt;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += ch;
    }
  }
  return out;
}

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  out << content;
  if (!out.flush()) {
    throw std::runtime_error("failed writing " + path.string());
  }
}

}  // namespace

void ExperimentReport::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument("report row has " + std::to_string(row.size()) + " cells, expected " +
                                std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

std::size_t ExperimentReport::column_index(const std::string& column) const {
  const auto it = std::find(columns.begin(), columns.end(), column);
  if (it == columns.end()) {
    throw std::out_of_range("report '" + name + "' has no column '" + column + "'");
  }
  return static_cast<std::size_t>(it - columns.begin());
}

void ExperimentReport::validate() const {
  const std::set<std::string> unique(columns.begin(), columns.end());
  if (unique.size() != columns.size()) {
    throw std::invalid_argument("report '" + name + "' has duplicate column names");
  }
  const auto flag = std::find(columns.begin(), columns.end(), "diverged");
  for (const auto& row : rows) {
    if (row.size() != columns.size()) {
      throw std::invalid_argument("report '" + name + "' is not rectangular");
    }
    const bool flagged = flag != columns.end() && row[flag - columns.begin()] == Cell{true};
    for (const auto& c : row) {
      if (const auto* d = std::get_if<double>(&c); d && !std::isfinite(*d) && !flagged) {
        throw std::invalid_argument("report '" + name + "' has a non-finite value in an unflagged row");
      }
    }
  }
}

std::string to_csv(const ExperimentReport& report) {
  std::string out;
  if (!report.metadata.timestamp.empty()) {
    out += "# esddfd " + report.metadata.tool_version + " " + report.metadata.timestamp + "\n";
  }
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    out += (i ? "," : "") + csv_field(report.columns[i]);
  }
  out += "\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += (i ? "," : "") + csv_field(cell_text(row[i]));
    }
    out += "\n";
  }
  return out;
}

std::string to_json(const ExperimentReport& report) {
  using nlohmann::ordered_json;
  ordered_json rows = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      ordered_json v;
      std::visit(
          [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
              v = nullptr;
            } else if constexpr (std::is_same_v<T, double>) {
              v = std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr);
            } else {
              v = x;
            }
          },
          row[i]);
      obj[report.columns[i]] = v;
    }
    rows.push_back(std::move(obj));
  }
  ordered_json doc = {
      {"name", report.name},
      {"columns", report.columns},
      {"rows", rows},
      {"metadata",
       {{"tool_version", report.metadata.tool_version},
        {"timestamp", report.metadata.timestamp},
        {"config", report.metadata.config_echo}}},
  };
  return doc.dump(2) + "\n";
}

std::string to_svg(const ExperimentReport& report, const PlotSpec& plot) {
  const std::size_t xi = report.column_index(plot.x);
  std::vector<std::size_t> yi;
  for (const auto& y : plot.y) {
    yi.push_back(report.column_index(y));
  }
  if (yi.empty()) {
    throw std::invalid_argument("plot needs at least one y column");
  }
  std::vector<std::size_t> gi;
  for (const auto& g : plot.group_by) {
    gi.push_back(report.column_index(g));
  }

  // Series keyed by "<y>" or "<y> <group>", kept in first-seen order.
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  auto tx = [&](double v) { return plot.log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return plot.log_y ? std::log10(v) : v; };
  for (const auto& row : report.rows) {
    const auto x = numeric(row[xi]);
    if (!x || !std::isfinite(*x) || (plot.log_x && *x <= 0.0)) {
      continue;
    }
    for (std::size_t s = 0; s < yi.size(); ++s) {
      const auto y = numeric(row[yi[s]]);
      if (!y || !std::isfinite(*y) || (plot.log_y && *y <= 0.0)) {
        continue;
      }
      std::string key = plot.y.size() == 1 && !gi.empty() ? "" : plot.y[s];
      for (std::size_t g = 0; g < gi.size(); ++g) {
        key += (key.empty() ? "" : " ") + plot.group_by[g] + "=" + cell_text(row[gi[g]]);
      }
      if (series.count(key) == 0) {
        order.push_back(key);
      }
      series[key].emplace_back(tx(*x), ty(*y));
    }
  }

  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const auto& [key, pts] : series) {
    for (const auto& [x, y] : pts) {
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (series.empty()) {
    x_lo = y_lo = 0.0;
    x_hi = y_hi = 1.0;
  }
  if (x_hi == x_lo) {
    x_lo -= 0.5;
    x_hi += 0.5;
  }
  if (y_hi == y_lo) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }

  constexpr double W = 720, H = 460, L = 80, R = 170, T = 40, B = 60;
  auto px = [&](double x) { return L + (x - x_lo) / (x_hi - x_lo) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y_lo) / (y_hi - y_lo) * (H - T - B); };
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << " " << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
     << xml_escape(plot.title.empty() ? report.name : plot.title) << "</text>\n";
  // axes
  os << "<line class=\"axis\" x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<line class=\"axis\" x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x_lo + (x_hi - x_lo) * i / 4.0;
    const double fy = y_lo + (y_hi - y_lo) * i / 4.0;
    os << "<text x=\"" << fixed(px(fx)) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\" font-size=\"11\">"
       << tick_label(plot.log_x ? std::pow(10.0, fx) : fx) << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << fixed(py(fy) + 4) << "\" text-anchor=\"end\" font-size=\"11\">"
       << tick_label(plot.log_y ? std::pow(10.0, fy) : fy) << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 18 << "\" text-anchor=\"middle\" font-size=\"13\">"
     << xml_escape(plot.x) << (plot.log_x ? " (log)" : "") << "</text>\n";
  std::string y_label;
  for (std::size_t s = 0; s < plot.y.size(); ++s) {
    y_label += (s ? ", " : "") + plot.y[s];
  }
  os << "<text x=\"20\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 20 "
     << (T + H - B) / 2 << ")\">" << xml_escape(y_label) << (plot.log_y ? " (log)" : "") << "</text>\n";

  for (std::size_t s = 0; s < order.size(); ++s) {
    const auto& pts = series[order[s]];
    const char* colour = palette[s % std::size(palette)];
    os << "<polyline class=\"series\" data-series=\"" << xml_escape(order[s]) << "\" fill=\"none\" stroke=\"" << colour
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      os << (i ? " " : "") << fixed(px(pts[i].first)) << "," << fixed(py(pts[i].second));
    }
    os << "\"/>\n";
    const double ly = T + 16.0 * static_cast<double>(s);
    os << "<line x1=\"" << W - R + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 30 << "\" y2=\"" << ly
       << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << W - R + 35 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">" << xml_escape(order[s])
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void emit_csv(const ExperimentReport& report, const std::filesystem::path& path) { write_file(path, to_csv(report)); }

void emit_json(const ExperimentReport& report, const std::filesystem::path& path) {
  write_file(path, to_json(report));
}

void emit_svg(const ExperimentReport& report, const PlotSpec& plot, const std::filesystem::path& path) {
  write_file(path, to_svg(report, plot));
}

}  // namespace esddfd::harness
