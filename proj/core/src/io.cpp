#include "hawkes/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "hawkes/error.hpp"

namespace hawkes::io {
namespace {

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
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
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

Table::Table(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw InvalidArgument("csv table needs a header");
}

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw InvalidArgument("csv row width does not match header");
  rows_.push_back(std::move(cells));
}

void Table::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  add_row(std::move(cells));
}

std::string Table::to_csv() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(cells[i]);
    }
    out += '\n';
  };
  line(header_);
  for (const auto& row : rows_) line(row);
  return out;
}

OutputSet::OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw Error("cannot create output directory '" + dir_.string() + "': " + ec.message());
}

void OutputSet::write(const std::string& name, const std::string& content) {
  const auto path = dir_ / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw Error("cannot write '" + path.string() + "'");
  if (std::find(files_.begin(), files_.end(), name) == files_.end()) files_.push_back(name);
}

std::filesystem::path resolve_output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("HAWKES_OUT_DIR"); env && *env) return env;
  return "hawkes-out";
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::string utc_timestamp(std::chrono::system_clock::time_point when) {
  const std::time_t t = std::chrono::system_clock::to_time_t(when);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string manifest_json(const Manifest& m) {
  nlohmann::json j;
  j["command"] = m.command;
  j["config_hash"] = hex64(m.config_hash);
  j["seed"] = m.seed;
  j["version"] = m.version;
  j["started"] = m.started;
  j["finished"] = m.finished;
  j["wall_seconds"] = m.wall_seconds;
  j["outputs"] = m.outputs;
  return j.dump(2) + "\n";
}

std::string svg_chart(const Chart& chart) {
  constexpr double width = 720, height = 420, left = 70, right = 150, top = 40, bottom = 55;
  const double pw = width - left - right, ph = height - top - bottom;
  auto tx = [&](double v) { return chart.log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return chart.log_y ? std::log10(v) : v; };

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : chart.series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      const double a = tx(s.x[i]), b = ty(s.y[i]);
      if (!std::isfinite(a) || !std::isfinite(b)) continue;
      x0 = std::min(x0, a);
      x1 = std::max(x1, a);
      y0 = std::min(y0, b);
      y1 = std::max(y1, b);
    }
  }
  for (double r : chart.reference_y) {
    if (std::isfinite(ty(r))) {
      y0 = std::min(y0, ty(r));
      y1 = std::max(y1, ty(r));
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x0 -= 0.5, x1 += 0.5;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double v) { return left + (tx(v) - x0) / (x1 - x0) * pw; };
  auto py = [&](double v) { return top + (1.0 - (ty(v) - y0) / (y1 - y0)) * ph; };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width, 0) +
                    "\" height=\"" + fixed(height, 0) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fixed(left + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
         xml_escape(chart.title) + "</text>\n";
  svg += "<rect x=\"" + fixed(left) + "\" y=\"" + fixed(top) + "\" width=\"" + fixed(pw) +
         "\" height=\"" + fixed(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double fx = x0 + (x1 - x0) * i / 5.0, fy = y0 + (y1 - y0) * i / 5.0;
    const double sx = left + pw * i / 5.0, sy = top + ph * (1.0 - i / 5.0);
    svg += "<text x=\"" + fixed(sx) + "\" y=\"" + fixed(top + ph + 18) +
           "\" text-anchor=\"middle\">" + tick_label(chart.log_x ? std::pow(10.0, fx) : fx) + "</text>\n";
    svg += "<text x=\"" + fixed(left - 6) + "\" y=\"" + fixed(sy + 4) + "\" text-anchor=\"end\">" +
           tick_label(chart.log_y ? std::pow(10.0, fy) : fy) + "</text>\n";
  }
  svg += "<text x=\"" + fixed(left + pw / 2) + "\" y=\"" + fixed(height - 12) +
         "\" text-anchor=\"middle\">" + xml_escape(chart.x_label) + "</text>\n";
  svg += "<text transform=\"translate(16," + fixed(top + ph / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + xml_escape(chart.y_label) + "</text>\n";
  for (double r : chart.reference_y) {
    svg += "<line x1=\"" + fixed(left) + "\" x2=\"" + fixed(left + pw) + "\" y1=\"" + fixed(py(r)) +
           "\" y2=\"" + fixed(py(r)) + "\" stroke=\"gray\" stroke-dasharray=\"5,4\"/>\n";
  }
  for (std::size_t s = 0; s < chart.series.size(); ++s) {
    const auto& series = chart.series[s];
    const std::string color = kPalette[s % std::size(kPalette)];
    const std::size_t m = std::min(series.x.size(), series.y.size());
    if (chart.markers) {
      for (std::size_t i = 0; i < m; ++i) {
        if (!std::isfinite(tx(series.x[i])) || !std::isfinite(ty(series.y[i]))) continue;
        svg += "<circle cx=\"" + fixed(px(series.x[i])) + "\" cy=\"" + fixed(py(series.y[i])) +
               "\" r=\"3\" fill=\"" + color + "\"/>\n";
      }
    } else {
      // Thin long series so files stay small.
      const std::size_t stride = std::max<std::size_t>(1, m / 4000);
      std::string points;
      for (std::size_t i = 0; i < m; i += stride) {
        if (!std::isfinite(tx(series.x[i])) || !std::isfinite(ty(series.y[i]))) continue;
        points += fixed(px(series.x[i])) + "," + fixed(py(series.y[i])) + " ";
      }
      svg += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.2\" points=\"" +
             points + "\"/>\n";
    }
    const double ly = top + 14 + 18.0 * static_cast<double>(s);
    svg += "<line x1=\"" + fixed(left + pw + 10) + "\" x2=\"" + fixed(left + pw + 30) + "\" y1=\"" +
           fixed(ly - 4) + "\" y2=\"" + fixed(ly - 4) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fixed(left + pw + 35) + "\" y=\"" + fixed(ly) + "\">" +
           xml_escape(series.label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace hawkes::io
