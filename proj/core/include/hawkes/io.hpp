#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace hawkes::io {

/// Shortest round-trip decimal form, always with '.' as separator; non-finite
/// values become "nan", "inf" or "-inf".
std::string format_number(double value);

/// CSV table with a mandatory header row.
class Table {
 public:
  explicit Table(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  void add_row(const std::vector<double>& values);
  std::size_t columns() const { return header_.size(); }
  std::size_t rows() const { return rows_.size(); }
  std::string to_csv() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes files under one directory and remembers what it wrote, in order.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir);

  void write(const std::string& name, const std::string& content);
  const std::filesystem::path& dir() const { return dir_; }
  const std::vector<std::string>& files() const { return files_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> files_;
};

/// Output directory: the explicit flag, else HAWKES_OUT_DIR, else "hawkes-out".
std::filesystem::path resolve_output_dir(const std::string& flag);

struct Manifest {
  std::string command;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string version;
  std::string started;
  std::string finished;
  double wall_seconds = 0.0;
  std::vector<std::string> outputs;
};

std::string manifest_json(const Manifest& manifest);
std::string utc_timestamp(std::chrono::system_clock::time_point when);
std::string hex64(std::uint64_t value);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  bool log_x = false;
  bool log_y = false;
  bool markers = false;              // draw points instead of lines
  std::vector<double> reference_y;   // dashed horizontal guides
};

/// Self-contained SVG line chart.
std::string svg_chart(const Chart& chart);

}  // namespace hawkes::io
