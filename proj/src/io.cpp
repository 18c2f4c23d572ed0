#include "rbstat/io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace rbstat {

namespace {

bool is_comment_or_blank(const std::string& line) {
  for (const char ch : line) {
    if (ch == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;  // blank
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    // Trim surrounding whitespace (and a stray \r from CRLF files).
    std::size_t b = 0, e = field.size();
    while (b < e && std::isspace(static_cast<unsigned char>(field[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(field[e - 1]))) --e;
    out.push_back(field.substr(b, e - b));
  }
  return out;
}

bool parse_double(const std::string& s, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(s, &pos);
    return pos == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

// Read all data rows with exactly `n_cols` numeric fields.  A single leading
// non-numeric row is accepted as a header; anything else is an error.
std::vector<std::vector<double>> read_numeric_rows(const std::string& path, std::size_t n_cols,
                                                   std::vector<std::string>* comments = nullptr) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool saw_data = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) {
      if (comments && line.find('#') != std::string::npos) comments->push_back(line);
      continue;
    }
    const auto fields = split_csv(line);
    if (fields.size() != n_cols) {
      throw input_error(path + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(n_cols) + " fields, got " + std::to_string(fields.size()));
    }
    std::vector<double> row(n_cols);
    bool numeric = true;
    for (std::size_t i = 0; i < n_cols && numeric; ++i) numeric = parse_double(fields[i], row[i]);
    if (!numeric) {
      if (!saw_data) continue;  // header row
      throw input_error(path + ":" + std::to_string(line_no) + ": non-numeric field");
    }
    saw_data = true;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<double> read_value_csv(const std::string& path) {
  const auto rows = read_numeric_rows(path, 1);
  if (rows.empty()) throw input_error("no data rows in " + path);
  std::vector<double> values(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) values[i] = rows[i][0];
  return values;
}

SpatialData read_spatial_csv(const std::string& path) {
  const auto rows = read_numeric_rows(path, 3);
  if (rows.empty()) throw input_error("no data rows in " + path);
  SpatialData out;
  out.locations.reserve(rows.size());
  out.values.reserve(rows.size());
  for (const auto& r : rows) {
    out.locations.push_back({r[0], r[1]});
    out.values.push_back(r[2]);
  }
  return out;
}

SpacetimeData read_spacetime_csv(const std::string& path) {
  const auto rows = read_numeric_rows(path, 4);
  if (rows.empty()) throw input_error("no data rows in " + path);
  SpacetimeData out;
  for (const auto& r : rows) {
    out.locations.push_back({r[0], r[1]});
    out.times.push_back(r[2]);
    out.values.push_back(r[3]);
  }
  return out;
}

std::pair<PointPattern, bool> read_pattern_csv(const std::string& path) {
  std::vector<std::string> comments;
  const auto rows = read_numeric_rows(path, 2, &comments);
  if (rows.empty()) throw input_error("no data rows in " + path);

  PointPattern pattern;
  pattern.points.reserve(rows.size());
  for (const auto& r : rows) pattern.points.push_back({r[0], r[1]});

  bool have_window = false;
  for (const auto& c : comments) {
    const auto pos = c.find("window");
    if (pos == std::string::npos) continue;
    std::stringstream ss(c.substr(pos + 6));
    Window w;
    if (ss >> w.x0 >> w.x1 >> w.y0 >> w.y1) {
      if (w.x1 <= w.x0 || w.y1 <= w.y0) throw input_error("degenerate window in " + path);
      pattern.window = w;
      have_window = true;
      break;
    }
  }
  if (!have_window) {
    // Bounding-box fallback; the caller is expected to warn.
    Window w{pattern.points[0].x, pattern.points[0].x, pattern.points[0].y, pattern.points[0].y};
    for (const Point& p : pattern.points) {
      w.x0 = std::min(w.x0, p.x);
      w.x1 = std::max(w.x1, p.x);
      w.y0 = std::min(w.y0, p.y);
      w.y1 = std::max(w.y1, p.y);
    }
    pattern.window = w;
  }
  for (const Point& p : pattern.points) {
    if (!pattern.window.contains(p)) throw input_error("point outside window in " + path);
  }
  return {pattern, have_window};
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot open file for writing: " + path);
  out.precision(std::numeric_limits<double>::max_digits10);
  return out;
}

}  // namespace

void write_value_csv(const std::string& path, const std::vector<double>& values) {
  auto out = open_out(path);
  out << "value\n";
  for (const double v : values) out << v << "\n";
}

void write_spatial_csv(const std::string& path, const std::vector<Point>& locations,
                       const std::vector<double>& values) {
  if (locations.size() != values.size()) {
    throw input_error("write_spatial_csv: locations/values size mismatch");
  }
  auto out = open_out(path);
  out << "x,y,value\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << locations[i].x << "," << locations[i].y << "," << values[i] << "\n";
  }
}

void write_spacetime_csv(const std::string& path, const SpacetimeData& data) {
  if (data.locations.size() != data.values.size() || data.times.size() != data.values.size()) {
    throw input_error("write_spacetime_csv: column size mismatch");
  }
  auto out = open_out(path);
  out << "x,y,t,value\n";
  for (std::size_t i = 0; i < data.values.size(); ++i) {
    out << data.locations[i].x << "," << data.locations[i].y << "," << data.times[i] << ","
        << data.values[i] << "\n";
  }
}

void write_pattern_csv(const std::string& path, const PointPattern& pattern) {
  auto out = open_out(path);
  out << "# window " << pattern.window.x0 << " " << pattern.window.x1 << " " << pattern.window.y0
      << " " << pattern.window.y1 << "\n";
  out << "x,y\n";
  for (const Point& p : pattern.points) out << p.x << "," << p.y << "\n";
}

namespace {

ordered_json stages_to_json(const std::vector<StageRecord>& stages) {
  ordered_json arr = ordered_json::array();
  for (const StageRecord& st : stages) {
    ordered_json rec;
    rec["j"] = st.j;
    rec["s"] = st.s;
    rec["c"] = st.c;
    rec["y"] = st.y;
    rec["post_mean"] = st.post_mean;
    rec["post_var"] = st.post_var;
    arr.push_back(std::move(rec));
  }
  return arr;
}

}  // namespace

ordered_json report_to_json(const DetectionReport& report, const ordered_json& config,
                            std::uint64_t seed) {
  ordered_json j;
  j["verdict"] = to_string(report.verdict);
  j["stages"] = stages_to_json(report.stages);
  j["bands"] = ordered_json::array();
  j["config"] = config;
  j["seed"] = seed;
  j["version"] = kVersion;
  return j;
}

ordered_json covariance_report_to_json(const CovarianceReport& report, const ordered_json& config,
                                       std::uint64_t seed) {
  ordered_json j;
  j["verdict"] = to_string(report.overall);
  j["stages"] = ordered_json::array();
  ordered_json bands = ordered_json::array();
  for (const BandReport& band : report.bands) {
    ordered_json b;
    b["h_lo"] = band.h_lo;
    b["h_hi"] = band.h_hi;
    b["valid"] = band.valid;
    b["verdict"] = band.valid ? to_string(band.report.verdict) : to_string(Verdict::NotVerifiable);
    b["stages"] = stages_to_json(band.report.stages);
    bands.push_back(std::move(b));
  }
  j["bands"] = std::move(bands);
  j["config"] = config;
  j["seed"] = seed;
  j["version"] = kVersion;
  return j;
}

void write_json(const std::string& path, const ordered_json& j) {
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

void write_trajectory_csv(const std::string& path, const DetectionReport& report) {
  auto out = open_out(path);
  out << "j,s,c,y,post_mean,post_var\n";
  for (const StageRecord& st : report.stages) {
    out << st.j << "," << st.s << "," << st.c << "," << st.y << "," << st.post_mean << ","
        << st.post_var << "\n";
  }
}

}  // namespace rbstat
