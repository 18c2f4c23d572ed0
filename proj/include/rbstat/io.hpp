#ifndef RBSTAT_IO_HPP
#define RBSTAT_IO_HPP

// CSV ingestion/emission and JSON report serialization for the CLI.
//
// CSV schemas (headers optional everywhere):
//   time series      value
//   spatial          x,y,value
//   spatio-temporal  x,y,t,value
//   point pattern    x,y with a leading comment  # window x0 x1 y0 y1
//                    (missing window falls back to the bounding box)

#include <json.hpp>
#include <string>
#include <vector>

#include "rbstat/common.hpp"
#include "rbstat/detect.hpp"
#include "rbstat/point_process.hpp"

namespace rbstat {

using ordered_json = nlohmann::ordered_json;

std::vector<double> read_value_csv(const std::string& path);

struct SpatialData {
  std::vector<Point> locations;
  std::vector<double> values;
};
SpatialData read_spatial_csv(const std::string& path);

struct SpacetimeData {
  std::vector<Point> locations;  // one entry per row
  std::vector<double> times;
  std::vector<double> values;
};
SpacetimeData read_spacetime_csv(const std::string& path);

// Returns the pattern plus whether the window came from a header (false
// means bounding-box fallback; the CLI warns).
std::pair<PointPattern, bool> read_pattern_csv(const std::string& path);

void write_value_csv(const std::string& path, const std::vector<double>& values);
void write_spatial_csv(const std::string& path, const std::vector<Point>& locations,
                       const std::vector<double>& values);
void write_spacetime_csv(const std::string& path, const SpacetimeData& data);
void write_pattern_csv(const std::string& path, const PointPattern& pattern);

// Report serialization.  `bands` may be empty for the single-trajectory
// detectors.
ordered_json report_to_json(const DetectionReport& report, const ordered_json& config,
                            std::uint64_t seed);
ordered_json covariance_report_to_json(const CovarianceReport& report, const ordered_json& config,
                                       std::uint64_t seed);

void write_json(const std::string& path, const ordered_json& j);

// Plot-ready trajectory CSV: j,s,c,y,post_mean,post_var.
void write_trajectory_csv(const std::string& path, const DetectionReport& report);

}  // namespace rbstat

#endif  // RBSTAT_IO_HPP
