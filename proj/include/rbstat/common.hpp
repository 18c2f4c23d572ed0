#ifndef RBSTAT_COMMON_HPP
#define RBSTAT_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rbstat {

inline constexpr const char* kVersion = "0.1.0";

// Thrown when caller-supplied data or parameters violate an operation's
// preconditions.  The CLI maps this to exit code 2.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when no grid value satisfies the requested calibration mode.
// The CLI maps this to exit code 3.
class calibration_error : public std::runtime_error {
 public:
  explicit calibration_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a covariance matrix cannot be factorized even after the
// jitter ladder is exhausted.
class singular_kernel_error : public std::runtime_error {
 public:
  explicit singular_kernel_error(const std::string& what) : std::runtime_error(what) {}
};

struct MeanVar {
  double mean = 0.0;
  double variance = 0.0;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

// splitmix64 step; used to derive independent substream seeds from a master
// seed so that adding a consumer never perturbs existing streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace rbstat

#endif  // RBSTAT_COMMON_HPP
