#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace afidaf {

using Shape = std::vector<std::int64_t>;

// Error taxonomy. Shape errors come from dimension mismatches, contract
// errors from violated preconditions, numeric errors from NaN/Inf, io
// errors from file handling.
class ShapeError : public std::runtime_error {
 public:
  explicit ShapeError(const std::string& msg) : std::runtime_error(msg) {}
};

class ContractError : public std::runtime_error {
 public:
  explicit ContractError(const std::string& msg) : std::runtime_error(msg) {}
};

class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

inline std::int64_t numel_of(const Shape& shape) {
  std::int64_t n = 1;
  for (auto e : shape) n *= e;
  return n;
}

inline std::string shape_str(const Shape& shape) {
  std::string s = "(";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(shape[i]);
  }
  s += ")";
  return s;
}

// Row-major strides.
inline Shape strides_of(const Shape& shape) {
  Shape st(shape.size(), 1);
  for (int i = static_cast<int>(shape.size()) - 2; i >= 0; --i)
    st[i] = st[i + 1] * shape[i + 1];
  return st;
}

// Worker count for parallel loops. Honors the AFIDAF_THREADS environment
// variable; values < 1 fall back to 1.
int worker_count();

// Splits [0, n) into contiguous ranges and runs fn(begin, end) on the pool.
// Partitioning depends only on n, so results are identical for any worker
// count as long as ranges write disjoint outputs. Small n runs inline.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& fn,
                  std::int64_t grain = 1);

// Runtime toggle for per-op output finiteness checks (used by the test and
// verification paths; off by default to keep inference cheap).
void set_finite_checks(bool on);
bool finite_checks_enabled();

}  // namespace afidaf
