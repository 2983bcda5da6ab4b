#pragma once

#include <charconv>
#include <stdexcept>
#include <string>

namespace orbitlab {

/// Shortest round-trip decimal form of x, for diagnostics.
inline std::string format_number(double x) {
  char buf[32];
  if (x == 0.0) x = 0.0;  // no "-0"
  const auto r = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, r.ptr);
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two points are antipodal (or further) along the closed geodesic.
class CutLocusError : public Error {
 public:
  using Error::Error;
};

/// Newton inversion of a circle map failed; usually 1 + u' <= 0 somewhere.
class NonInvertibleError : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Velocity and momentum grids violate 2 V dp <= 1, or grids do not match.
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

/// A fiber support left the admissible band, or a kernel left the chart.
class SupportOverflowError : public Error {
 public:
  using Error::Error;
};

class UnknownSuiteError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, int line = 0, std::string field = {})
      : Error(format(message, line, field)), message_(message), line_(line), field_(std::move(field)) {}

  const std::string& message() const { return message_; }
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  static std::string format(const std::string& message, int line, const std::string& field) {
    std::string out = "config";
    if (line > 0) out += ":" + std::to_string(line);
    if (!field.empty()) out += " [" + field + "]";
    return out + ": " + message;
  }

  std::string message_;
  int line_;
  std::string field_;
};

}  // namespace orbitlab
