#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace cutfem {

using Point = Eigen::Vector2d;
using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Which sign of the level set a region occupies. Inside is {phi < 0}.
enum class Side { Inside, Outside };

inline Side opposite(Side s) { return s == Side::Inside ? Side::Outside : Side::Inside; }

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

class SingularSystemError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace cutfem
