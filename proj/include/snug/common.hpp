#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace snug {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat32 = Eigen::Matrix<double, 3, 2>;

/// Base class for every error this library throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DegenerateFaceError : public Error {
 public:
  DegenerateFaceError(int face, const std::string& msg)
      : Error("degenerate face " + std::to_string(face) + ": " + msg), face_id(face) {}
  int face_id;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& msg)
      : Error("parse error at line " + std::to_string(line) + ": " + msg), line(line) {}
  int line;
};

class NonTriangularFaceError : public Error {
 public:
  explicit NonTriangularFaceError(int line_no)
      : Error("non-triangular face at line " + std::to_string(line_no)), line(line_no) {}
  int line;
};

class MeshError : public Error {
 public:
  explicit MeshError(const std::string& msg) : Error(msg) {}
};

class ShapeDimMismatchError : public Error {
 public:
  ShapeDimMismatchError(int got, int expected)
      : Error("shape coefficient count " + std::to_string(got) + " does not match model (" +
              std::to_string(expected) + ")") {}
};

class DimMismatchError : public Error {
 public:
  explicit DimMismatchError(const std::string& msg) : Error("dimension mismatch: " + msg) {}
};

class EmptyTapeError : public Error {
 public:
  EmptyTapeError() : Error("backward called on an empty or already-consumed tape") {}
};

class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& field)
      : Error("motion schema violation in field '" + field + "'"), field(field) {}
  std::string field;
};

class SequenceTooShortError : public Error {
 public:
  explicit SequenceTooShortError(const std::string& id)
      : Error("motion sequence '" + id + "' is shorter than the window length"), sequence_id(id) {}
  std::string sequence_id;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

inline bool all_finite(const std::vector<Vec3>& v) {
  for (const auto& x : v)
    if (!x.allFinite()) return false;
  return true;
}

}  // namespace snug
