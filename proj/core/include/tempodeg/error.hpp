#pragma once

#include <stdexcept>
#include <string>

namespace tempodeg {

// Invalid argument to an operation (bad factor, even window, malformed mask...).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Clip or buffer dimensions that do not match what an operation expects.
class ShapeError : public ParameterError {
 public:
  explicit ShapeError(const std::string& what) : ParameterError(what) {}
};

// Unsupported or corrupt on-disk format (non-C444 y4m, truncated frame, bad PNG).
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// Frame-sequence directory with missing or out-of-order indices.
class SequenceError : public FormatError {
 public:
  explicit SequenceError(const std::string& what) : FormatError(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or unpaired detection/score sidecar.
class SidecarError : public std::runtime_error {
 public:
  explicit SidecarError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tempodeg
