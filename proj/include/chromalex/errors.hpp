#pragma once

#include <stdexcept>
#include <string>

namespace chromalex {

/// Base class for all chromalex errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Unsupported or corrupt image bytes.
class DecodeError : public Error {
 public:
  using Error::Error;
};

/// An operation that needs at least one element received none.
class EmptyInput : public Error {
 public:
  using Error::Error;
};

/// KL divergence evaluated where q lacks support that p has.
class SupportError : public Error {
 public:
  using Error::Error;
};

/// Cosine similarity of a zero vector.
class ZeroVector : public Error {
 public:
  using Error::Error;
};

/// Malformed on-disk record; message names the offending word/field/line.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Vectors in one table disagree on dimension.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Word directory or search result missing entirely.
class NotFound : public Error {
 public:
  using Error::Error;
};

/// Fewer samples than an analysis needs.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// Collinear design matrix in regression.
class SingularDesign : public Error {
 public:
  using Error::Error;
};

/// Model comparison across different samples.
class SampleMismatch : public Error {
 public:
  using Error::Error;
};

/// Classifier training with a single class present.
class DegenerateLabels : public Error {
 public:
  using Error::Error;
};

/// Too few joinable word pairs for the metaphor task.
class InsufficientJoin : public Error {
 public:
  using Error::Error;
};

/// Bad CLI or config input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace chromalex
