#pragma once

#include <stdexcept>
#include <string>

namespace wwr {

// Base of everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem-level failure: missing file, unreadable directory, short write.
class IoError : public Error {
  using Error::Error;
};

// Input text is not parseable at all (e.g. malformed JSON, bad CSV row).
class ParseError : public Error {
  using Error::Error;
};

// Document parsed but does not match the expected schema.
class SchemaError : public Error {
  using Error::Error;
};

// A value violates a stated precondition or invariant.
class ValidationError : public Error {
  using Error::Error;
};

// Two rasters that must share dimensions do not.
class ShapeError : public Error {
  using Error::Error;
};

// A file is structurally valid but in an unsupported layout (wrong magic,
// wrong bit depth, wrong channel count).
class FormatError : public Error {
  using Error::Error;
};

// A geometric configuration admits no solution (collinear quad, singular H).
class DegeneracyError : public Error {
  using Error::Error;
};

// Automatic corner/line detection found nothing usable.
class DetectionError : public Error {
  using Error::Error;
};

// Two record sets that must pair one-to-one by id do not.
class PairingError : public Error {
  using Error::Error;
};

// Conflicting files claim the same dataset id.
class AmbiguityError : public Error {
  using Error::Error;
};

}  // namespace wwr
