#ifndef SUBIOTA_ERRORS_HPP
#define SUBIOTA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace subiota {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Substituting a variable term that would be captured by a binder.
struct CaptureError : Error {
  explicit CaptureError(const std::string& what) : Error(what) {}
};

// Empty qualified-identity predicate sets are rejected, not read as vacuous.
struct EmptyQSetError : Error {
  explicit EmptyQSetError(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
  std::size_t offset;
  ParseError(const std::string& what, std::size_t off)
      : Error(what + " (at offset " + std::to_string(off) + ")"), offset(off) {}
};

// Raised by rewriting when a conversion cannot be carried out at the
// requested position (pattern vanished or no fresh eigensymbol exists).
struct ConversionError : Error {
  explicit ConversionError(const std::string& what) : Error(what) {}
};

}  // namespace subiota

#endif
