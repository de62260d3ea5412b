#pragma once

#include <stdexcept>
#include <string>

namespace fm {

// Base class for all library errors.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Parameter or input outside the documented domain.
class validation_error : public error {
 public:
  explicit validation_error(const std::string& what) : error(what) {}
};

// A level finer than the tree depth was requested.
class resolution_error : public error {
 public:
  explicit resolution_error(const std::string& what) : error(what) {}
};

// Restriction to a zero-mass cell selection.
class empty_restriction_error : public error {
 public:
  explicit empty_restriction_error(const std::string& what) : error(what) {}
};

// A pin or vantage point violates the required distance from the support.
class separation_error : public error {
 public:
  explicit separation_error(const std::string& what) : error(what) {}
};

// Malformed measure/report file.
class format_error : public error {
 public:
  explicit format_error(const std::string& what) : error(what) {}
};

}  // namespace fm
