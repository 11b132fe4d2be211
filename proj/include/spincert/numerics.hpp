#pragma once

#include <stdexcept>
#include <string>

namespace spincert {

// Central tolerance/limit record. Every numeric comparison in the library
// pulls its threshold from here so the whole stack agrees on what "equal"
// and "positive" mean.
struct Numerics {
  double physics_tol = 1e-10;     // physics identities (moment relations, sector support)
  double linalg_tol = 1e-12;      // trace / hermiticity / normalization hygiene
  double positivity_tol = 1e-10;  // eigenvalue floor for density matrices
  double degenerate_tol = 1e-12;  // fourth-moment variance treated as exactly zero below this
  double margin_tol = 1e-9;       // bound-violation threshold in oracle searches
  int dense_cap = 12;             // largest N for 2^N x 2^N dense work
  int spectral_check_dim = 256;   // full eigenvalue validation only below this dimension
};

inline const Numerics& default_numerics() {
  static const Numerics instance{};
  return instance;
}

struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct size_error : std::length_error {
  using std::length_error::length_error;
};

struct conversion_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct numerics_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File ingestion: structural problems (bad header, unreadable row).
struct parse_error : std::runtime_error {
  parse_error(const std::string& message, long line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_number(line) {}
  long line_number;
};

// File ingestion: well-formed rows whose values are out of range.
struct validation_error : std::runtime_error {
  validation_error(const std::string& message, long line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_number(line) {}
  long line_number;
};

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace spincert
