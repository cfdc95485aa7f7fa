#pragma once

#include <stdexcept>
#include <string>

namespace msml {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by the textual front ends (.msig, formulas, .mmod, .max, .mpf, .mba,
// .smc). Carries a 1-based line number when the input is line-oriented; 0 when
// the input is a single formula string.
struct ParseError : Error {
  int line;
  ParseError(const std::string& msg, int line_no = 0)
      : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
        line(line_no) {}
};

// Raised on ill-sorted trees, unknown symbols, arity mismatches.
struct SortError : Error {
  using Error::Error;
};

}  // namespace msml
