#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rdfsupd {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed Turtle or SPARQL-lite text. Line and column are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, std::size_t line, std::size_t column)
      : Error("syntax error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Well-formed input that falls outside the supported fragment
// (literals, blank nodes, OPTIONAL, FILTER, ...).
class UnsupportedFeature : public Error {
 public:
  using Error::Error;
};

// A pattern form that is only legal in general BGPs.
class GeneralOnlyPattern : public UnsupportedFeature {
 public:
  using UnsupportedFeature::UnsupportedFeature;
};

class VarInPredicate : public GeneralOnlyPattern {
 public:
  using GeneralOnlyPattern::GeneralOnlyPattern;
};

// TBox-shaped atom (subClassOf, domain, ...) in a non-general BGP.
class TerminologicalPattern : public GeneralOnlyPattern {
 public:
  using GeneralOnlyPattern::GeneralOnlyPattern;
};

// RDF/RDFS/OWL vocabulary used outside the position that encodes it.
class NonStandardUse : public Error {
 public:
  using Error::Error;
};

// Store mode incompatible with the requested update semantics.
class ModeError : public Error {
 public:
  using Error::Error;
};

class NotApplicable : public Error {
 public:
  using Error::Error;
};

// Input too large for a brute-force routine.
class SizeLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace rdfsupd
