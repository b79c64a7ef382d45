#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slicemon {

/// Base class of all errors raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed trace, annotated trace or NFA text.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// An event label that is not part of an automaton's alphabet.
class AlphabetError : public Error {
public:
  using Error::Error;
};

/// Two traces that are not permutations of each other under per-thread order.
class NoPermutationError : public Error {
public:
  using Error::Error;
};

/// Brute-force oracle input larger than the configured bound.
class BoundExceededError : public Error {
public:
  using Error::Error;
};

/// A precondition on an argument was violated (range, malformed generator input).
class ArgumentError : public Error {
public:
  using Error::Error;
};

} // namespace slicemon
