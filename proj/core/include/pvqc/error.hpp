#pragma once

#include <stdexcept>
#include <string>

namespace pvqc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition or argument violation.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Malformed serialized record or text file.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Circuit or matrix fails a structural check (non-unitary, non-Hermitian, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Puzzle tag mismatch: corrupt puzzle or wrong parameters.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class LedgerError : public Error {
 public:
  using Error::Error;
};

// The designated-verifier prover declined to prove a false statement.
class ProofRefused : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pvqc
