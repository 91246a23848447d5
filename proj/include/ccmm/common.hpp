#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ccmm {

using Element = std::uint64_t;
using ClassId = std::uint32_t;
using Point = std::uint32_t;

/// Outcome of an exhaustive check. `unchecked` is reported whenever a cap or a
/// sampling mode prevented the full sweep; it is never promoted to `pass`.
enum class Verdict { pass, fail, unchecked };

const char* to_string(Verdict v);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// An expected negative outcome (failed hypothesis, invalid fusion, ...) that
/// carries a human-readable witness.
class Rejection : public Error {
 public:
  Rejection(const std::string& what, std::string witness)
      : Error(what + ": " + witness), witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

/// Default limits shared by the construction and verification routines.
struct Limits {
  std::uint64_t points = 20000;        // configuration point cap
  std::uint64_t group_verify = 4096;   // exhaustive group-axiom cap (order)
  std::uint64_t spectral = 2000;       // character-degree rank cap
};

}  // namespace ccmm
