#pragma once

#include <stdexcept>
#include <string>

namespace k1lab {

enum class ErrorKind {
  ConfigMismatch,
  InvalidConfig,
  NonUnit,
  ZeroResidue,
  DimensionMismatch,
  NotAutomorphism,
  OrderViolation,
  BadCayleyTable,
  NotSubgroupChain,
  BadChain,
  NotGaloisStable,
  NotInRadical,
  NotInScaledIdeal,
  IntegralityViolation,
  NotCyclic,
  NonIntegral,
  DenominatorNotCleared,
  BadSpecPoint,
  NotDeltaInvariant,
  PrecisionExhausted,
  ParseError,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& message);

}  // namespace k1lab
