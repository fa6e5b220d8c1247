#include "k1lab/error.hpp"

namespace k1lab {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ConfigMismatch: return "ConfigMismatch";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::NonUnit: return "NonUnit";
    case ErrorKind::ZeroResidue: return "ZeroResidue";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotAutomorphism: return "NotAutomorphism";
    case ErrorKind::OrderViolation: return "OrderViolation";
    case ErrorKind::BadCayleyTable: return "BadCayleyTable";
    case ErrorKind::NotSubgroupChain: return "NotSubgroupChain";
    case ErrorKind::BadChain: return "BadChain";
    case ErrorKind::NotGaloisStable: return "NotGaloisStable";
    case ErrorKind::NotInRadical: return "NotInRadical";
    case ErrorKind::NotInScaledIdeal: return "NotInScaledIdeal";
    case ErrorKind::IntegralityViolation: return "IntegralityViolation";
    case ErrorKind::NotCyclic: return "NotCyclic";
    case ErrorKind::NonIntegral: return "NonIntegral";
    case ErrorKind::DenominatorNotCleared: return "DenominatorNotCleared";
    case ErrorKind::BadSpecPoint: return "BadSpecPoint";
    case ErrorKind::NotDeltaInvariant: return "NotDeltaInvariant";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void raise(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace k1lab
