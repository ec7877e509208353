#include "pvalent/error.hpp"

namespace pvalent {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NegativeCoefficient: return "NegativeCoefficient";
    case ErrorKind::IndexBelowValence: return "IndexBelowValence";
    case ErrorKind::DuplicateIndex: return "DuplicateIndex";
    case ErrorKind::OrderExceedsValence: return "OrderExceedsValence";
    case ErrorKind::ValenceMismatch: return "ValenceMismatch";
    case ErrorKind::NonpositiveArgument: return "NonpositiveArgument";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::RadiusOutOfRange: return "RadiusOutOfRange";
    case ErrorKind::QuadratureUnavailable: return "QuadratureUnavailable";
    case ErrorKind::DivergentInput: return "DivergentInput";
    case ErrorKind::ExponentUnderflow: return "ExponentUnderflow";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::PoleOnGrid: return "PoleOnGrid";
    case ErrorKind::BadFlag: return "BadFlag";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace pvalent
