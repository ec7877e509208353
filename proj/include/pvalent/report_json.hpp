#pragma once

#include <ostream>
#include <vector>

#include <nlohmann/json.hpp>

#include "pvalent/calculus_bounds.hpp"
#include "pvalent/classes.hpp"
#include "pvalent/geometry.hpp"
#include "pvalent/hadamard.hpp"
#include "pvalent/oracle.hpp"

namespace pvalent {

nlohmann::json to_json(const ClassParams& cp);
nlohmann::json to_json(const MembershipReport& report);
nlohmann::json to_json(const RadiusReport& report);
nlohmann::json to_json(const ConvolutionOrderReport& report);
nlohmann::json to_json(const OracleReport& report);
nlohmann::json to_json(const AuditEntry& entry);

// CSV with header `r,lower,upper`.
void write_csv(std::ostream& out, const BoundCurve& curve);
// CSV with header `r,lower,upper` or, with `printed`, `r,lower,upper,printed_lower,printed_upper`.
void write_csv(std::ostream& out, const std::vector<CompositionBound>& rows, bool printed);

}  // namespace pvalent
