#include "pvalent/report_json.hpp"

#include <iomanip>
#include <limits>

namespace pvalent {

namespace {

nlohmann::json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

nlohmann::json pairs_json(const std::vector<std::pair<int, double>>& values) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [k, v] : values) out.push_back({k, v});
  return out;
}

class CsvPrecision {
 public:
  explicit CsvPrecision(std::ostream& out) : out_(out), old_(out.precision()) {
    out_ << std::setprecision(std::numeric_limits<double>::max_digits10);
  }
  ~CsvPrecision() { out_.precision(old_); }

 private:
  std::ostream& out_;
  std::streamsize old_;
};

}  // namespace

nlohmann::json to_json(const ClassParams& cp) {
  return {{"p", cp.p}, {"alpha", cp.alpha}, {"A", cp.A}, {"B", cp.B}, {"mu", cp.mu}, {"delta", cp.delta}};
}

nlohmann::json to_json(const MembershipReport& report) {
  return {{"sum", report.sum},
          {"member", report.member},
          {"margin", report.margin},
          {"per_term", pairs_json(report.per_term)}};
}

nlohmann::json to_json(const RadiusReport& report) {
  nlohmann::json j{{"kind", to_string(report.kind)},
                   {"radius", report.radius},
                   {"argmin_k", report.argmin_k},
                   {"zeta", report.zeta},
                   {"whole_disk", report.whole_disk()},
                   {"monotone_tail", report.monotone_tail},
                   {"candidates", pairs_json(report.candidates)}};
  if (report.warning) j["warning"] = *report.warning;
  return j;
}

nlohmann::json to_json(const ConvolutionOrderReport& report) {
  return {{"order", report.order},
          {"saturating_k", report.saturating_k},
          {"verified_best", report.verified_best},
          {"phi_increasing", report.phi_increasing},
          {"saturation_sum", report.saturation_sum},
          {"perturbed_sum", report.perturbed_sum},
          {"phi", pairs_json(report.phi)}};
}

nlohmann::json to_json(const OracleReport& report) {
  return {{"extremum", report.extremum},
          {"arg_z", complex_json(report.arg_z)},
          {"pass", report.pass},
          {"threshold", report.threshold},
          {"tolerance", report.tolerance},
          {"on_positive_real_axis", report.on_positive_real_axis},
          {"real_axis_value", report.real_axis_value},
          {"warnings", report.warnings}};
}

nlohmann::json to_json(const AuditEntry& entry) {
  return {{"subject", entry.subject},   {"quantity", entry.quantity}, {"derived", entry.derived},
          {"printed", entry.printed},   {"diverges", entry.diverges}, {"note", entry.note}};
}

void write_csv(std::ostream& out, const BoundCurve& curve) {
  CsvPrecision guard(out);
  out << "r,lower,upper\n";
  for (const auto& s : curve.samples) out << s.r << ',' << s.lower << ',' << s.upper << '\n';
}

void write_csv(std::ostream& out, const std::vector<CompositionBound>& rows, bool printed) {
  CsvPrecision guard(out);
  out << (printed ? "r,lower,upper,printed_lower,printed_upper\n" : "r,lower,upper\n");
  for (const auto& b : rows) {
    out << b.r << ',' << b.lower << ',' << b.upper;
    if (printed) out << ',' << b.printed_lower << ',' << b.printed_upper;
    out << '\n';
  }
}

}  // namespace pvalent
