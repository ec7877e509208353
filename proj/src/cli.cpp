#include "pvalent/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pvalent/calculus_bounds.hpp"
#include "pvalent/error.hpp"
#include "pvalent/geometry.hpp"
#include "pvalent/hadamard.hpp"
#include "pvalent/operators.hpp"
#include "pvalent/oracle.hpp"
#include "pvalent/report_json.hpp"
#include "pvalent/selftest.hpp"

namespace pvalent::cli {

namespace {

using nlohmann::json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int report_error(std::ostream& err, std::string_view kind, const std::string& message,
                 const std::optional<Complex>& location = std::nullopt) {
  json j{{"error", kind}, {"message", message}};
  if (location) j["location"] = {{"re", location->real()}, {"im", location->imag()}};
  err << j.dump() << '\n';
  return kExitDomain;
}

// Class parameter flags. Only p, mu and delta have defaults.
struct ClassFlags {
  ClassParams cp;
  CLI::Option* alpha = nullptr;
  CLI::Option* a = nullptr;
  CLI::Option* b = nullptr;

  void add(CLI::App* sub, bool required) {
    sub->add_option("--p", cp.p, "valence")->capture_default_str();
    alpha = sub->add_option("--alpha", cp.alpha, "order alpha in [0, p)")->required(required);
    a = sub->add_option("--A", cp.A, "upper subordination parameter")->required(required);
    b = sub->add_option("--B", cp.B, "lower subordination parameter")->required(required);
    sub->add_option("--mu", cp.mu, "Rafid parameter mu in [0, 1)")->capture_default_str();
    sub->add_option("--delta", cp.delta, "Rafid parameter delta in [0, 1]")->capture_default_str();
  }

  bool given() const { return alpha->count() > 0 && a->count() > 0 && b->count() > 0; }

  const ClassParams& validated() const {
    if (!given()) fail(ErrorKind::BadFlag, "--alpha, --A and --B are required");
    cp.validate();
    return cp;
  }
};

struct SweepFlags {
  double r_min = 0.05;
  double r_max = 0.95;
  int steps = 19;
  std::string format = "csv";

  void add(CLI::App* sub) {
    sub->add_option("--rmin", r_min, "smallest radius")->capture_default_str();
    sub->add_option("--rmax", r_max, "largest radius")->capture_default_str();
    sub->add_option("--steps", steps, "number of radii")->capture_default_str();
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  }

  std::vector<double> radii() const {
    if (steps < 1) fail(ErrorKind::BadFlag, "--steps must be at least 1");
    if (!(r_min > 0.0 && r_max < 1.0 && r_min <= r_max))
      fail(ErrorKind::RadiusOutOfRange, "radii must satisfy 0 < rmin <= rmax < 1");
    if (steps == 1 && r_min != r_max) fail(ErrorKind::BadFlag, "--steps 1 needs rmin = rmax");
    std::vector<double> out;
    for (int i = 0; i < steps; ++i) out.push_back(steps == 1 ? r_min : r_min + (r_max - r_min) * i / (steps - 1));
    return out;
  }
};

ClassKind class_kind(const std::string& s) {
  if (s == "r") return ClassKind::R;
  if (s == "p") return ClassKind::P;
  fail(ErrorKind::BadFlag, "--class must be r or p");
}

json read_json(const std::string& path, std::istream& in) {
  auto parse = [&](std::istream& src) {
    try {
      return json::parse(src);
    } catch (const json::parse_error& e) {
      fail(ErrorKind::ParseError, path + ": " + e.what());
    }
  };
  if (path == "-") return parse(in);
  std::ifstream file(path);
  if (!file) throw IoError("cannot open " + path);
  return parse(file);
}

CoefficientSeries read_series(const std::string& path, std::istream& in) {
  return series_from_json(read_json(path, in));
}

// Writes to `path` or, when empty, to `out`.
void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(out);
    out.flush();
    return;
  }
  std::ofstream file(path);
  if (!file) throw IoError("cannot open " + path + " for writing");
  body(file);
  file.flush();
  if (!file) throw IoError("write to " + path + " failed");
}

void emit_json(const std::string& path, std::ostream& out, const json& j) {
  emit(path, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

std::uint64_t resolve_seed(const CLI::Option* flag, std::uint64_t flag_value) {
  if (flag->count() > 0) return flag_value;
  if (const char* env = std::getenv("PVALENT_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    fail(ErrorKind::BadFlag, "PVALENT_SEED must be a nonnegative integer");
  }
  return SelftestOptions{}.seed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coefficient criteria, bounds and numerical oracles for p-valent function classes"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");
  std::function<int()> action;

  // check
  auto* check = app.add_subcommand("check", "criterion sum and membership for a series");
  ClassFlags check_flags;
  check_flags.add(check, true);
  std::string check_class;
  std::string check_file;
  check->add_option("--class", check_class, "r or p")->required()->check(CLI::IsMember({"r", "p"}));
  check->add_option("series", check_file, "series JSON file, - for stdin")->required();
  check->callback([&] {
    action = [&] {
      const auto& cp = check_flags.validated();
      const auto f = read_series(check_file, in);
      auto j = to_json(check_membership(f, cp, class_kind(check_class)));
      j["class"] = check_class;
      emit_json("", out, j);
      return kExitOk;
    };
  });

  // extremal
  auto* extremal_cmd = app.add_subcommand("extremal", "single-term extremal series saturating the criterion");
  ClassFlags extremal_flags;
  extremal_flags.add(extremal_cmd, true);
  int extremal_k = 0;
  std::string extremal_class;
  std::string extremal_out;
  extremal_cmd->add_option("--k", extremal_k, "index of the tail term")->required();
  extremal_cmd->add_option("--class", extremal_class, "r or p")->required()->check(CLI::IsMember({"r", "p"}));
  extremal_cmd->add_option("-o,--output", extremal_out, "output file (default stdout)");
  extremal_cmd->callback([&] {
    action = [&] {
      const auto& cp = extremal_flags.validated();
      emit_json(extremal_out, out, to_json(extremal(extremal_k, cp, class_kind(extremal_class))));
      return kExitOk;
    };
  });

  // radius
  auto* radius_cmd = app.add_subcommand("radius", "radius of starlikeness, convexity or close-to-convexity");
  ClassFlags radius_flags;
  radius_flags.add(radius_cmd, true);
  std::string radius_kind;
  double radius_zeta = 0.0;
  int radius_kmax = 200;
  radius_cmd->add_option("--kind", radius_kind, "starlike, convex or ctc")->required();
  radius_cmd->add_option("--zeta", radius_zeta, "order zeta in [0, p)")->required();
  radius_cmd->add_option("--kmax", radius_kmax, "largest index searched")->capture_default_str();
  radius_cmd->callback([&] {
    action = [&] {
      const auto& cp = radius_flags.validated();
      const auto kind = radius_kind_from_string(radius_kind);
      emit_json("", out, to_json(radius(kind, cp, radius_zeta, radius_kmax)));
      return kExitOk;
    };
  });

  // distortion
  auto* distortion_cmd = app.add_subcommand("distortion", "distortion bounds for f^(m) over a radius sweep");
  ClassFlags distortion_flags;
  distortion_flags.add(distortion_cmd, true);
  SweepFlags distortion_sweep;
  distortion_sweep.add(distortion_cmd);
  int distortion_m = 0;
  std::string distortion_out;
  distortion_cmd->add_option("--m", distortion_m, "derivative order, 0 <= m <= p")->required();
  distortion_cmd->add_option("-o,--output", distortion_out, "output file (default stdout)");
  distortion_cmd->callback([&] {
    action = [&] {
      const auto& cp = distortion_flags.validated();
      const auto radii = distortion_sweep.radii();
      const auto curve = distortion_curve(cp, distortion_m, radii.front(), radii.back(), distortion_sweep.steps);
      if (!curve.certified)
        err << "warning: the k = p+1 extremal does not maximize the weighted tail for these parameters; "
               "the bounds are not implied by the coefficient criterion\n";
      if (distortion_sweep.format == "csv") {
        emit(distortion_out, out, [&](std::ostream& os) { write_csv(os, curve); });
      } else {
        json rows = json::array();
        for (const auto& s : curve.samples) rows.push_back({{"r", s.r}, {"lower", s.lower}, {"upper", s.upper}});
        emit_json(distortion_out, out, {{"m", curve.m}, {"certified", curve.certified}, {"samples", rows}});
      }
      return kExitOk;
    };
  });

  // hadamard
  auto* hadamard_cmd = app.add_subcommand("hadamard", "class order of a modified Hadamard product");
  ClassFlags hadamard_flags;
  hadamard_flags.add(hadamard_cmd, true);
  std::vector<std::string> hadamard_files;
  bool hadamard_extremal = false;
  double hadamard_beta = 0.0;
  int hadamard_kmax = 200;
  auto* beta_opt = hadamard_cmd->add_option("--beta", hadamard_beta, "order of the second factor (default alpha)");
  hadamard_cmd->add_flag("--extremal", hadamard_extremal, "use the k = p+1 extremals of orders alpha and beta");
  hadamard_cmd->add_option("--kmax", hadamard_kmax, "largest index in the order profile")->capture_default_str();
  hadamard_cmd->add_option("series", hadamard_files, "two series JSON files")->expected(0, 2);
  hadamard_cmd->callback([&] {
    action = [&] {
      const auto& cp = hadamard_flags.validated();
      const double beta = beta_opt->count() > 0 ? hadamard_beta : cp.alpha;
      if (hadamard_extremal ? !hadamard_files.empty() : hadamard_files.size() != 2)
        fail(ErrorKind::BadFlag, "pass either --extremal or two series files");
      const auto report = mixed_order_xi(cp, beta, hadamard_kmax);
      if (hadamard_extremal) {
        emit_json("", out, to_json(report));
        return kExitOk;
      }
      const auto f = read_series(hadamard_files[0], in);
      const auto g = read_series(hadamard_files[1], in);
      const auto h = hadamard_product(f, g);
      const auto largest = largest_member_order(h, cp);
      json j{{"report", to_json(report)},
             {"f_member", check_r_membership(f, cp).member},
             {"g_member", check_r_membership(g, cp.with_alpha(beta)).member},
             {"product", to_json(h)},
             {"product_largest_order", largest ? json(*largest) : json(nullptr)}};
      if (report.order >= 0.0 && report.order < cp.p)
        j["product_member_at_order"] = check_r_membership(h, cp.with_alpha(report.order)).member;
      emit_json("", out, j);
      return kExitOk;
    };
  });

  // fracbound
  auto* frac_cmd = app.add_subcommand("fracbound", "bounds for Bernardi / fractional calculus compositions");
  ClassFlags frac_flags;
  frac_flags.add(frac_cmd, true);
  SweepFlags frac_sweep;
  frac_sweep.add(frac_cmd);
  int frac_theorem = 0;
  double frac_c = 0.0;
  double frac_eta = 0.0;
  double frac_audit_r = 0.5;
  bool frac_printed = false;
  bool frac_audit = false;
  std::string frac_out;
  frac_cmd->add_option("--theorem", frac_theorem,
                       "7: D^-eta J_c, 8: D^eta J_c, 9: J_c D^eta, 10: J_c D^-eta")
      ->required();
  frac_cmd->add_option("--c", frac_c, "Bernardi parameter, c > -p")->required();
  frac_cmd->add_option("--eta", frac_eta, "fractional order")->required();
  frac_cmd->add_flag("--as-printed", frac_printed, "also emit the published closed forms");
  frac_cmd->add_flag("--audit", frac_audit, "emit the derived-vs-published audit as JSON instead");
  frac_cmd->add_option("--r", frac_audit_r, "radius for --audit")->capture_default_str();
  frac_cmd->add_option("-o,--output", frac_out, "output file (default stdout)");
  frac_cmd->callback([&] {
    action = [&] {
      const auto& cp = frac_flags.validated();
      const auto comp = composition_from_index(frac_theorem);
      validate_composition(comp, cp.p, frac_c, frac_eta);
      if (frac_audit) {
        json entries = json::array();
        for (const auto& e : printed_form_audit(cp, frac_c, frac_eta, frac_audit_r)) entries.push_back(to_json(e));
        emit_json(frac_out, out, entries);
        return kExitOk;
      }
      std::vector<CompositionBound> rows;
      for (double r : frac_sweep.radii()) rows.push_back(composition_bound(comp, cp, frac_c, frac_eta, r));
      if (!rows.front().certified)
        err << "warning: the k = p+1 extremal does not maximize the weighted tail for these parameters; "
               "the bounds are not implied by the coefficient criterion\n";
      if (frac_sweep.format == "csv") {
        emit(frac_out, out, [&](std::ostream& os) { write_csv(os, rows, frac_printed); });
      } else {
        json arr = json::array();
        for (const auto& b : rows) {
          json row{{"r", b.r}, {"lower", b.lower}, {"upper", b.upper}};
          if (frac_printed) {
            row["printed_lower"] = b.printed_lower;
            row["printed_upper"] = b.printed_upper;
          }
          arr.push_back(row);
        }
        emit_json(frac_out, out,
                  {{"composition", to_string(comp)}, {"certified", rows.front().certified}, {"rows", arr}});
      }
      return kExitOk;
    };
  });

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "sample the defining inequality on circles");
  ClassFlags oracle_flags;
  oracle_flags.add(oracle_cmd, false);
  std::string oracle_check;
  double oracle_zeta = 0.0;
  double oracle_r = 0.0;
  int oracle_angles = 256;
  int oracle_refine = 2;
  bool oracle_serial = false;
  std::string oracle_file;
  oracle_cmd->add_option("--check", oracle_check, "subordination, starlike, convex or ctc")
      ->required()
      ->check(CLI::IsMember({"subordination", "starlike", "convex", "ctc"}));
  auto* zeta_opt = oracle_cmd->add_option("--zeta", oracle_zeta, "order zeta for starlike, convex and ctc");
  auto* r_opt = oracle_cmd->add_option("--r", oracle_r, "circle radius (subordination: default grid)");
  oracle_cmd->add_option("--angles", oracle_angles, "angles per circle")->capture_default_str();
  oracle_cmd->add_option("--refine", oracle_refine, "angular bisection passes")->capture_default_str();
  oracle_cmd->add_flag("--serial", oracle_serial, "use the serial reference kernel");
  oracle_cmd->add_option("series", oracle_file, "series JSON file, - for stdin")->required();
  oracle_cmd->callback([&] {
    action = [&] {
      const auto exec = oracle_serial ? Execution::Serial : Execution::Parallel;
      if (oracle_check == "subordination") {
        const auto& cp = oracle_flags.validated();
        const auto f = read_series(oracle_file, in);
        SampleGrid grid = SampleGrid::standard();
        if (r_opt->count() > 0) grid.radii = {oracle_r};
        grid.angles_per_radius = oracle_angles;
        grid.refinement = oracle_refine;
        emit_json("", out, to_json(subordination_margin(f, cp, grid, exec)));
        return kExitOk;
      }
      if (zeta_opt->count() == 0 || r_opt->count() == 0)
        fail(ErrorKind::BadFlag, "--zeta and --r are required for " + oracle_check);
      const auto f = read_series(oracle_file, in);
      OracleReport report;
      if (oracle_check == "starlike")
        report = starlike_min_re(f, oracle_zeta, oracle_r, oracle_angles, oracle_refine, exec);
      else if (oracle_check == "convex")
        report = convex_min_re(f, oracle_zeta, oracle_r, oracle_angles, oracle_refine, exec);
      else
        report = ctc_max_dev(f, oracle_zeta, oracle_r, oracle_angles, oracle_refine, exec);
      emit_json("", out, to_json(report));
      return kExitOk;
    };
  });

  // rafid
  auto* rafid_cmd = app.add_subcommand("rafid", "Rafid operator at a point: closed form and quadrature");
  RafidParams rafid_params;
  QuadratureConfig rafid_quad;
  double rafid_re = 0.0;
  double rafid_im = 0.0;
  bool rafid_no_fallback = false;
  std::string rafid_file;
  rafid_cmd->add_option("--mu", rafid_params.mu, "mu in [0, 1)")->capture_default_str();
  rafid_cmd->add_option("--delta", rafid_params.delta, "delta in [0, 1]")->capture_default_str();
  rafid_cmd->add_option("--nodes", rafid_quad.nodes, "Gauss-Laguerre nodes")->capture_default_str();
  rafid_cmd->add_option("--re", rafid_re, "real part of z")->required();
  rafid_cmd->add_option("--im", rafid_im, "imaginary part of z")->capture_default_str();
  rafid_cmd->add_flag("--no-fallback", rafid_no_fallback, "fail instead of using the closed form when delta = 0");
  rafid_cmd->add_option("series", rafid_file, "series JSON file, - for stdin")->required();
  rafid_cmd->callback([&] {
    action = [&] {
      rafid_params.validate();
      rafid_quad.closed_form_fallback = !rafid_no_fallback;
      const auto f = read_series(rafid_file, in);
      const Complex z{rafid_re, rafid_im};
      const Complex closed = evaluate(apply_rafid(f, rafid_params), z);
      const Complex quad = rafid_quadrature(f, rafid_params, z, rafid_quad);
      const double scale = std::abs(closed);
      emit_json("", out,
                {{"z", {{"re", z.real()}, {"im", z.imag()}}},
                 {"closed_form", {{"re", closed.real()}, {"im", closed.imag()}}},
                 {"quadrature", {{"re", quad.real()}, {"im", quad.imag()}}},
                 {"nodes", rafid_quad.nodes},
                 {"relative_difference", scale > 0.0 ? std::abs(quad - closed) / scale : std::abs(quad - closed)}});
      return kExitOk;
    };
  });

  // selftest
  auto* selftest_cmd = app.add_subcommand("selftest", "run the acceptance property suites");
  std::uint64_t selftest_seed = 0;
  bool selftest_json = false;
  bool selftest_serial = false;
  SelftestOptions selftest_opt;
  auto* seed_opt = selftest_cmd->add_option("--seed", selftest_seed, "random seed (env PVALENT_SEED as fallback)");
  selftest_cmd->add_option("--nodes", selftest_opt.quadrature_nodes, "Gauss-Laguerre nodes")->capture_default_str();
  selftest_cmd->add_flag("--json", selftest_json, "JSON instead of a table");
  selftest_cmd->add_flag("--serial", selftest_serial, "use the serial oracle kernel");
  selftest_cmd->callback([&] {
    action = [&] {
      selftest_opt.seed = resolve_seed(seed_opt, selftest_seed);
      selftest_opt.execution = selftest_serial ? Execution::Serial : Execution::Parallel;
      const auto results = run_acceptance(selftest_opt);
      const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
      if (selftest_json) {
        json rows = json::array();
        for (const auto& r : results)
          rows.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        json audit = json::array();
        for (const auto& e : acceptance_audit()) audit.push_back(to_json(e));
        emit_json("", out, {{"seed", selftest_opt.seed}, {"pass", all}, {"criteria", rows}, {"audit", audit}});
      } else {
        for (const auto& r : results)
          out << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name << "  " << r.detail << '\n';
        out << "seed " << selftest_opt.seed << '\n';
      }
      return all ? kExitOk : kExitDomain;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return report_error(err, to_string(ErrorKind::BadFlag), e.what());
  }

  try {
    return action ? action() : report_error(err, to_string(ErrorKind::BadFlag), "no subcommand");
  } catch (const DomainError& e) {
    return report_error(err, to_string(e.kind()), e.what(), e.location());
  } catch (const IoError& e) {
    report_error(err, "IoError", e.what());
    return kExitIo;
  }
}

}  // namespace pvalent::cli
