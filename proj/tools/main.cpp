// Command-line front end: reproduces the interval probabilities, localization
// coefficients, propagated interference patterns and (U, Csq) sweeps of the
// position-momentum interference analysis, as CSV/JSON files.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmint/analysis.hpp"
#include "pmint/errors.hpp"
#include "pmint/format.hpp"

using nlohmann::json;
using namespace pmint;

namespace {

struct ScenarioArgs {
  std::string family = "gaussian";
  std::optional<double> u, csq, sigma1, sigma2;
};

struct Resolved {
  Scenario scenario;
  Wavefunction phi_l;
};

Resolved resolve_scenario(const ScenarioArgs& a) {
  if (a.family == "rectangle") {
    if (!a.u)
      throw CLI::ValidationError("rectangle family requires --u");
    if (a.csq || a.sigma1 || a.sigma2)
      throw CLI::ValidationError(
          "rectangle family takes --u only (no --csq/--sigma1/--sigma2)");
    return {Scenario::from_suppression(*a.u), rectangle_localized(1.0)};
  }
  if (a.family != "gaussian")
    throw CLI::ValidationError("unknown family: " + a.family);

  const bool pair_uc = a.u.has_value() && a.csq.has_value();
  const bool pair_ss = a.sigma1.has_value() && a.sigma2.has_value();
  if (pair_uc == pair_ss || (a.u.has_value() != a.csq.has_value()) ||
      (a.sigma1.has_value() != a.sigma2.has_value()))
    throw CLI::ValidationError(
        "gaussian family requires exactly one of (--u, --csq) or (--sigma1, --sigma2)");

  if (pair_ss) {
    const Scenario sc = Scenario::from_sigmas(*a.sigma1, *a.sigma2);
    return {sc, Wavefunction::unit_gaussian(*a.sigma1)};
  }
  const Scenario sc = Scenario::from_suppression(*a.u);
  return {sc, gaussian_localized(*a.csq, sc.length)};
}

// Writes to the path, or stdout when the path is empty.
void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  os << content;
}

std::string report_json(const std::string& family, const ProbabilityReport& r) {
  std::ostringstream os;
  const auto f = format_sig9;
  os << "{\n"
     << "  \"family\": \"" << family << "\",\n"
     << "  \"scenario\": {\"L\": " << f(r.scenario.length)
     << ", \"U\": " << f(r.scenario.suppression)
     << ", \"B\": " << f(r.scenario.bandwidth())
     << ", \"time\": " << f(r.scenario.evolution_time())
     << ", \"sqrt_U\": " << f(r.sqrt_u) << "},\n"
     << "  \"coefficients\": {\"csq\": "
     << f(std::norm(r.coefficients.coherent_spread))
     << ", \"eta\": " << f(r.coefficients.mismatch)
     << ", \"gamma\": " << f(r.coefficients.cross_section) << "},\n"
     << "  \"probabilities\": {\"p_l\": " << f(r.p_l) << ", \"p_b\": " << f(r.p_b)
     << ", \"joint_lower\": " << f(r.joint_lower)
     << ", \"p_m_exact\": " << f(r.p_m_exact)
     << ", \"p_m_envelope\": " << f(r.p_m_envelope) << "},\n"
     << "  \"defects\": {\"exact\": " << f(r.defect_exact)
     << ", \"envelope\": " << f(r.defect_envelope)
     << ", \"bound\": " << f(r.defect_bound) << "},\n"
     << "  \"ratio\": " << (std::isfinite(r.ratio) ? f(r.ratio) : "null")
     << "\n}\n";
  return os.str();
}

std::string report_csv(const std::string& family, const ProbabilityReport& r) {
  std::ostringstream os;
  const auto f = format_sig9;
  os << "family,L,U,sqrt_U,csq,eta,gamma,p_l,p_b,joint_lower,p_m_exact,"
        "p_m_envelope,defect_exact,defect_envelope,defect_bound,ratio\n";
  os << family << ',' << f(r.scenario.length) << ',' << f(r.scenario.suppression)
     << ',' << f(r.sqrt_u) << ',' << f(std::norm(r.coefficients.coherent_spread))
     << ',' << f(r.coefficients.mismatch) << ',' << f(r.coefficients.cross_section)
     << ',' << f(r.p_l) << ',' << f(r.p_b) << ',' << f(r.joint_lower) << ','
     << f(r.p_m_exact) << ',' << f(r.p_m_envelope) << ',' << f(r.defect_exact)
     << ',' << f(r.defect_envelope) << ',' << f(r.defect_bound) << ','
     << f(r.ratio) << '\n';
  return os.str();
}

// --config JSON: keys are the long option names; command-line flags override.
void apply_config(CLI::App* cmd, const std::string& config_path) {
  if (config_path.empty()) return;
  std::ifstream is(config_path);
  if (!is) throw CLI::ValidationError("cannot open config file: " + config_path);
  json cfg;
  try {
    is >> cfg;
  } catch (const json::parse_error& e) {
    throw CLI::ValidationError(std::string("config parse error: ") + e.what());
  }
  for (auto& [key, value] : cfg.items()) {
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (!opt) throw CLI::ValidationError("config: unknown option: " + key);
    if (opt->count() > 0) continue;  // explicit flag wins
    if (value.is_boolean()) {
      if (value.get<bool>()) opt->add_result("true");
    } else if (value.is_string()) {
      opt->add_result(value.get<std::string>());
    } else {
      std::ostringstream os;
      os << value;
      opt->add_result(os.str());
    }
    opt->run_callback();
  }
}

void add_scenario_options(CLI::App* cmd, ScenarioArgs& args) {
  cmd->add_option("--family", args.family, "wavefunction family: gaussian|rectangle");
  cmd->add_option("--u", args.u, "uncertainty suppression factor U");
  cmd->add_option("--csq", args.csq, "squared coherent spread |C|^2");
  cmd->add_option("--sigma1", args.sigma1, "position width of the localized Gaussian");
  cmd->add_option("--sigma2", args.sigma2, "position width of the companion Gaussian");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"position-momentum interference analysis"};
  app.require_subcommand(1);

  // reproduce
  ScenarioArgs rep_args;
  std::string rep_out, rep_format = "json", rep_config;
  double rep_tol = 1e-10;
  CLI::App* rep = app.add_subcommand(
      "reproduce", "interval probabilities, defects and ratios for one scenario");
  add_scenario_options(rep, rep_args);
  rep->add_option("-o,--output", rep_out, "output path (stdout when omitted)");
  rep->add_option("--format", rep_format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  rep->add_option("--tolerance", rep_tol, "quadrature tolerance");
  rep->add_option("--config", rep_config, "JSON config file; flags override");

  // coeffs
  ScenarioArgs co_args;
  std::string co_out, co_format = "json", co_config;
  double co_tol = 1e-10;
  CLI::App* co = app.add_subcommand(
      "coeffs", "localization coefficients, closed form vs quadrature");
  co->add_option("--family", co_args.family, "gaussian|rectangle");
  co->add_option("--csq", co_args.csq, "squared coherent spread |C|^2");
  co->add_option("--u", co_args.u, "optional U, adds the companion width sigma2");
  co->add_option("-o,--output", co_out, "output path (stdout when omitted)");
  co->add_option("--format", co_format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  co->add_option("--tolerance", co_tol, "quadrature tolerance");
  co->add_option("--config", co_config, "JSON config file; flags override");

  // propagate
  ScenarioArgs pr_args;
  std::string pr_out = "density.csv", pr_config;
  double pr_xmax = 8.0, pr_tol = 1e-10;
  int pr_points = 801;
  bool pr_initial = false;
  CLI::App* pr = app.add_subcommand(
      "propagate", "density profile at the meeting time t = mL/B");
  add_scenario_options(pr, pr_args);
  pr->add_option("-o,--output", pr_out, "output CSV path");
  pr->add_option("--x-max", pr_xmax, "half-width of the sampled window");
  pr->add_option("--points", pr_points, "number of sample rows");
  pr->add_flag("--initial", pr_initial, "emit the t = 0 density instead");
  pr->add_option("--tolerance", pr_tol, "quadrature tolerance");
  pr->add_option("--config", pr_config, "JSON config file; flags override");

  // sweep
  std::string sw_family = "gaussian", sw_out = "sweep", sw_config;
  AxisRange sw_u{0.005, 0.05, 200};
  AxisRange sw_csq{0.3, 1.3, 200};
  CLI::App* sw = app.add_subcommand(
      "sweep", "defect-bound grid over (U, |C|^2) with located optimum");
  sw->add_option("--family", sw_family, "gaussian|rectangle");
  sw->add_option("--u-min", sw_u.lo, "U axis start");
  sw->add_option("--u-max", sw_u.hi, "U axis end");
  sw->add_option("--u-steps", sw_u.steps, "U axis points");
  sw->add_option("--csq-min", sw_csq.lo, "Csq axis start");
  sw->add_option("--csq-max", sw_csq.hi, "Csq axis end");
  sw->add_option("--csq-steps", sw_csq.steps, "Csq axis points");
  sw->add_option("-o,--output", sw_out, "output prefix for <prefix>.csv/.json");
  sw->add_option("--config", sw_config, "JSON config file; flags override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (rep->parsed()) {
      apply_config(rep, rep_config);
      const Resolved res = resolve_scenario(rep_args);
      const QuadratureSpec spec{rep_tol, rep_tol, 1 << 16};
      const PlusState state = build_plus_state(res.phi_l, res.scenario, spec);
      const ProbabilityReport report =
          probability_report(state, res.scenario, spec);
      emit(rep_out, rep_format == "json" ? report_json(rep_args.family, report)
                                         : report_csv(rep_args.family, report));
    } else if (co->parsed()) {
      apply_config(co, co_config);
      const QuadratureSpec spec{co_tol, co_tol, 1 << 16};
      LocalizationCoefficients closed{1.0, 0.0, 1.0};
      double csq = 1.0;
      Wavefunction phi_l = rectangle_localized(1.0);
      if (co_args.family == "gaussian") {
        if (!co_args.csq)
          throw CLI::ValidationError("coeffs: gaussian family requires --csq");
        csq = *co_args.csq;
        closed = gaussian_coefficients(csq);
        phi_l = gaussian_localized(csq, 1.0);
      } else if (co_args.family != "rectangle") {
        throw CLI::ValidationError("unknown family: " + co_args.family);
      }
      const LocalizationCoefficients quad = measure_localization(phi_l, 1.0, spec);
      const double sigma1 = csq / std::sqrt(8.0 * M_PI);
      const auto f = format_sig9;
      std::ostringstream os;
      if (co_format == "json") {
        os << "{\n  \"family\": \"" << co_args.family << "\",\n"
           << "  \"csq\": " << f(csq) << ",\n"
           << "  \"closed\": {\"eta\": " << f(closed.mismatch)
           << ", \"gamma\": " << f(closed.cross_section) << "},\n"
           << "  \"quadrature\": {\"csq\": " << f(std::norm(quad.coherent_spread))
           << ", \"eta\": " << f(quad.mismatch)
           << ", \"gamma\": " << f(quad.cross_section) << "},\n"
           << "  \"difference\": {\"eta\": "
           << f(std::abs(closed.mismatch - quad.mismatch))
           << ", \"gamma\": " << f(std::abs(closed.cross_section - quad.cross_section))
           << "},\n"
           << "  \"sigma1\": " << f(sigma1);
        if (co_args.u)
          os << ",\n  \"sigma2\": "
             << f(gaussian_sigmas(csq, *co_args.u, 1.0).second);
        os << "\n}\n";
      } else {
        os << "family,csq,eta_closed,gamma_closed,csq_quadrature,eta_quadrature,"
              "gamma_quadrature,sigma1";
        if (co_args.u) os << ",sigma2";
        os << '\n'
           << co_args.family << ',' << f(csq) << ',' << f(closed.mismatch) << ','
           << f(closed.cross_section) << ',' << f(std::norm(quad.coherent_spread))
           << ',' << f(quad.mismatch) << ',' << f(quad.cross_section) << ','
           << f(sigma1);
        if (co_args.u) os << ',' << f(gaussian_sigmas(csq, *co_args.u, 1.0).second);
        os << '\n';
      }
      emit(co_out, os.str());
    } else if (pr->parsed()) {
      apply_config(pr, pr_config);
      const Resolved res = resolve_scenario(pr_args);
      const QuadratureSpec spec{pr_tol, pr_tol, 1 << 16};
      const PlusState state = build_plus_state(res.phi_l, res.scenario, spec);
      const double joint = joint_lower_bound_exact(state, res.scenario, spec);
      const double reference = joint / (2.0 * res.scenario.length);
      write_density_csv(state, res.scenario, pr_xmax, pr_points, pr_out,
                        reference, pr_initial);
    } else if (sw->parsed()) {
      apply_config(sw, sw_config);
      Family family;
      if (sw_family == "gaussian") {
        family = Family::gaussian;
      } else if (sw_family == "rectangle") {
        family = Family::rectangle;
        if (sw->get_option("--csq-steps")->count() == 0) sw_csq = {1.0, 1.0, 1};
      } else {
        throw CLI::ValidationError("unknown family: " + sw_family);
      }
      const SweepGrid grid = sweep(sw_u, sw_csq, family);
      write_sweep_csv(grid, sw_out + ".csv");
      write_sweep_summary_json(grid, sw_out + ".json");
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const AccuracyError& e) {
    std::cerr << "numerical failure: " << e.what()
              << " (best estimate " << e.best_estimate.real()
              << ", error bound " << e.error_bound << ")\n";
    return 3;
  } catch (const ResolutionError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const DegenerateStateError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const ApproximationDomainError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const NoViolationError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
