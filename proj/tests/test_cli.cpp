#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

const std::string kCli = PMINT_CLI_PATH;

int run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  REQUIRE(is.good());
  std::stringstream buffer;
  buffer << is.rdbuf();
  return buffer.str();
}

json run_json(const std::string& args, const std::string& out) {
  REQUIRE(run(args + " -o " + out) == 0);
  const json parsed = json::parse(slurp(out));
  std::remove(out.c_str());
  return parsed;
}

}  // namespace

TEST_CASE("cli: reproduce emits the two-Gaussian scenario numbers") {
  const json r = run_json(
      "reproduce --family gaussian --sigma1 0.16 --sigma2 22.67", "cli_rep.json");
  CHECK(std::abs(r["probabilities"]["joint_lower"].get<double>() - 0.114569) < 1e-5);
  CHECK(std::abs(r["probabilities"]["p_m_envelope"].get<double>() - 0.0628944) < 1e-5);
  CHECK(std::abs(r["defects"]["envelope"].get<double>() - 0.0516746) < 2e-5);
  CHECK(std::abs(r["scenario"]["U"].get<double>() - 0.021939) < 1e-6);
  CHECK(std::abs(r["scenario"]["sqrt_U"].get<double>() - 0.148118) < 1e-6);
  CHECK(std::abs(r["ratio"].get<double>() - 0.549) < 3e-3);
}

TEST_CASE("cli: reproduce rectangle family carries its defect bound") {
  const json r = run_json("reproduce --family rectangle --u 0.024", "cli_rect.json");
  CHECK(std::abs(r["defects"]["bound"].get<double>() - 0.072) < 1e-3);
  CHECK(std::abs(r["coefficients"]["csq"].get<double>() - 1.0) < 1e-9);
  CHECK(std::abs(r["coefficients"]["eta"].get<double>()) < 1e-9);
}

TEST_CASE("cli: (u, csq) and (sigma1, sigma2) parameterizations coincide") {
  // widths from the (0.8, 0.022) pair, printed to full precision
  char sigmas[128];
  std::snprintf(sigmas, sizeof(sigmas),
                "reproduce --sigma1 %.17g --sigma2 %.17g",
                0.8 / std::sqrt(8.0 * M_PI),
                1.0 / (std::sqrt(2.0 * M_PI) * 0.022 * 0.8));
  const json a = run_json("reproduce --u 0.022 --csq 0.8", "cli_a.json");
  const json b = run_json(sigmas, "cli_b.json");
  for (const char* key : {"p_l", "p_b", "joint_lower", "p_m_exact", "p_m_envelope"})
    CHECK(std::abs(a["probabilities"][key].get<double>() -
                   b["probabilities"][key].get<double>()) < 1e-9);
}

TEST_CASE("cli: identical invocations give byte-identical files") {
  REQUIRE(run("reproduce --u 0.022 --csq 0.8 -o cli_d1.json") == 0);
  REQUIRE(run("reproduce --u 0.022 --csq 0.8 -o cli_d2.json") == 0);
  CHECK(slurp("cli_d1.json") == slurp("cli_d2.json"));
  std::remove("cli_d1.json");
  std::remove("cli_d2.json");

  REQUIRE(run("sweep --u-steps 16 --csq-steps 16 -o cli_s1") == 0);
  REQUIRE(run("sweep --u-steps 16 --csq-steps 16 -o cli_s2") == 0);
  CHECK(slurp("cli_s1.csv") == slurp("cli_s2.csv"));
  CHECK(slurp("cli_s1.json") == slurp("cli_s2.json"));
  for (const char* f : {"cli_s1.csv", "cli_s1.json", "cli_s2.csv", "cli_s2.json"})
    std::remove(f);
}

TEST_CASE("cli: usage errors exit with status 2") {
  CHECK(run("reproduce --family gaussian") == 2);                     // nothing given
  CHECK(run("reproduce --u 0.02 --csq 0.8 --sigma1 0.16 --sigma2 22.67") == 2);
  CHECK(run("reproduce --family rectangle --csq 0.8 --u 0.02") == 2);
  CHECK(run("reproduce --family nosuch --u 0.02 --csq 0.8") == 2);
  CHECK(run("reproduce --u 0.02 --csq 0.8 --format yaml") == 2);
  CHECK(run("nosuchcommand") == 2);
  CHECK(run("coeffs --family gaussian") == 2);  // missing --csq
}

TEST_CASE("cli: unreachable tolerance exits with status 3") {
  CHECK(run("reproduce --u 0.022 --csq 0.8 --tolerance 1e-30") == 3);
}

TEST_CASE("cli: coeffs quotes the closed-form values") {
  const json one = run_json("coeffs --csq 1", "cli_c1.json");
  CHECK(std::abs(one["closed"]["eta"].get<double>() - 0.01219) < 1e-5);
  CHECK(std::abs(one["closed"]["gamma"].get<double>() - 0.9237) < 1e-4);
  CHECK(std::abs(one["difference"]["eta"].get<double>()) < 1e-8);

  const json opt = run_json("coeffs --csq 0.8 --u 0.022", "cli_c8.json");
  CHECK(std::abs(opt["closed"]["eta"].get<double>() - 0.0017) < 1e-4);
  CHECK(std::abs(opt["closed"]["gamma"].get<double>() - 0.9733) < 1e-4);
  CHECK(std::abs(opt["sigma2"].get<double>() - 22.667) < 1e-3);

  const json rect = run_json("coeffs --family rectangle", "cli_cr.json");
  CHECK(std::abs(rect["quadrature"]["csq"].get<double>() - 1.0) < 1e-9);
  CHECK(std::abs(rect["quadrature"]["eta"].get<double>()) < 1e-9);
  CHECK(std::abs(rect["quadrature"]["gamma"].get<double>() - 1.0) < 1e-9);
}

TEST_CASE("cli: propagate emits an integrable density profile") {
  REQUIRE(run("propagate --u 0.022 --csq 0.8 --x-max 1 --points 401 -o cli_p.csv") == 0);
  std::ifstream is("cli_p.csv");
  REQUIRE(is.good());
  std::string header;
  std::getline(is, header);
  CHECK(header == "x,density_exact,density_envelope,density_approx,reference_level");

  double integral = 0.0, prev_x = 0.0, prev_d = 0.0, ref = 0.0;
  bool first = true;
  std::string line;
  while (std::getline(is, line)) {
    double x, d, env, approx;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &x, &d, &env,
                        &approx, &ref) == 5);
    if (!first) integral += 0.5 * (d + prev_d) * (x - prev_x);
    prev_x = x;
    prev_d = d;
    first = false;
  }
  CHECK(std::abs(integral - 0.054) < 2e-3);
  // reference level = joint_lower / (2 L)
  CHECK(std::abs(ref - 0.0573) < 5e-4);
  std::remove("cli_p.csv");
}

TEST_CASE("cli: propagate --initial emits the t = 0 density") {
  REQUIRE(run("propagate --u 0.022 --csq 0.8 --x-max 0.5 --points 401 --initial "
              "-o cli_p0.csv") == 0);
  std::ifstream is("cli_p0.csv");
  REQUIRE(is.good());
  std::string line;
  std::getline(is, line);  // header
  double integral = 0.0, prev_x = 0.0, prev_d = 0.0;
  bool first = true;
  while (std::getline(is, line)) {
    double x, d, rest[3];
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &x, &d, &rest[0],
                        &rest[1], &rest[2]) == 5);
    if (!first) integral += 0.5 * (d + prev_d) * (x - prev_x);
    prev_x = x;
    prev_d = d;
    first = false;
  }
  // integrates to P(L|psi_+) ~ 0.5573 over the position window
  CHECK(std::abs(integral - 0.5573) < 2e-3);
  std::remove("cli_p0.csv");
}

TEST_CASE("cli: sweep writes the grid and the optimum summary") {
  REQUIRE(run("sweep --u-steps 40 --csq-steps 40 -o cli_sw") == 0);
  const json summary = json::parse(slurp("cli_sw.json"));
  CHECK(std::abs(summary["optimum"]["U"].get<double>() - 0.022) < 2e-3);
  CHECK(std::abs(summary["optimum"]["Csq"].get<double>() - 0.80) < 0.05);
  CHECK(std::abs(summary["optimum"]["value"].get<double>() - 0.052) < 1e-3);
  CHECK(summary.contains("grid_optimum"));
  CHECK(summary["zero_contour_samples"].is_array());

  std::ifstream csv("cli_sw.csv");
  REQUIRE(csv.good());
  std::string header;
  std::getline(csv, header);
  CHECK(header == "U,Csq,defect_bound");
  std::remove("cli_sw.csv");
  std::remove("cli_sw.json");

  // rectangle family: one-dimensional curve peaking at U = 0.024
  REQUIRE(run("sweep --family rectangle --u-min 0.005 --u-max 0.11 --u-steps 106 "
              "-o cli_swr") == 0);
  const json rect = json::parse(slurp("cli_swr.json"));
  CHECK(std::abs(rect["optimum"]["U"].get<double>() - 0.024) < 1e-3);
  CHECK(std::abs(rect["optimum"]["value"].get<double>() - 0.072) < 1e-3);
  std::remove("cli_swr.csv");
  std::remove("cli_swr.json");

  // a single-cell sweep equals the pointwise bound
  REQUIRE(run("sweep --u-min 0.022 --u-max 0.022 --u-steps 1 --csq-min 0.8 "
              "--csq-max 0.8 --csq-steps 1 -o cli_sw1") == 0);
  const std::string cell = slurp("cli_sw1.csv");
  CHECK(cell.find("5.16592943e-02") != std::string::npos);
  std::remove("cli_sw1.csv");
  std::remove("cli_sw1.json");
}

TEST_CASE("cli: config file supplies defaults, flags override") {
  {
    std::ofstream cfg("cli_cfg.json");
    cfg << "{\"u\": 0.022, \"csq\": 0.8, \"format\": \"csv\"}\n";
  }
  REQUIRE(run("reproduce --config cli_cfg.json -o cli_cfg_out.csv") == 0);
  const std::string csv = slurp("cli_cfg_out.csv");
  CHECK(csv.find("family,") == 0);

  // the flag wins over the config value
  REQUIRE(run("reproduce --config cli_cfg.json --format json -o cli_cfg_out.json") == 0);
  const json r = json::parse(slurp("cli_cfg_out.json"));
  CHECK(std::abs(r["scenario"]["U"].get<double>() - 0.022) < 1e-12);

  std::remove("cli_cfg.json");
  std::remove("cli_cfg_out.csv");
  std::remove("cli_cfg_out.json");
}
