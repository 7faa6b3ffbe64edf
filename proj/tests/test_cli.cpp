#include "doctest.h"

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr folded into stdout when `merge` is set.
Run run(const std::string& args, bool merge = false) {
  std::string cmd = std::string(QH_HOFER_CLI) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(QH_DATA_DIR) + "/" + name; }

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("product subcommand") {
  auto r = run("product --model blowup --a2 1/4 \"E\" \"F\"");
  CHECK(r.code == 0);
  CHECK(r.out == "1 * p + -1 * E * e^{-1*E}\n");
  r = run("product --model cpn --n 1 \"x\" \"x\"");
  CHECK(r.code == 0);
  CHECK(r.out == "1 * 1 * e^{-1*L}\n");
  CHECK(run("product --model blowup --a2 1/4 \"1\" \"E\"").out == "1 * E\n");
  r = run("product --format json \"p\" \"p\"");
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"] == "1 * E * e^{-1*E + -1*F} + 1 * F * e^{-1*E + -1*F}");
  CHECK(j["valuation"] == "-1");
  CHECK(run("product --model " + data("blowup_a2_1_4.json") + " E F").out == "1 * p + -1 * E * e^{-1*E}\n");
  CHECK(run("product --model cpn --n 2 x^2 x^2").out == "1 * x * e^{-1*L}\n");
}

TEST_CASE("usage and parse errors exit with 1") {
  CHECK(run("").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("product E").code == 1);
  auto r = run("product E G", true);
  CHECK(r.code == 1);
  CHECK(contains(r.out, "position 0"));
  r = run("product \"E + 2 * e^{1/2*G}\" F", true);
  CHECK(r.code == 1);
  CHECK(contains(r.out, "position 15"));
  CHECK(run("product --a2 1/0 E F").code == 1);
  CHECK(run("product --a2 3/2 E F").code == 1);
  CHECK(run("product --model /nonexistent.json E F").code == 1);
  CHECK(run("lengths --k 3").code == 1);
  CHECK(run("bounds --format xml").code == 1);
  r = run("psi --a2 1/3", true);
  CHECK(r.code == 1);
  CHECK(contains(r.out, "monotone"));
  CHECK(run("power --model cpn --n 1 --k -1 -- \"1 + x\"").code == 1);
  CHECK(run("--help").code == 0);
}

TEST_CASE("power and invert subcommands") {
  CHECK(run("power --k 2 \"F * e^{1/2*E + 1/4*F}\"").out == "1 * E * e^{1/2*F}\n");
  CHECK(run("power --k -2 \"F * e^{1/2*E + 1/4*F}\"").out == "1 * E * e^{1/2*F} + 1 * F * e^{1/2*F}\n");
  CHECK(run("power --model cpn --n 3 --k 4 x").out == "1 * 1 * e^{-1*L}\n");
  CHECK(run("invert \"F * e^{1/2*E + 1/4*F}\"").out == "1 * p * e^{1/2*E + 3/4*F}\n");
  auto r = run("invert --model cpn --n 1 --floor -1 --format json \"1 + x\"");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["exact"] == false);
  CHECK(j["residual"] == "-1 * 1 * e^{-2*L}");
  CHECK(j["residual_valuation"] == "-2");
  CHECK(j["value"] == "1 * 1 * e^{-1*L} + 1 * 1 + -1 * x * e^{-1*L} + -1 * x");
}

TEST_CASE("seidel subcommands") {
  CHECK(run("psi --k 0 --a2 1/4").out == "1 * 1\n");
  auto j = nlohmann::json::parse(run("psi --k 2 --a2 1/4 --format json").out);
  CHECK(j["delta"] == "3/20");
  CHECK(j["valuation"] == "9/20");
  CHECK(j["value"] == "1 * E * e^{-3/5*E + 4/5*F}");

  auto r = run("rtilde --a2 1/2 --kmax 50");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "1/2 π"));
  CHECK(contains(r.out, "attained at k=2"));
  CHECK(contains(r.out, "lower bound meets upper bound"));
  j = nlohmann::json::parse(run("rtilde --a2 3/4 --kmax 20 --format json").out);
  CHECK(j["lower_bound"] == "1/4");
  CHECK(j["certified"] == true);
  CHECK(j["attained_at"][0] == 2);

  r = run("bounds --a2 1/10 --kmax 100 --format json");
  CHECK(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["all_hold"] == true);
  CHECK(j["rows"].size() == 99);
  for (const auto& row : j["rows"]) CHECK(row["holds"] == true);
  r = run("bounds --a2 1/2 --kmax 6");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "(×π)"));
}

TEST_CASE("growth CSV layout") {
  auto r = run("growth --a2 1/5 --kmax 60 --format csv");
  CHECK(r.code == 0);
  std::string header = r.out.substr(0, r.out.find('\n'));
  CHECK(header == "k,vQk,vQnegk,bound,omegaF,psi_per_k,vQk_approx,vQnegk_approx,bound_approx,omegaF_approx,psi_per_k_approx");
  CHECK(contains(r.out, "\n1,3/10,7/10,1,4/5,"));
  r = run("growth --a2 1/5 --kmax 60");
  CHECK(contains(r.out, "predicted slope: 1/30 (×π) [match]"));
  r = run("growth --a2 1/3 --kmax 30 --format json");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["summary"]["min_psi_per_k"].is_null());
  CHECK(j["summary"]["neg_slope"] == "0");
}

TEST_CASE("lengths subcommand") {
  auto r = run("lengths --a2 1/2 --k 2");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "L  = 1.5707963268"));
  r = run("lengths --a2 1/2 --k 1");
  CHECK(contains(r.out, "L  = 3.1415926536"));
  auto j = nlohmann::json::parse(run("lengths --a2 1/2 --k 2 --format json").out);
  CHECK(j["L"].get<double>() == doctest::Approx(1.5707963267948966).epsilon(1e-12));
}

TEST_CASE("geocheck subcommand") {
  auto r = run("geocheck --format json " + data("constant.csv"));
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["has_fixed_max_each_moment"] == true);
  CHECK(j["has_fixed_min_each_moment"] == true);
  CHECK(j["geodesic_criterion"] == true);
  CHECK(j["lengths"]["L"] == 0.0);

  r = run("geocheck --format json " + data("jump.csv"));
  CHECK(r.code == 2);
  j = nlohmann::json::parse(r.out);
  CHECK(j["has_fixed_max_each_moment"] == false);
  CHECK(j["windows"][1]["max_witness"].is_null());
  CHECK(run("geocheck --window 1 " + data("jump.csv")).code == 0);

  r = run("geocheck " + data("weighted.csv"));
  CHECK(contains(r.out, "L+ = 0.7500000000"));
  CHECK(run("geocheck /nonexistent.csv").code == 1);
}

TEST_CASE("model subcommands") {
  auto r = run("model-export --model blowup --a2 1/4");
  CHECK(r.code == 0);
  std::ifstream stored(data("blowup_a2_1_4.json"));
  CHECK(nlohmann::json::parse(r.out) == nlohmann::json::parse(stored));

  auto tmp = std::filesystem::temp_directory_path() / "qh_cp3_model.json";
  CHECK(run("model-export --model cpn --n 3 --out " + tmp.string()).code == 0);
  CHECK(run("model-validate --model " + tmp.string()).out == "cp3: valid\n");
  CHECK(run("power --k 4 --model " + tmp.string() + " x").out == "1 * 1 * e^{-1*L}\n");
  std::filesystem::remove(tmp);

  CHECK(run("model-validate --model blowup --a2 1/4").code == 0);
  r = run("model-validate --model " + data("blowup_wrong_sign.json") + " --format json");
  CHECK(r.code == 2);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["valid"] == false);
  CHECK_FALSE(j["issues"].empty());
}

TEST_CASE("thread cap from the environment") {
  std::string cmd = std::string("QH_HOFER_THREADS=1 ") + QH_HOFER_CLI + " bounds --a2 1/4 --kmax 30 --format csv 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string single;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) single.append(buf.data(), n);
  CHECK(WEXITSTATUS(pclose(pipe)) == 0);
  CHECK(single == run("bounds --a2 1/4 --kmax 30 --format csv").out);
}
