#include "doctest.h"

#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "json.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = bl::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::pair<double, int>> read_counts(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::vector<std::pair<double, int>> rows;
  while (std::getline(in, line)) {
    const auto c = line.find(',');
    rows.emplace_back(std::stod(line.substr(0, c)), std::stoi(line.substr(c + 1)));
  }
  return rows;
}

}  // namespace

TEST_CASE("plan") {
  const Result r = run({"plan", "--gamma", "2", "--delta", "0", "--K", "100"});
  REQUIRE(r.code == bl::cli::kOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["n_seq"][0] == 0);
  CHECK(j["n_seq"].size() == 100);
  CHECK(r.err.find("gamma=") != std::string::npos);
  const Result l = run({"plan", "--lambda", "1.5", "--delta", "0", "--K", "10"});
  CHECK(nlohmann::json::parse(l.out)["gamma"] == 2.0);
}

TEST_CASE("configuration errors") {
  CHECK(run({"plan", "--gamma", "2", "--lambda", "1.5", "--K", "10"}).code == bl::cli::kConfigError);
  CHECK(run({"plan", "--gamma", "0.5", "--K", "10"}).code == bl::cli::kConfigError);
  CHECK(run({"nonsense"}).code == bl::cli::kConfigError);
  CHECK(run({"phi", "--from", "0;1", "--to", "0,2"}).code == bl::cli::kConfigError);
  CHECK(run({"zeros", "--gamma", "2", "--K", "10", "--kind", "zeros-X"}).code == bl::cli::kConfigError);
  CHECK(run({"plan", "--plan", "does-not-exist.json"}).code == bl::cli::kConfigError);
}

TEST_CASE("verify banklaine") {
  const Result r = run({"verify", "banklaine", "--k1", "0", "--k2", "1"});
  CHECK(r.code == bl::cli::kOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["zeros"] == 11);
  CHECK(j["plus_ones"] == 11);
  CHECK(run({"verify", "ode", "--k1", "2", "--k2", "3"}).code == bl::cli::kOk);
}

TEST_CASE("zeros from a plan file") {
  REQUIRE(run({"plan", "--gamma", "2", "--delta", "1", "--K", "40", "--out", "cli_plan.json"}).code == bl::cli::kOk);
  const Result r = run({"zeros", "--plan", "cli_plan.json", "--r-max", "500", "--kind", "zeros-G"});
  REQUIRE(r.code == bl::cli::kOk);
  CHECK(r.out.rfind("r,count", 0) == 0);
  const auto rows = read_counts(r.out);
  REQUIRE(rows.size() > 2);
  for (size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].second >= rows[i - 1].second);
  CHECK(rows.back().first == doctest::Approx(500));
  CHECK(run({"zeros", "--plan", "cli_plan.json", "--r-max", "1e7", "--kind", "zeros-G"}).code ==
        bl::cli::kDepthError);
}

TEST_CASE("phi table and gnuplot stub") {
  const Result r = run({"phi", "--from", "0,0", "--to", "0,1", "--x-lo", "-1", "--x-hi", "1", "--points", "5",
                        "--out", "cli_phi.csv"});
  REQUIRE(r.code == bl::cli::kOk);
  std::ifstream csv("cli_phi.csv"), gp("cli_phi.csv.gp");
  CHECK(csv.good());
  CHECK(gp.good());
  std::string header;
  std::getline(csv, header);
  CHECK(header == "x,phi,phi_prime");
}

TEST_CASE("asymptotics anchor") {
  const Result r = run({"asymptotics", "--anchor"});
  REQUIRE(r.code == bl::cli::kOk);
  CHECK(nlohmann::json::parse(r.out)["max_dev_E_right"].get<double>() <= 1e-10);
}
