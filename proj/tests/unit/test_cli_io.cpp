#include <doctest.h>

#include <random>
#include <set>

#include "orbitope/cli_io.hpp"
#include "orbitope/error.hpp"

using namespace orbitope;
using namespace orbitope::io;
using nlohmann::json;

namespace {

ErrorCode parse_code(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

std::set<std::string> keys(const json& obj) {
  std::set<std::string> out;
  for (const auto& [k, v] : obj.items()) out.insert(k);
  return out;
}

}  // namespace

TEST_CASE("parse a minimal problem and apply defaults") {
  const auto p = parse_problem(R"({"group":{"family":"SU","n":2},"F":[1,-1],"A":[0,0]})");
  CHECK(p.family == "SU");
  CHECK(p.n == 2);
  CHECK(p.f == std::vector<double>{1, -1});
  REQUIRE(p.a.has_value());
  CHECK_FALSE(p.y.has_value());
  CHECK_FALSE(p.eta.has_value());
  CHECK(p.epsilon == 1e-6);
  CHECK(p.seed == 0);
  CHECK(p.mc_samples == 100000);
}

TEST_CASE("parse errors carry distinct codes") {
  CHECK(parse_code("{not json") == ErrorCode::MalformedJson);
  CHECK(parse_code("[1,2]") == ErrorCode::MalformedJson);
  CHECK(parse_code(R"({"group":{"family":"SU","n":2},"F":[1,-1],"B":[0,0]})") == ErrorCode::UnknownField);
  CHECK(parse_code(R"({"group":{"family":"SU","n":2,"m":1},"F":[1,-1]})") == ErrorCode::UnknownField);
  CHECK(parse_code(R"({"F":[1,-1]})") == ErrorCode::MissingField);
  CHECK(parse_code(R"({"group":{"family":"SU","n":2}})") == ErrorCode::MissingField);
  CHECK(parse_code(R"({"group":{"family":"Spin","n":2},"F":[1,-1]})") == ErrorCode::UnknownFamily);
  CHECK(parse_code(R"({"group":{"family":"SOeven","n":1},"F":[1]})") == ErrorCode::DegenerateFamily);
  CHECK(parse_code(R"({"group":{"family":"U","n":0},"F":[]})") == ErrorCode::InvalidSize);
  CHECK(parse_code(R"({"group":{"family":"U","n":2},"F":[1,2,3]})") == ErrorCode::LengthMismatch);
  CHECK(parse_code(R"({"group":{"family":"SU","n":2},"F":[1,1]})") == ErrorCode::SuSumNonzero);
  CHECK(parse_code(R"({"group":{"family":"U","n":2},"F":[1,"x"]})") == ErrorCode::InvalidValue);
  CHECK(parse_code(R"({"group":{"family":"U","n":2},"F":[1,0],"epsilon":-1})") == ErrorCode::InvalidValue);
  CHECK(error_code_name(ErrorCode::DegenerateFamily) == "DEGENERATE_FAMILY");
  CHECK(exit_status(ErrorCode::MalformedJson) == 2);
  CHECK(exit_status(ErrorCode::Infeasible) == 3);
  CHECK(exit_status(ErrorCode::NumericOverflow) == 4);
  CHECK(exit_status(ErrorCode::Internal) == 5);
}

TEST_CASE("serialization round-trips") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const char* families[] = {"U", "SU", "SOeven", "SOodd", "Oeven", "USp"};
  for (int t = 0; t < 100; ++t) {
    ProblemFile p;
    p.family = families[t % 6];
    p.n = 2 + t % 3;
    auto draw = [&] {
      std::vector<double> v(static_cast<std::size_t>(p.n));
      for (double& x : v) x = u(rng);
      if (p.family == "SU") {
        double m = 0.0;
        for (double x : v) m += x;
        m /= p.n;
        for (double& x : v) x -= m;
      }
      return v;
    };
    p.f = draw();
    if (t % 2) p.a = draw();
    if (t % 3) p.y = draw();
    if (t % 5 == 0) p.eta = 0.01 + std::abs(u(rng));
    p.epsilon = std::pow(10.0, -1.0 - t % 7);
    p.seed = rng();
    p.mc_samples = 1000 + t;
    const auto q = parse_problem(serialize_problem(p));
    CHECK(q == p);
    CHECK(input_hash(q) == input_hash(p));
  }
}

TEST_CASE("input hash depends on content") {
  const auto p = parse_problem(R"({"group":{"family":"U","n":2},"F":[1,0],"Y":[0,0]})");
  auto q = p;
  q.seed = 1;
  CHECK(input_hash(p).size() == 16);
  CHECK(input_hash(p) != input_hash(q));
}

TEST_CASE("command outputs have a stable schema") {
  const auto p = parse_problem(
      R"({"group":{"family":"U","n":2},"F":[1,0],"A":[0.7,0.3],"Y":[0.2,-0.4],"mc_samples":2000,"seed":3})");
  const std::set<std::string> envelope{"command", "group", "input_hash", "library_version", "result"};

  const auto solve = run_command("solve", p);
  CHECK(keys(solve) == envelope);
  CHECK(solve["library_version"] == "0.1.0");
  CHECK(keys(solve["result"]) == std::set<std::string>{"Y_opt", "f_value", "grad_norm", "iterations",
                                                        "iteration_limit", "R_used", "eta_used", "gradient_exit",
                                                        "trace", "density"});
  CHECK(keys(solve["result"]["density"]) == std::set<std::string>{"log_partition", "mean", "deviation"});

  for (const char* cmd : {"integrate", "gradient"}) {
    const auto r = run_command(cmd, p);
    CHECK(keys(r["result"]) == std::set<std::string>{"log_value", "gradient", "confluent", "condition_estimate"});
  }
  const auto m = run_command("membership", p);
  CHECK(keys(m["result"]) == std::set<std::string>{"status", "margin", "vertices", "weights", "separator"});
  CHECK(m["result"]["status"] == "interior");

  const auto v = run_command("validate", p);
  CHECK(keys(v["result"]) == std::set<std::string>{"n_samples", "seed", "log_integral", "orbit_mean", "pass"});
  CHECK(keys(v["result"]["log_integral"]) == std::set<std::string>{"analytic", "mc_mean", "mc_stderr", "pass"});
  CHECK(keys(v["result"]["orbit_mean"]) == std::set<std::string>{"analytic", "mc_mean", "mc_stderr",
                                                                  "effective_sample_size", "low_ess", "pass"});
  const auto s = run_command("sample-orbit", p);
  CHECK(keys(s["result"]) == std::set<std::string>{"n_samples", "seed", "points"});
  CHECK(s["result"]["points"].size() == 2000);
}

TEST_CASE("command examples") {
  const auto su2 = parse_problem(R"({"group":{"family":"SU","n":2},"F":[1,-1],"A":[0,0]})");
  const auto sol = run_command("solve", su2)["result"];
  CHECK(std::hypot(sol["Y_opt"][0].get<double>(), sol["Y_opt"][1].get<double>()) <= 1e-4);

  const auto zero = parse_problem(R"({"group":{"family":"USp","n":2},"F":[1,0.5],"Y":[0,0]})");
  CHECK(run_command("integrate", zero)["result"]["log_value"].get<double>() == 0.0);

  const auto val = parse_problem(R"({"group":{"family":"U","n":2},"F":[0.4,-1.3],"Y":[0.9,0.2],"seed":5})");
  CHECK(run_command("validate", val)["result"]["pass"] == true);
}

TEST_CASE("commands report missing inputs and unknown names") {
  const auto p = parse_problem(R"({"group":{"family":"U","n":2},"F":[1,0]})");
  for (const char* cmd : {"solve", "integrate", "membership", "validate"}) {
    try {
      run_command(cmd, p);
      FAIL("expected MissingField");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MissingField);
    }
  }
  CHECK_THROWS_AS(run_command("frobnicate", p), Error);
}
