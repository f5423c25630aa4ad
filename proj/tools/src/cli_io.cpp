#include "orbitope/cli_io.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "orbitope/error.hpp"
#include "orbitope/geometry.hpp"
#include "orbitope/hc_oracle.hpp"
#include "orbitope/mc_validate.hpp"
#include "orbitope/solver.hpp"

namespace orbitope::io {
namespace {

using nlohmann::json;

[[noreturn]] void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) fail(ErrorCode::UnknownField, "unknown field '" + key + "' in " + where);
  }
}

double get_real(const json& v, const std::string& name) {
  if (!v.is_number()) fail(ErrorCode::InvalidValue, "'" + name + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(ErrorCode::InvalidValue, "'" + name + "' must be finite");
  return x;
}

std::vector<double> get_array(const json& v, const std::string& name) {
  if (!v.is_array()) fail(ErrorCode::InvalidValue, "'" + name + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(get_real(e, name));
  return out;
}

CartanVector to_cartan(const std::vector<double>& v) {
  return CartanVector(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
}

json vec(const CartanVector& v) { return v.to_std(); }

json vec(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

// NaN/inf are not representable in JSON; they become null.
json real(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

const std::vector<double>& require(const std::optional<std::vector<double>>& v, const char* name,
                                   std::string_view command) {
  if (!v) fail(ErrorCode::MissingField, std::string("command '") + std::string(command) + "' needs field '" + name + "'");
  return *v;
}

json oracle_json(const OracleResult& r) {
  return {{"log_value", real(r.log_value)},
          {"gradient", vec(r.gradient)},
          {"confluent", r.confluent},
          {"condition_estimate", real(r.condition_estimate)}};
}

json run_solve(const ProblemFile& p, const GroupSpec& spec) {
  ProblemInstance in{spec, to_cartan(p.f), to_cartan(require(p.a, "A", "solve")), p.eta, p.epsilon};
  const DualSolution sol = solve(in);
  const DensityReport density = density_report(in, sol);
  json trace = json::array();
  for (const auto& t : sol.trace) trace.push_back({t.iteration, real(t.f), real(t.grad_norm)});
  return {{"Y_opt", vec(sol.y_opt)},
          {"f_value", real(sol.f_value)},
          {"grad_norm", real(sol.grad_norm)},
          {"iterations", sol.iterations},
          {"iteration_limit", sol.iteration_limit},
          {"R_used", real(sol.r_used)},
          {"eta_used", real(sol.eta_used)},
          {"gradient_exit", sol.gradient_exit},
          {"trace", trace},
          {"density",
           {{"log_partition", real(density.log_partition)},
            {"mean", vec(density.mean)},
            {"deviation", real(density.deviation)}}}};
}

json run_membership(const ProblemFile& p, const GroupSpec& spec) {
  const MembershipReport m = membership(spec, to_cartan(p.f), to_cartan(require(p.a, "A", "membership")));
  json vertices = json::array();
  for (const auto& v : m.vertices) vertices.push_back(vec(v));
  return {{"status", std::string(status_name(m.status))},
          {"margin", real(m.margin)},
          {"vertices", vertices},
          {"weights", m.weights},
          {"separator", m.separator ? vec(*m.separator) : json(nullptr)}};
}

json run_validate(const ProblemFile& p, const GroupSpec& spec) {
  const CartanVector f = to_cartan(p.f);
  const CartanVector y = to_cartan(require(p.y, "Y", "validate"));
  const OracleResult analytic = log_integral(spec, f, y, true);
  const McEstimate mc = mc_log_integral(spec, f, y, p.mc_samples, p.seed);
  // Independent stream for the orbit mean.
  const McVectorEstimate om = mc_orbit_mean(spec, f, y, p.mc_samples, p.seed ^ 0x5bd1e995ULL);

  const bool value_pass = std::abs(analytic.log_value - mc.mean) <= 3.0 * mc.std_error;
  bool mean_pass = true;
  const Eigen::VectorXd expected = -analytic.gradient.coords();
  for (int j = 0; j < expected.size(); ++j) {
    mean_pass &= std::abs(expected[j] - om.mean[j]) <= 3.0 * om.std_error[j] + 1e-12;
  }
  return {{"n_samples", p.mc_samples},
          {"seed", p.seed},
          {"log_integral",
           {{"analytic", real(analytic.log_value)},
            {"mc_mean", real(mc.mean)},
            {"mc_stderr", real(mc.std_error)},
            {"pass", value_pass}}},
          {"orbit_mean",
           {{"analytic", vec(expected)},
            {"mc_mean", vec(om.mean)},
            {"mc_stderr", vec(om.std_error)},
            {"effective_sample_size", real(om.effective_sample_size)},
            {"low_ess", om.low_ess},
            {"pass", mean_pass}}},
          {"pass", value_pass && mean_pass}};
}

json run_sample_orbit(const ProblemFile& p, const GroupSpec& spec) {
  json points = json::array();
  for (const auto& v : sample_orbit_projections(spec, to_cartan(p.f), p.mc_samples, p.seed)) points.push_back(vec(v));
  return {{"n_samples", p.mc_samples}, {"seed", p.seed}, {"points", points}};
}

}  // namespace

GroupSpec ProblemFile::spec() const {
  const auto fam = parse_family(family);
  if (!fam) fail(ErrorCode::UnknownFamily, "unknown group family '" + family + "'");
  return make_group_spec(*fam, n);
}

void validate_problem(const ProblemFile& p) {
  const GroupSpec spec = p.spec();
  validate_cartan(spec, to_cartan(p.f));
  if (p.a) validate_cartan(spec, to_cartan(*p.a));
  if (p.y) validate_cartan(spec, to_cartan(*p.y));
  if (p.eta && !(*p.eta > 0.0)) fail(ErrorCode::InvalidValue, "'eta' must be positive");
  if (!(p.epsilon > 0.0)) fail(ErrorCode::InvalidValue, "'epsilon' must be positive");
  if (p.mc_samples <= 0) fail(ErrorCode::InvalidValue, "'mc_samples' must be positive");
}

ProblemFile parse_problem(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(ErrorCode::MalformedJson, e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::MalformedJson, "problem file must be a JSON object");
  reject_unknown(doc, {"group", "F", "A", "Y", "eta", "epsilon", "seed", "mc_samples"}, "problem");

  ProblemFile p;
  if (!doc.contains("group")) fail(ErrorCode::MissingField, "missing field 'group'");
  const json& group = doc["group"];
  if (!group.is_object()) fail(ErrorCode::InvalidValue, "'group' must be an object");
  reject_unknown(group, {"family", "n"}, "group");
  if (!group.contains("family")) fail(ErrorCode::MissingField, "missing field 'group.family'");
  if (!group.contains("n")) fail(ErrorCode::MissingField, "missing field 'group.n'");
  if (!group["family"].is_string()) fail(ErrorCode::UnknownFamily, "'group.family' must be a string");
  p.family = group["family"].get<std::string>();
  if (!group["n"].is_number_integer()) fail(ErrorCode::InvalidSize, "'group.n' must be an integer");
  const auto n = group["n"].get<std::int64_t>();
  if (n <= 0 || n > 1000) fail(ErrorCode::InvalidSize, "'group.n' must be in [1, 1000]");
  p.n = static_cast<int>(n);

  if (!doc.contains("F")) fail(ErrorCode::MissingField, "missing field 'F'");
  p.f = get_array(doc["F"], "F");
  if (doc.contains("A")) p.a = get_array(doc["A"], "A");
  if (doc.contains("Y")) p.y = get_array(doc["Y"], "Y");
  if (doc.contains("eta")) p.eta = get_real(doc["eta"], "eta");
  if (doc.contains("epsilon")) p.epsilon = get_real(doc["epsilon"], "epsilon");
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) fail(ErrorCode::InvalidValue, "'seed' must be a nonnegative integer");
    p.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("mc_samples")) {
    if (!doc["mc_samples"].is_number_integer()) fail(ErrorCode::InvalidValue, "'mc_samples' must be an integer");
    p.mc_samples = doc["mc_samples"].get<std::int64_t>();
  }
  validate_problem(p);
  return p;
}

json to_json(const ProblemFile& p) {
  json doc = {{"group", {{"family", p.family}, {"n", p.n}}}, {"F", p.f}};
  if (p.a) doc["A"] = *p.a;
  if (p.y) doc["Y"] = *p.y;
  if (p.eta) doc["eta"] = *p.eta;
  doc["epsilon"] = p.epsilon;
  doc["seed"] = p.seed;
  doc["mc_samples"] = p.mc_samples;
  return doc;
}

std::string serialize_problem(const ProblemFile& p) { return to_json(p).dump(); }

std::string input_hash(const ProblemFile& p) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_problem(p)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json run_command(std::string_view command, const ProblemFile& problem) {
  validate_problem(problem);
  const GroupSpec spec = problem.spec();
  json result;
  if (command == "solve") {
    result = run_solve(problem, spec);
  } else if (command == "integrate" || command == "gradient") {
    result = oracle_json(log_integral(spec, to_cartan(problem.f), to_cartan(require(problem.y, "Y", command)), true));
  } else if (command == "membership") {
    result = run_membership(problem, spec);
  } else if (command == "validate") {
    result = run_validate(problem, spec);
  } else if (command == "sample-orbit") {
    result = run_sample_orbit(problem, spec);
  } else {
    fail(ErrorCode::InvalidValue, "unknown command '" + std::string(command) + "'");
  }
  return {{"command", command},
          {"group", describe(spec)},
          {"input_hash", input_hash(problem)},
          {"library_version", kLibraryVersion},
          {"result", result}};
}

}  // namespace orbitope::io
