// orbitope: maximum-entropy densities on adjoint orbits from the command line.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "orbitope/cli_io.hpp"
#include "orbitope/error.hpp"

namespace {

std::string read_all(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw orbitope::Error(orbitope::ErrorCode::MalformedJson, "cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum-entropy distributions on adjoint orbits of compact classical groups"};
  std::string input, command, output = "-";
  std::optional<double> epsilon, eta;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> mc_samples;
  app.add_option("--input", input, "Problem JSON file ('-' for stdin)")->required();
  app.add_option("--command", command, "solve | integrate | gradient | membership | validate | sample-orbit")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>(std::begin(orbitope::io::kCommands),
                                                     std::end(orbitope::io::kCommands))));
  app.add_option("--epsilon", epsilon, "Target additive accuracy of solve");
  app.add_option("--eta", eta, "Interior margin of A (skips estimation)");
  app.add_option("--seed", seed, "Monte-Carlo seed");
  app.add_option("--mc-samples", mc_samples, "Monte-Carlo sample count");
  app.add_option("--output", output, "Output file ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    auto problem = orbitope::io::parse_problem(read_all(input));
    if (epsilon) problem.epsilon = *epsilon;
    if (eta) problem.eta = *eta;
    if (seed) problem.seed = *seed;
    if (mc_samples) problem.mc_samples = *mc_samples;

    const std::string text = orbitope::io::run_command(command, problem).dump(2) + "\n";
    if (output == "-") {
      std::cout << text;
    } else {
      std::ofstream out(output, std::ios::binary);
      if (!out) throw orbitope::Error(orbitope::ErrorCode::Internal, "cannot write output file '" + output + "'");
      out << text;
    }
    return 0;
  } catch (const orbitope::Error& e) {
    std::cerr << "error: " << orbitope::error_code_name(e.code()) << ": " << e.what() << "\n";
    return orbitope::exit_status(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: INTERNAL: " << e.what() << "\n";
    return 5;
  }
}
