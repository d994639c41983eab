#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "fedlab/experiment.hpp"

namespace {

void usage(std::ostream& out) {
  out << "usage: fedlab <experiment> key=value...\n"
         "experiments:";
  for (const char* e : fedlab::kExperiments) out << ' ' << e;
  out << "\nkeys: target ks omegas degree_cap epsilon R budget seed workers out_dir format method metric\n"
         "      variant reduction kpowers C C1 m n t delta theta sizes config\n";
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args.front() == "-h" || args.front() == "--help") {
    usage(args.empty() ? std::cerr : std::cout);
    return args.empty() ? 2 : 0;
  }
  try {
    const char* env_seed = std::getenv("FEDLAB_SEED");
    const auto config = fedlab::ExperimentConfig::from_args(
        args, env_seed ? std::optional<std::string>(env_seed) : std::nullopt);
    const fedlab::Report report = fedlab::run_experiment(config);
    if (config.format == "json") {
      std::cout << report.to_json();
    } else {
      std::cout << (report.curve ? report.curve->to_csv() : fedlab::CoveringCurve{}.to_csv()) << '\n'
                << report.summary_csv();
    }
    return 0;
  } catch (const std::exception& e) {
    const int code = fedlab::exit_code_for(e);
    std::cerr << "fedlab: " << e.what() << '\n';
    if (code == 2) usage(std::cerr);
    return code;
  }
}
