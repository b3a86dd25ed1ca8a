#include <string>

#include "CLI11.hpp"

#include "afc/cli.hpp"
#include "afc/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"atomic-frequency-comb memory simulator"};
  app.set_version_flag("--version", std::string(afc::kVersion));

  std::string config_path;
  std::string out_dir = ".";
  std::string experiment;
  bool quiet = false;

  app.add_option("--config", config_path, "config file (INI-style)")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (created if missing)");
  app.add_option("--experiment", experiment,
                 "experiment override: comb | kk | cavity-scan | store | "
                 "store-cavity | optimize | pump");
  app.add_flag("--quiet", quiet, "suppress progress output");

  CLI11_PARSE(app, argc, argv);
  return afc::cli::run(config_path, out_dir, experiment, quiet);
}
