#pragma once

#include <string>

namespace afc::cli {

// Experiments: comb, kk, cavity-scan, store, store-cavity, optimize, pump.
// Returns the process exit code: 0 ok, 2 validation error, 3 numerical
// precondition violated. Writes CSV artifacts plus summary.json to out_dir.
int run(const std::string& config_path, const std::string& out_dir,
        const std::string& experiment_override, bool quiet);

}  // namespace afc::cli
