#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace zeno::cli {

// Expands `--config path` into flags. Keys of the JSON object become `--key`
// flags inserted ahead of the command-line flags; keys already given on the
// command line are skipped, so flags override file values. A "command" key
// supplies the subcommand when none is given.
std::vector<std::string> merge_config_file(const std::vector<std::string>& args);

struct SweepAxis {
  std::string name;
  std::vector<double> values;
};

// `name=v1,v2,...`, `name=lin:start:stop:count` or `name=pow2:lo:hi`.
SweepAxis parse_sweep_axis(const std::string& spec);

double parse_number(const std::string& text, const std::string& what);

// Worker count from the environment; 1 when unset.
unsigned sweep_threads();

}  // namespace zeno::cli
