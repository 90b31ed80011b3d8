#pragma once

// CLI11 config formatter for JSON files. Nested objects become sections
// (a top-level "fit" object configures the `fit` subcommand), arrays become
// multi-value inputs.

#include <istream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace bppm::cli {

class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override;
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;
};

// Every long option of `app` and its selected subcommands with its resolved
// value (command line, config file or default), for provenance records.
nlohmann::json resolved_config(const CLI::App& app);

}  // namespace bppm::cli
