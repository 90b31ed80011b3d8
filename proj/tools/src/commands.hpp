#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include <CLI11.hpp>

#include "output.hpp"

namespace bppm::cli {

struct Context {
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  Provenance provenance;
};

using Command = std::function<void(const Context&)>;

// Each adds its subcommand to `app` and returns the action to run once the
// command line and config are parsed.
Command add_simulate(CLI::App& app);
Command add_fit(CLI::App& app);
Command add_spectral(CLI::App& app);
Command add_predict(CLI::App& app);
Command add_check_theorem(CLI::App& app);
Command add_eval_ari(CLI::App& app);
Command add_aggregate(CLI::App& app);

}  // namespace bppm::cli
