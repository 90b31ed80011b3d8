// bppm: command-line front end. Errors go to stderr as one JSON object;
// exit status 2 for usage errors, 1 for everything else.

#include <iostream>
#include <map>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bppm/error.hpp"
#include "bppm/parallel.hpp"
#include "commands.hpp"
#include "json_config.hpp"

namespace {

int report(const char* kind, const std::string& message, int status, std::optional<std::size_t> line = std::nullopt) {
  nlohmann::json err{{"error", {{"kind", kind}, {"message", message}}}};
  if (line) err["error"]["line"] = *line;
  std::cerr << err.dump() << "\n";
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace bppm::cli;
  CLI::App app{"Block point process model: simulation, inference and evaluation"};
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON config; command-line flags take precedence");
  std::uint64_t seed = 0;
  std::size_t threads = bppm::default_thread_count();
  auto* seed_opt = app.add_option("--seed", seed, "master seed (default: drawn and recorded)");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
#ifdef BPPM_VERSION
  app.set_version_flag("--version", BPPM_VERSION);
#endif

  std::map<const CLI::App*, Command> commands;
  for (auto add : {add_simulate, add_fit, add_spectral, add_predict, add_check_theorem, add_eval_ari, add_aggregate}) {
    Command c = add(app);
    commands.emplace(app.get_subcommands({}).back(), std::move(c));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("usage", e.what(), 2);
  }

  Context ctx;
  if (seed_opt->count() == 0) {
    seed = (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
    seed_opt->clear();
    seed_opt->add_result(std::to_string(seed));
  }
  ctx.seed = seed;
  ctx.threads = threads;
  const CLI::App* sub = app.get_subcommands().front();
  ctx.provenance.subcommand = sub->get_name();
  ctx.provenance.config = resolved_config(app);
  ctx.provenance.seed = seed;
  try {
    commands.at(sub)(ctx);
  } catch (const bppm::ParseError& e) {
    return report("parse", e.what(), 1, e.line());
  } catch (const bppm::ValidationError& e) {
    return report("validation", e.what(), 1);
  } catch (const bppm::ArgumentError& e) {
    return report("argument", e.what(), 1);
  } catch (const std::exception& e) {
    return report("runtime", e.what(), 1);
  }
  return 0;
}
