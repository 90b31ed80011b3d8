#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

#include <unistd.h>

#ifndef BPPM_VERSION
#define BPPM_VERSION "unknown"
#endif

namespace bppm::cli {
namespace {

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move output into place at " + path.string() + ": " + ec.message());
  }
}

}  // namespace

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void write_output(const std::filesystem::path& path, const std::string& content, const Provenance& provenance) {
  atomic_write(path, content);
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(provenance.config.dump())));
  nlohmann::json sidecar{
      {"tool", "bppm"},
      {"version", BPPM_VERSION},
      {"subcommand", provenance.subcommand},
      {"output", path.filename().string()},
      {"seed", provenance.seed},
      {"config_hash", std::string("fnv1a64:") + hash},
      {"config", provenance.config},
  };
  auto side = path;
  side += ".provenance.json";
  atomic_write(side, sidecar.dump(2) + "\n");
}

}  // namespace bppm::cli
