#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

namespace bppm::cli {

// 64-bit FNV-1a.
[[nodiscard]] std::uint64_t fnv1a(std::string_view bytes);

struct Provenance {
  std::string subcommand;
  nlohmann::json config;  // fully resolved, seed included
  std::uint64_t seed = 0;
};

// Writes `content` through a temporary file in the target directory and a
// rename, then the sidecar `<path>.provenance.json` the same way.
void write_output(const std::filesystem::path& path, const std::string& content, const Provenance& provenance);

}  // namespace bppm::cli
