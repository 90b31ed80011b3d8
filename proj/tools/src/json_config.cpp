#include "json_config.hpp"

#include <algorithm>

namespace bppm::cli {
namespace {

std::string scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "";
  return v.dump();
}

void flatten(const nlohmann::json& obj, std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& out) {
  for (const auto& [key, value] : obj.items()) {
    if (value.is_object()) {
      parents.push_back(key);
      flatten(value, parents, out);
      parents.pop_back();
      continue;
    }
    CLI::ConfigItem item;
    item.parents = parents;
    item.name = key;
    std::replace(item.name.begin(), item.name.end(), '_', '-');  // off_diagonal matches --off-diagonal
    if (value.is_array()) {
      for (const auto& v : value) {
        if (v.is_structured()) throw CLI::ConversionError("config key '" + key + "' holds a nested array or object");
        item.inputs.push_back(scalar(v));
      }
    } else {
      item.inputs.push_back(scalar(value));
    }
    out.push_back(std::move(item));
  }
}

// "7" -> 7, "[1,2]" -> [1,2]; anything that is not a JSON number, bool or
// array stays a string.
nlohmann::json typed(const std::string& text) {
  auto v = nlohmann::json::parse(text, nullptr, false);
  if (v.is_discarded() || !(v.is_number() || v.is_boolean() || v.is_array())) return text;
  return v;
}

nlohmann::json options_of(const CLI::App& app) {
  nlohmann::json out = nlohmann::json::object();
  for (const CLI::Option* opt : app.get_options()) {
    const std::string name = opt->get_lnames().empty() ? std::string() : opt->get_lnames().front();
    if (name.empty() || name == "help" || name == "config" || name == "version") continue;
    if (opt->count() > 0) {
      const auto& results = opt->results();
      if (opt->get_expected_max() > 1) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : results) arr.push_back(typed(r));
        out[name] = arr;
      } else if (opt->get_type_size() == 0) {
        out[name] = opt->as<bool>();  // flag
      } else {
        out[name] = results.empty() ? nlohmann::json() : typed(results.back());
      }
    } else {
      const std::string def = opt->get_default_str();
      out[name] = def.empty() ? nlohmann::json() : typed(def);
    }
  }
  for (const CLI::App* sub : app.get_subcommands()) out[sub->get_name()] = options_of(*sub);
  return out;
}

}  // namespace

std::string JsonConfig::to_config(const CLI::App* app, bool, bool, std::string) const {
  return resolved_config(*app).dump(2);
}

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
  nlohmann::json j;
  try {
    input >> j;
  } catch (const nlohmann::json::exception& e) {
    throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw CLI::ConversionError("config must be a JSON object");
  std::vector<CLI::ConfigItem> items;
  std::vector<std::string> parents;
  flatten(j, parents, items);
  return items;
}

nlohmann::json resolved_config(const CLI::App& app) { return options_of(app); }

}  // namespace bppm::cli
