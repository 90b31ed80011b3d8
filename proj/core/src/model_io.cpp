#include "bppm/model_io.hpp"

#include <istream>
#include <iterator>

#include <json.hpp>

#include "bppm/error.hpp"

namespace bppm {

std::string model_to_json(const BlockHawkesModel& model, int indent) {
  using nlohmann::json;
  const int k = model.num_classes();
  json params = json::array();
  for (int q = 0; q < k; ++q) {
    json row = json::array();
    for (int l = 0; l < k; ++l) {
      const auto& p = model.params(q, l);
      row.push_back({{"alpha", p.alpha}, {"beta", p.beta}, {"lambda_inf", p.lambda_inf}});
    }
    params.push_back(std::move(row));
  }
  json doc = {{"schema_version", kModelSchemaVersion},
              {"K", k},
              {"pi", std::vector<double>(model.class_probs().begin(), model.class_probs().end())},
              {"params", std::move(params)}};
  return doc.dump(indent);
}

BlockHawkesModel model_from_json(const std::string& text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("model JSON does not parse: ") + e.what());
  }
  try {
    const int version = doc.at("schema_version").get<int>();
    if (version != kModelSchemaVersion)
      throw ValidationError("unsupported model schema_version " + std::to_string(version));
    const int k = doc.at("K").get<int>();
    auto pi = doc.at("pi").get<std::vector<double>>();
    if (k < 1 || pi.size() != static_cast<std::size_t>(k)) throw ValidationError("model pi must have K entries");
    const auto& rows = doc.at("params");
    if (rows.size() != static_cast<std::size_t>(k)) throw ValidationError("model params must be a KxK array");
    std::vector<hawkes::Params> params;
    for (const auto& row : rows) {
      if (row.size() != static_cast<std::size_t>(k)) throw ValidationError("model params must be a KxK array");
      for (const auto& cell : row)
        params.push_back({cell.at("alpha").get<double>(), cell.at("beta").get<double>(),
                          cell.at("lambda_inf").get<double>()});
    }
    return BlockHawkesModel(std::move(pi), std::move(params));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed model JSON: ") + e.what());
  } catch (const ArgumentError& e) {
    throw ValidationError(std::string("invalid model: ") + e.what());
  }
}

BlockHawkesModel read_model(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return model_from_json(text);
}

}  // namespace bppm
