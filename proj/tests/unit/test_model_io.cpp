#include <gtest/gtest.h>

#include <sstream>

#include "bppm/error.hpp"
#include "bppm/model_io.hpp"

using namespace bppm;

TEST(ModelJson, RoundTrip) {
  const BlockHawkesModel model({0.2, 0.3, 0.5},
                               {{0.1, 1.0, 2.0}, {0.0, 3.0, 0.5}, {1.5, 2.5, 0.1},
                                {0.2, 0.4, 0.6}, {0.3, 0.9, 0.7}, {0.0, 1e-8, 1e-8},
                                {2.0, 7.0, 1.0}, {0.05, 0.1, 0.2}, {0.123456789, 0.987654321, 3.14159}});
  const std::string text = model_to_json(model);
  const BlockHawkesModel back = model_from_json(text);
  ASSERT_EQ(back.num_classes(), 3);
  for (int q = 0; q < 3; ++q) {
    EXPECT_EQ(back.class_probs()[static_cast<std::size_t>(q)], model.class_probs()[static_cast<std::size_t>(q)]);
    for (int l = 0; l < 3; ++l) EXPECT_EQ(back.params(q, l), model.params(q, l));
  }
  EXPECT_EQ(model_to_json(back), text);
}

TEST(ModelJson, CarriesSchemaVersion) {
  const auto text = model_to_json(BlockHawkesModel({1.0}, {{0.1, 1.0, 1.0}}));
  EXPECT_NE(text.find("\"schema_version\": 1"), std::string::npos);
}

TEST(ModelJson, RejectsBadDocuments) {
  EXPECT_THROW((void)model_from_json("not json"), ValidationError);
  EXPECT_THROW((void)model_from_json(R"({"K": 1, "pi": [1], "params": [[{"alpha":0,"beta":1,"lambda_inf":1}]]})"),
               ValidationError);
  EXPECT_THROW(
      (void)model_from_json(
          R"({"schema_version": 99, "K": 1, "pi": [1], "params": [[{"alpha":0,"beta":1,"lambda_inf":1}]]})"),
      ValidationError);
  EXPECT_THROW(
      (void)model_from_json(
          R"({"schema_version": 1, "K": 2, "pi": [1], "params": [[{"alpha":0,"beta":1,"lambda_inf":1}]]})"),
      ValidationError);
  EXPECT_THROW(
      (void)model_from_json(
          R"({"schema_version": 1, "K": 1, "pi": [1], "params": [[{"alpha":0,"beta":-1,"lambda_inf":1}]]})"),
      ValidationError);
}

TEST(ModelJson, ReadFromStream) {
  std::istringstream in(model_to_json(BlockHawkesModel({1.0}, {{0.25, 2.0, 4.0}})));
  const auto m = read_model(in);
  EXPECT_EQ(m.params(0, 0), (hawkes::Params{0.25, 2.0, 4.0}));
}
