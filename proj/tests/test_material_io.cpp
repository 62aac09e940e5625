#include <gtest/gtest.h>

#include <filesystem>

#include <nlohmann/json.hpp>

#include "elastwave/material_io.hpp"
#include "oracles.hpp"

using namespace elastwave;

namespace {

void expect_same(const Modulid& a, const Modulid& b, double tol) {
  EXPECT_LE((a.c2() - b.c2()).cwiseAbs().maxCoeff(), tol);
  for (int t = 0; t < voigt::kTripletCount; ++t) EXPECT_NEAR(a.c3()[t], b.c3()[t], tol) << "slot " << t;
  EXPECT_DOUBLE_EQ(a.density(), b.density());
}

std::string error_of(const std::string& text) {
  try {
    parse_material(text);
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(MaterialIo, TriclinicRoundTrip) {
  for (int trial = 0; trial < 10; ++trial) {
    const auto mod = oracle::random_triclinic(oracle::uniform(0.5, 8.0)).with_name("sample", Symmetry::triclinic);
    const auto back = parse_material(material_to_json(mod));
    expect_same(mod, back, 0.0);
    EXPECT_EQ(back.name(), "sample");
    EXPECT_EQ(back.symmetry(), Symmetry::triclinic);
  }
}

TEST(MaterialIo, SavedFileRoundTrip) {
  const auto c = oracle::random_cubic_constants();
  const auto mod = oracle::make_cubic(c).with_name("cube", Symmetry::cubic_m3m);
  const auto path = std::filesystem::temp_directory_path() / "elastwave_material_io_test.json";
  save_material(mod, path);
  const auto back = load_material(path);
  std::filesystem::remove(path);
  expect_same(mod, back, 0.0);
  EXPECT_EQ(back.symmetry(), Symmetry::cubic_m3m);
}

TEST(MaterialIo, WritesUpperTriangleOnly) {
  const auto mod = oracle::random_triclinic();
  const auto doc = nlohmann::json::parse(material_to_json(mod));
  for (const auto& [key, v] : doc["c2"].items()) EXPECT_LE(key[0], key[1]) << key;
  for (const auto& [key, v] : doc["c3"].items()) {
    EXPECT_LE(key[0], key[1]) << key;
    EXPECT_LE(key[1], key[2]) << key;
  }
}

TEST(MaterialIo, MinimalIsotropic) {
  const auto c = oracle::random_isotropic_constants();
  const double c11 = c.lam + 2 * c.mu, c12 = c.lam, c44 = c.mu;
  const double c111 = 2 * c.l + 4 * c.m, c112 = 2 * c.l, c123 = 2 * c.l - 2 * c.m + c.n;
  nlohmann::json doc{{"symmetry", "isotropic"},
                     {"density", 2.5},
                     {"c2", {{"11", c11}, {"44", c44}}},
                     {"c3", {{"111", c111}, {"112", c112}, {"123", c123}}}};
  const auto mod = parse_material(doc.dump());
  expect_same(mod, make_isotropic(c.lam, c.mu, c.l, c.m, c.n, 2.5), 1e-12 * std::abs(c111));
  doc["c2"] = {{"11", c11}, {"12", c12}};
  expect_same(parse_material(doc.dump()), mod, 1e-12 * std::abs(c111));
  // Redundant entries that agree with the completion are accepted.
  doc["c2"]["44"] = c44;
  doc["c3"]["166"] = c.m;
  doc["c3"]["456"] = c.n / 4;
  EXPECT_NO_THROW(parse_material(doc.dump()));
  doc["c3"]["456"] = c.n / 4 + 1.0;
  EXPECT_THROW(parse_material(doc.dump()), SymmetryError);
}

TEST(MaterialIo, IsotropicNeedsEnoughConstants) {
  nlohmann::json doc{{"symmetry", "isotropic"}, {"c2", {{"11", 3.0}}}, {"c3", {{"111", 1.0}, {"112", 1.0}, {"123", 1.0}}}};
  EXPECT_THROW(parse_material(doc.dump()), ParseError);
  doc["c2"]["12"] = 1.0;
  doc["c3"].erase("123");
  EXPECT_THROW(parse_material(doc.dump()), ParseError);
}

TEST(MaterialIo, MinimalCubic) {
  const auto c = oracle::random_cubic_constants();
  nlohmann::json doc{{"symmetry", "cubic_m3m"},
                     {"c2", {{"11", c.c11}, {"12", c.c12}, {"44", c.c44}}},
                     {"c3",
                      {{"111", c.c111}, {"112", c.c112}, {"123", c.c123}, {"144", c.c144}, {"166", c.c166}, {"456", c.c456}}}};
  expect_same(parse_material(doc.dump()), oracle::make_cubic(c), 0.0);
  // Permuted spellings of the same entry are the same constant.
  doc["c3"]["211"] = c.c112;
  doc["c3"]["616"] = c.c166;
  EXPECT_NO_THROW(parse_material(doc.dump()));
  // Entries equal to a different cubic constant violate the symmetry.
  doc["c3"]["133"] = c.c112 + 0.5;
  EXPECT_THROW(parse_material(doc.dump()), SymmetryError);
}

TEST(MaterialIo, CubicDefaultsMissingThirdOrderToZero) {
  nlohmann::json doc{{"symmetry", "cubic_m3m"}, {"c2", {{"11", 2.0}, {"12", 1.0}, {"44", 0.7}}}};
  const auto mod = parse_material(doc.dump());
  for (double v : mod.c3()) EXPECT_EQ(v, 0.0);
}

TEST(MaterialIo, ConflictingPermutationsNameBothEntries) {
  nlohmann::json doc{{"c2", {{"11", 2.0}, {"22", 2.0}, {"33", 2.0}, {"44", 1.0}, {"55", 1.0}, {"66", 1.0}, {"12", 0.5}, {"21", 0.6}}}};
  const std::string msg = error_of(doc.dump());
  EXPECT_NE(msg.find("12"), std::string::npos) << msg;
  EXPECT_NE(msg.find("21"), std::string::npos) << msg;
  EXPECT_THROW(parse_material(doc.dump()), SymmetryError);

  doc["c2"].erase("21");
  doc["c3"] = {{"123", 1.0}, {"321", 2.0}};
  const std::string msg3 = error_of(doc.dump());
  EXPECT_NE(msg3.find("123"), std::string::npos) << msg3;
  EXPECT_NE(msg3.find("321"), std::string::npos) << msg3;
}

TEST(MaterialIo, DenseMatrixMustBeSymmetric) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 6; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < 6; ++j) row.push_back(i == j ? 2.0 : 0.1);
    rows.push_back(row);
  }
  EXPECT_NO_THROW(parse_material(nlohmann::json{{"c2", rows}}.dump()));
  rows[1][4] = 0.3;
  EXPECT_THROW(parse_material(nlohmann::json{{"c2", rows}}.dump()), SymmetryError);
}

TEST(MaterialIo, RejectsMalformedDocuments) {
  EXPECT_THROW(parse_material("{"), ParseError);
  EXPECT_THROW(parse_material("[]"), ParseError);
  EXPECT_THROW(parse_material(R"({"c2": {"11": 1}, "colour": "red"})"), ParseError);
  EXPECT_THROW(parse_material(R"({"density": 1})"), ParseError);
  EXPECT_THROW(parse_material(R"({"c2": {"17": 1}})"), ParseError);
  EXPECT_THROW(parse_material(R"({"c2": {"1": 1}})"), ParseError);
  EXPECT_THROW(parse_material(R"({"c2": {"11": "x"}})"), ParseError);
  EXPECT_THROW(parse_material(R"({"symmetry": "hexagonal", "c2": {"11": 1}})"), ParseError);
  EXPECT_THROW(parse_material(R"({"density": -1, "c2": {"11": 1}})"), ParseError);
  EXPECT_THROW(load_material("/nonexistent/material.json"), ParseError);
}

TEST(MaterialIo, RejectsIndefiniteStiffness) {
  EXPECT_THROW(parse_material(R"({"c2": {"11": 1, "22": 1, "33": 1, "44": 1, "55": 1}})"), DefinitenessError);
  EXPECT_THROW(parse_material(R"({"symmetry": "cubic_m3m", "c2": {"11": 1, "12": 2, "44": 1}})"),
               DefinitenessError);
}
