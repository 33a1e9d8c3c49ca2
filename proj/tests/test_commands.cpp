#include <filesystem>

#include <gtest/gtest.h>

#include "bordered/commands.hpp"

using namespace bordered;
namespace fs = std::filesystem;

namespace {
const fs::path corpus = BORDERED_CORPUS_DIR;
}

TEST(Report, Sha256) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Report, JsonRoundTrip) {
  RunReport r;
  r.command = "x";
  r.inputs.push_back({"a.json", sha256_hex("a")});
  r.results = {{"k", 1}};
  r.check("one", true, "");
  r.check("two", false, "broken");
  EXPECT_FALSE(r.pass());
  EXPECT_EQ(report_from_json(to_json(r)), r);
  r.seconds = 0.5;
  r.error_code = "parse";
  r.error_message = "bad";
  EXPECT_EQ(report_from_json(to_json(r)), r);
  const auto text = render_text(r);
  EXPECT_NE(text.find("check two: FAIL"), std::string::npos);
  EXPECT_NE(text.find("status: FAIL"), std::string::npos);
}

TEST(Commands, AlgebraTorus) {
  const auto r = cmd_algebra(corpus / "surfaces" / "torus.json", 1, std::nullopt, {"all"});
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.results.at("dimension"), 8);
  EXPECT_EQ(r.results.at("idempotents"), 2);
  EXPECT_EQ(r.checks.size(), 7U);
  ASSERT_EQ(r.inputs.size(), 1U);
  EXPECT_EQ(r.inputs[0].sha256.size(), 64U);
}

TEST(Commands, AlgebraDirectedFailsOnTorus) {
  const auto r = cmd_algebra(corpus / "surfaces" / "torus.json", 1, std::nullopt, {"directed"});
  EXPECT_FALSE(r.pass());
}

TEST(Commands, Deterministic) {
  const auto a = cmd_algebra(corpus / "surfaces" / "genus2.json", 2, std::nullopt, {"all"});
  const auto b = cmd_algebra(corpus / "surfaces" / "genus2.json", 2, std::nullopt, {"all"});
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  const auto c = cmd_hfhat(corpus / "diagrams" / "lens7_3.json", std::nullopt);
  const auto d = cmd_hfhat(corpus / "diagrams" / "lens7_3.json", std::nullopt);
  EXPECT_EQ(to_json(c).dump(), to_json(d).dump());
}

TEST(Commands, HfhatLens5) {
  const auto r = cmd_hfhat(corpus / "diagrams" / "lens5.json", std::nullopt);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.results.at("rank"), 5);
  EXPECT_EQ(r.results.at("generators"), 5);
}

TEST(Commands, IndexAndEuler) {
  EXPECT_EQ(cmd_index(1, "0", 1, 3).results.at("mu"), "1");
  EXPECT_EQ(cmd_index(0, "1/2", 2, 1).results.at("mu"), "1/2");
  EXPECT_EQ(cmd_euler(corpus / "diagrams" / "s1xs2.json", corpus / "domains" / "bigon.json").results.at("euler_measure"), "1/2");
}

TEST(Commands, Pairing) {
  const auto r = cmd_pair(corpus / "modules" / "M0.json", corpus / "modules" / "D3.json", true);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.results.at("rank"), 3);
}

TEST(Commands, Validate) {
  EXPECT_TRUE(cmd_validate(corpus / "surfaces" / "genus2.json").pass());
  EXPECT_TRUE(cmd_validate(corpus / "diagrams" / "grid3.json").pass());
  EXPECT_TRUE(cmd_validate(corpus / "modules" / "N0.json").pass());
}

TEST(Commands, Slides) {
  const auto r = cmd_slide(corpus / "surfaces" / "torus.json", std::nullopt, std::nullopt, std::nullopt, false, true, std::nullopt);
  EXPECT_TRUE(r.pass());
  EXPECT_GT(r.results.at("slides").size(), 0U);
}

TEST(Commands, SuiteOnCorpus) {
  const auto r = cmd_suite(corpus / "manifest.json");
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
  EXPECT_TRUE(r.pass());
  EXPECT_GT(r.results.at("total_checks").get<int>(), 100);
}

TEST(Commands, KOutOfRange) {
  try {
    cmd_algebra(corpus / "surfaces" / "torus.json", 5, std::nullopt, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::KOutOfRange);
  }
}
