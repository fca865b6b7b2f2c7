#include <gtest/gtest.h>

#include <map>
#include <set>
#include <string>

#include "loopforge/io.hpp"
#include "loopforge/suite.hpp"

using namespace loopforge;

namespace {

std::string masked(const VerificationReport& r) {
  auto j = report_json(r);
  for (auto& c : j["checks"]) c["ms"] = 0;
  return j.dump();
}

const VerificationReport& report(unsigned n) {
  static std::map<unsigned, VerificationReport> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, theorem_suite(n)).first;
  return it->second;
}

}  // namespace

TEST(Suite, ChecksInFixedOrder) {
  const auto names = theorem_suite_checks();
  EXPECT_EQ(names.size(), 28U);
  EXPECT_EQ(names.front(), "mlt_even_permutations");
  EXPECT_EQ(std::set<std::string>(names.begin(), names.end()).size(), names.size());
  const VerificationReport& r = report(3);
  ASSERT_EQ(r.checks.size(), names.size());
  for (std::size_t i = 0; i < names.size(); ++i) EXPECT_EQ(r.checks[i].name, names[i]);
}

TEST(Suite, OctonionsAllPass) {
  const VerificationReport& r = report(3);
  EXPECT_EQ(r.mode, Mode::exhaustive);
  for (const auto& c : r.checks) {
    EXPECT_EQ(c.status, Status::pass) << c.name << ": " << c.witness.value_or("");
  }
  EXPECT_EQ(r.exit_code(), 0);
  EXPECT_EQ(r.find("inn_structure")->values["order"]["value"], 64);
  EXPECT_EQ(r.find("mlt_order")->values["order"]["value"], 1024);
  EXPECT_EQ(r.find("mlt_element_orders")->values["tested"], 1024);
}

TEST(Suite, QuaternionsFailOnlyOneSidedStatements) {
  const VerificationReport& r = report(2);
  std::set<std::string> failed;
  for (const auto& c : r.checks) {
    if (c.status != Status::pass) failed.insert(c.name);
  }
  EXPECT_EQ(failed, (std::set<std::string>{"onesided_orders", "semidirect_mlt_left"}));
  EXPECT_EQ(r.exit_code(), 1);
  EXPECT_EQ(r.find("onesided_orders")->values["enumerated_inn_left"], 1);
}

TEST(Suite, SedenionsFindQuasiOctonions) {
  const VerificationReport& r = report(4);
  for (const auto& c : r.checks) {
    EXPECT_EQ(c.status, Status::pass) << c.name << ": " << c.witness.value_or("");
  }
  const auto& ik = r.find("ik_associator_classification")->values;
  EXPECT_GT(ik["QuasiO16"].get<int>(), 0);
  EXPECT_EQ(ik["violations"], 0);
  EXPECT_EQ(r.find("h_mapping")->values["flipped_classes"], 8);
  EXPECT_GT(r.find("subloop16_classification")->values["QuasiO16"].get<int>(), 0);
  EXPECT_EQ(r.find("inn_structure")->values["order"]["value"], 16384);
}

TEST(Suite, RankModeLargerLoops) {
  SuiteOptions opt;
  opt.samples = 2000;
  const VerificationReport r5 = theorem_suite(5, opt);
  EXPECT_EQ(r5.mode, Mode::rank);
  EXPECT_EQ(r5.exit_code(), 0);
  EXPECT_EQ(r5.find("inn_structure")->values["rank"], 30);
  EXPECT_EQ(r5.find("mlt_even_permutations")->values["tested"], 2000 + 128);
  const VerificationReport r6 = theorem_suite(6, opt);
  EXPECT_EQ(r6.exit_code(), 0);
  EXPECT_EQ(r6.find("inn_structure")->values["rank"], 62);
  EXPECT_EQ(r6.find("mlt_order")->values["rank_order"]["pow2"], "2^69");
  EXPECT_TRUE(r6.find("mlt_order")->values["rank_order"]["value"].is_null());
}

TEST(Suite, ExplicitRankModeAtSmallN) {
  SuiteOptions opt;
  opt.mode = Mode::rank;
  opt.samples = 500;
  const VerificationReport r = theorem_suite(3, opt);
  EXPECT_EQ(r.mode, Mode::rank);
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(Suite, CapSkipsClosureChecks) {
  SuiteOptions opt;
  opt.cap = 100;
  const VerificationReport r = theorem_suite(3, opt);
  EXPECT_EQ(r.exit_code(), 2);
  EXPECT_EQ(r.find("mlt_order")->status, Status::skipped);
  EXPECT_EQ(r.find("doubled_associators")->status, Status::pass);
}

TEST(Suite, DeterministicAndThreadIndependent) {
  SuiteOptions opt;
  opt.mode = Mode::rank;
  opt.samples = 1000;
  opt.seed = 7;
  const std::string a = masked(theorem_suite(4, opt));
  const std::string b = masked(theorem_suite(4, opt));
  opt.threads = 4;
  const std::string c = masked(theorem_suite(4, opt));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
}

TEST(Suite, SeedIsRecorded) {
  SuiteOptions opt;
  opt.mode = Mode::rank;
  opt.samples = 10;
  opt.seed = 42;
  const VerificationReport r = theorem_suite(3, opt);
  EXPECT_EQ(r.seed, 42U);
  EXPECT_EQ(r.find("mlt_even_permutations")->values["seed"], 42);
}

TEST(Suite, RejectsOutOfRange) {
  EXPECT_THROW((void)theorem_suite(1), OutOfRange);
  EXPECT_THROW((void)theorem_suite(kMaxSuiteDimension + 1), OutOfRange);
}

TEST(Suite, ModeResolution) {
  EXPECT_EQ(resolve_mode(std::nullopt, 4), Mode::exhaustive);
  EXPECT_EQ(resolve_mode(std::nullopt, 5), Mode::rank);
  EXPECT_EQ(resolve_mode(Mode::rank, 2), Mode::rank);
}

TEST(Report, JsonSchema) {
  const auto j = report_json(report(3));
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j["mode"], "exhaustive");
  EXPECT_EQ(j["seed"], 1);
  const auto& c = j["checks"][0];
  for (const char* key : {"name", "anchor", "status", "values", "ms"}) {
    EXPECT_TRUE(c.contains(key)) << key;
  }
  EXPECT_EQ(c["status"], "pass");
  EXPECT_FALSE(c.contains("witness"));
}
