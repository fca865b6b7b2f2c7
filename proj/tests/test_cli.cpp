#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "loopforge/permutation.hpp"

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(LOOPFORGE_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::size_t lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST(Cli, TableCsv) {
  const Result r = run("table --n 2 --format csv");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(lines(r.out), 9U);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "1,i1,i2,i1i2,-1,-i1,-i2,-i1i2");
}

TEST(Cli, TableJson) {
  const Result r = run("table --n 3 --format json");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j["size"], 16);
  EXPECT_EQ(j["table"].size(), 16U);
  EXPECT_EQ(j["labels"][8], "-1");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("table --n 99").status, 2);
  EXPECT_EQ(run("verify --n 9").status, 2);
  EXPECT_EQ(run("verify --n 3 --format xml").status, 2);
  EXPECT_EQ(run("verify --n 3 --cap 0").status, 2);
  EXPECT_EQ(run("aut --n 5").status, 2);
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("frobnicate --n 2").status, 2);
}

TEST(Cli, VerifyOctonions) {
  const Result r = run("verify --n 3 --format json");
  EXPECT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["checks"].size(), 28U);
  for (const auto& c : j["checks"]) {
    if (c["name"] == "inn_structure") {
      EXPECT_EQ(c["values"]["order"]["value"], 64);
    }
    if (c["name"] == "mlt_order") {
      EXPECT_EQ(c["values"]["order"]["value"], 1024);
    }
  }
}

TEST(Cli, VerifyRankRecordsRank) {
  const Result r = run("verify --n 5 --mode rank --format json");
  EXPECT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["mode"], "rank");
  bool seen = false;
  for (const auto& c : j["checks"]) {
    if (c["name"] == "inn_structure") {
      EXPECT_EQ(c["values"]["rank"], 30);
      seen = true;
    }
  }
  EXPECT_TRUE(seen);
}

TEST(Cli, VerifyCapSkips) {
  const Result r = run("verify --n 4 --cap 1000");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("skipped"), std::string::npos);
}

TEST(Cli, VerifyQuaternionsReportsFailure) {
  EXPECT_EQ(run("verify --n 2").status, 1);
}

TEST(Cli, Groups) {
  const Result r = run("groups --n 3");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out,
            "Inn    64 (2^6)\n"
            "Mlt    1024 (2^10)\n"
            "Inn_l  8 (2^3)\n"
            "Mlt_l  128 (2^7)\n"
            "K      8 (2^3)\n"
            "N      128 (2^7)\n");
  const Result big = run("groups --n 6 --format json");
  EXPECT_EQ(big.status, 0);
  const auto j = nlohmann::json::parse(big.out);
  EXPECT_EQ(j["orders"]["Inn"]["pow2"], "2^62");
  EXPECT_EQ(j["orders"]["Mlt"]["value"], nullptr);
  EXPECT_EQ(j["orders"]["Inn_l"]["value"], 2147483648LL);
}

TEST(Cli, Aut) {
  EXPECT_EQ(run("aut --n 3").out, "1344\n");
  EXPECT_EQ(run("aut --n 4").out, "2688\n");
}

TEST(Cli, ByteIdenticalOutput) {
  EXPECT_EQ(run("groups --n 4").out, run("groups --n 4").out);
  EXPECT_EQ(run("table --n 3 --format json").out, run("table --n 3 --format json").out);
}

TEST(Cli, ExportWritesReadableGeneratorFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "loopforge_export_test";
  std::filesystem::remove_all(dir);
  ASSERT_EQ(run("export --n 3 --out " + dir.string()).status, 0);
  std::ifstream mlt(dir / "q3_mlt.txt");
  const auto gens = loopforge::read_generators(mlt);
  EXPECT_EQ(gens.size(), 32U);
  EXPECT_EQ(gens.front().degree(), 16U);
  std::ifstream k(dir / "q3_k.txt");
  EXPECT_EQ(loopforge::read_generators(k).size(), 3U);
  std::filesystem::remove_all(dir);
}
