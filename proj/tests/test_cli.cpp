#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "eulerprod/cli.hpp"

using namespace eulerprod;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "eulerprod");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("eulerprod_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, ClassifyUnitary) {
  const auto r = run({"classify", "--poly", "x^2-2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("UNITARY m=2, Z^±(s,f)=Z_2^±(s)"), std::string::npos) << r.out;
}

TEST(Cli, ClassifyNonUnitary) {
  const auto r = run({"classify", "--poly", "x-5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("NON-UNITARY witness=-2 f(witness)=-7"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("natural boundary Re(s)=0"), std::string::npos);
  EXPECT_EQ(run({"classify", "--poly", "2x^2"}).code, 1);
}

TEST(Cli, RejectedInputs) {
  EXPECT_EQ(run({"tau", "--limit", "0"}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"tau", "--limit", "5", "--bogus"}).code, 1);
  EXPECT_EQ(run({"tau", "--limit", "5", "--format", "xml"}).code, 1);
  EXPECT_EQ(run({"lfun", "--spec", "zeta", "--s", "1.0", "--cutoff", "100"}).code, 1);
  EXPECT_EQ(run({"lfun", "--spec", "zeta", "--s", "abc", "--cutoff", "100"}).code, 1);
  EXPECT_EQ(run({"verify", "--identity", "nope", "--cutoff", "100"}).code, 1);
  EXPECT_EQ(run({"verify", "--cutoff", "100", "--limit", "50"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
}

TEST(Cli, TauCsvAndJson) {
  auto r = run({"tau", "--limit", "6"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "n,tau\n1,1\n2,-24\n3,252\n4,-1472\n5,4830\n6,-6048\n");
  r = run({"tau", "--limit", "3", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 3u);
  EXPECT_EQ(j[1]["tau"], "-24");
  EXPECT_EQ(j[1]["n"], 2);
}

TEST(Cli, OutFile) {
  const auto dir = temp_dir("out");
  const auto path = (dir / "angles.csv").string();
  const auto r = run({"angles", "--limit", "30", "--out", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "p,a,theta");
}

TEST(Cli, Lfun) {
  auto r = run({"lfun", "--spec", "zeta", "--s", "2", "--cutoff", "10", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["value"]["re"].get<double>(), 1225.0 / 768.0, 1e-15);
  r = run({"lfun", "--spec", "zpm:4:+", "--s", "2.5,1", "--cutoff", "200"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "spec,s_re,s_im,cutoff,sigma,value_re,value_im,tail_hint,pole_at");
  r = run({"lfun", "--spec", "zf:x^2-2:-", "--s", "3", "--cutoff", "100", "--order", "tree"});
  EXPECT_EQ(r.code, 0);
}

TEST(Cli, VerifySymMinus) {
  const auto r = run({"verify", "--identity", "sym-minus", "--max-m", "6", "--cutoff", "1000"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(Cli, VerifyShimuraJson) {
  const auto r = run({"verify", "--identity", "shimura", "--cutoff", "200", "--limit", "40000", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  bool saw_cross_check = false;
  for (const auto& row : j) {
    EXPECT_TRUE(row["pass"].get<bool>());
    if (row["check"] == "a(p^2) vs tau(p^2)") saw_cross_check = true;
  }
  EXPECT_TRUE(saw_cross_check);
}

TEST(Cli, CharacterCommands) {
  auto r = run({"character", "--poly", "x^3-3x", "--decompose"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("f(chi_1) = -chi_1 + chi_3"), std::string::npos) << r.out;
  r = run({"character", "--unitary", "--poly", "x^2-1"});
  EXPECT_NE(r.out.find("NON-UNITARY"), std::string::npos);
  r = run({"character", "--unitary", "--poly", "x^4-4x^2+2", "--sign", "+"});
  EXPECT_NE(r.out.find("UNITARY (max |h| <= 2, certified exactly)"), std::string::npos) << r.out;
}

TEST(Cli, SatotateAndBoundarySvg) {
  const auto dir = temp_dir("svg");
  auto r = run({"satotate", "--limit", "2000", "--bins", "20", "--svg", (dir / "h.svg").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("# primes=303 sup_distance=", 0), 0u) << r.out;
  r = run({"boundary", "--poly", "x^2-1", "--sign", "-", "--cutoff", "1000", "--svg", (dir / "b.svg").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, 22), "p,root_modulus,sigma,t");
  for (const char* f : {"h.svg", "b.svg"}) {
    std::ifstream in(dir / f);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str().rfind("<svg", 0), 0u);
    EXPECT_NE(ss.str().find("</svg>"), std::string::npos);
  }
}

TEST(Cli, CacheRoundTrip) {
  const auto dir = temp_dir("cache");
  std::ostringstream warn;
  TableCache cache(dir, warn);
  const auto fresh_tau = expand_delta(100);
  EXPECT_EQ(cache.tau_table(100), fresh_tau);
  EXPECT_TRUE(std::filesystem::exists(dir / "tau.txt"));
  EXPECT_EQ(cache.tau_table(100), fresh_tau);
  EXPECT_EQ(cache.tau_table(40), expand_delta(40));

  const auto fresh_angles = build_angles(fresh_tau, 100);
  const auto loaded = cache.angle_table(100);
  const auto reloaded = cache.angle_table(100);
  ASSERT_EQ(reloaded.size(), fresh_angles.size());
  for (std::size_t i = 0; i < reloaded.size(); ++i) {
    EXPECT_NEAR(reloaded.entries()[i].theta, fresh_angles.entries()[i].theta, 1e-15);
    EXPECT_EQ(reloaded.entries()[i].a, fresh_angles.entries()[i].a);
    EXPECT_EQ(loaded.entries()[i].theta, reloaded.entries()[i].theta);
  }
  EXPECT_TRUE(warn.str().empty());
}

TEST(Cli, CorruptCacheRecomputesWithWarning) {
  const auto dir = temp_dir("corrupt");
  {
    std::ofstream f(dir / "tau.txt");
    f << "# tau limit=10\n1\n-24\nbanana\n";
  }
  std::ostringstream warn;
  TableCache cache(dir, warn);
  EXPECT_EQ(cache.tau_table(10), expand_delta(10));
  EXPECT_NE(warn.str().find("corrupt"), std::string::npos);
}

TEST(Cli, MissingCacheIsSilent) {
  const auto dir = temp_dir("missing") / "nested";
  const auto r = run({"--cache-dir", dir.string(), "tau", "--limit", "20"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.err.empty());
  EXPECT_TRUE(std::filesystem::exists(dir / "tau.txt"));
}

TEST(Cli, CacheDirFromEnvironment) {
  const auto dir = temp_dir("env");
  ::setenv(kCacheDirEnv, dir.string().c_str(), 1);
  const auto r = run({"angles", "--limit", "50"});
  ::unsetenv(kCacheDirEnv);
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "angles.csv"));
}

TEST(Cli, Deterministic) {
  const auto a = run({"boundary", "--poly", "x-5", "--cutoff", "500", "--format", "json"});
  const auto b = run({"boundary", "--poly", "x-5", "--cutoff", "500", "--format", "json"});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, LocaleIndependentNumbers) {
  EXPECT_EQ(parse_double("2.5"), 2.5);
  EXPECT_EQ(cli::parse_complex("2,1.5"), std::complex<double>(2.0, 1.5));
  EXPECT_THROW(parse_double("2,5"), InvalidInput);
  EXPECT_EQ(format_double(0.1), "0.1");
}
