#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hypinv/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "hypinv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = hypinv::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(HYPINV_TEST_DATA) + "/" + name; }

std::string temp_doc(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("hypinv_cli_" + name);
  std::ofstream(path) << content;
  return path.string();
}

const char* kCounterNear = R"j({
  "T": "1",
  "X": "2*(p(t) - 1)/(q(t)*(t + x))",
  "U": "2*(1 - (p(t) - 1)*(t + x))/(q(t)*(t + x)^2)",
  "functions": {"p": "t", "q": "t + 2 + 1/100000"}
})j";

}  // namespace

TEST(FormatReal, TwelveDigits) {
  using hypinv::cli::format_real;
  EXPECT_EQ(format_real(1.0), "1");
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(format_real(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_real(-2.5e-10), "-2.5e-10");
  EXPECT_EQ(format_real(-0.0), "0");
  EXPECT_EQ(format_real(1.0 / 0.0), "null");
}

TEST(Classify, S62Document) {
  Result r = run({"classify", data("s6_2.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["subclass"], "S6");
  EXPECT_EQ(j["invariants"]["P"], "lambda");
  EXPECT_EQ(j["invariants"]["Q"], "mu");
  EXPECT_EQ(j["canonical_target"], "S6_2");
  EXPECT_EQ(j["swapped"], false);
}

TEST(Classify, Corpus) {
  const std::pair<const char*, const char*> docs[] = {
      {"wave.json", "S1"},          {"wave_gauge.json", "S1"},  {"s2.json", "S2"},
      {"s3.json", "S3"},            {"s4.json", "S4"},          {"s5.json", "S5"},
      {"s5_numeric.json", "S5"},    {"s6_1.json", "S6"},        {"s6_2.json", "S6"},
      {"counterexample.json", "S2"}, {"counterexample_gauge.json", "S2"}};
  for (const auto& [doc, tag] : docs) {
    Result r = run({"classify", data(doc)});
    ASSERT_EQ(r.code, 0) << doc << ": " << r.err;
    json j = json::parse(r.out);
    EXPECT_EQ(j["subclass"], tag) << doc;
    ASSERT_TRUE(j["decisions"].is_array());
    for (const auto& d : j["decisions"]) EXPECT_TRUE(d.contains("predicate") && d.contains("method"));
  }
  json w = json::parse(run({"classify", data("wave.json")}).out);
  EXPECT_EQ(w["canonical_target"], "wave");
  EXPECT_EQ(w["canonical_form"]["U"], "0");
  json s61 = json::parse(run({"classify", data("s6_1.json")}).out);
  EXPECT_EQ(s61["invariants"]["Q"], "0");
  EXPECT_EQ(s61["canonical_target"], "S6_1");
}

TEST(Classify, Assume) {
  Result r = run({"classify", data("s6_1.json"), "--assume", "lambda=3"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["invariants"]["P"], "3");
  EXPECT_EQ(j["canonical_form"]["X"], "-(3*x)");
  Result bad = run({"classify", data("s6_1.json"), "--assume", "nu=3"});
  EXPECT_EQ(bad.code, 3);
  EXPECT_EQ(run({"classify", data("s6_1.json"), "--assume", "lambda"}).code, 3);
}

TEST(Invariants, DerivedCoordinates) {
  Result r = run({"invariants", data("s4.json"), "--order", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["subclass"], "S4");
  EXPECT_EQ(j["order"], 1);
  EXPECT_EQ(j["invariants"]["P"], "4");
  EXPECT_EQ(j["derived"]["Q_10"], "1");
  EXPECT_EQ(j["derived"].size(), 7u);
  EXPECT_TRUE(j["operators"].contains("D1"));
  json s6 = json::parse(run({"invariants", data("s6_2.json")}).out);
  EXPECT_FALSE(s6.contains("derived"));
}

TEST(Equivalence, ExitCodes) {
  Result eq = run({"equivalence", data("counterexample.json"), data("counterexample_gauge.json")});
  EXPECT_EQ(eq.code, 0) << eq.err;
  EXPECT_EQ(json::parse(eq.out)["status"], "equivalent");
  Result ne = run({"equivalence", data("counterexample.json"), data("counterexample_2t.json")});
  EXPECT_EQ(ne.code, 1);
  json j = json::parse(ne.out);
  EXPECT_EQ(j["status"], "not_equivalent");
  EXPECT_GT(j["residual_ab"].get<double>(), 0.1);
  EXPECT_EQ(run({"equivalence", data("wave.json"), data("wave_gauge.json")}).code, 0);
  EXPECT_EQ(run({"equivalence", data("s2.json"), data("s3.json")}).code, 1);
  EXPECT_EQ(run({"equivalence", data("s6_1.json"), data("s6_2.json")}).code, 1);
  Result band = run({"equivalence", data("counterexample.json"), temp_doc("near.json", kCounterNear)});
  EXPECT_EQ(band.code, 2);
  EXPECT_EQ(json::parse(band.out)["status"], "indeterminate");
}

TEST(Equivalence, ContractOnCorpus) {
  const char* docs[] = {"wave.json", "wave_gauge.json", "s2.json", "s3.json", "s4.json", "s5_numeric.json",
                        "counterexample.json", "counterexample_gauge.json", "counterexample_2t.json"};
  for (const char* a : docs) {
    for (const char* b : docs) {
      Result r = run({"equivalence", data(a), data(b)});
      ASSERT_FALSE(r.out.empty()) << a << " " << b << ": " << r.err;
      std::string status = json::parse(r.out)["status"];
      int expected = status == "equivalent" ? 0 : status == "not_equivalent" ? 1 : 2;
      EXPECT_EQ(r.code, expected) << a << " " << b;
      if (std::string(a) == b) EXPECT_EQ(r.code, 0) << a;
    }
  }
}

TEST(Equivalence, DomainOptions) {
  Result r = run({"equivalence", data("s4.json"), data("s4.json"), "--domain", "1.5,2.5,0.2,1.2", "--grid", "8,6",
                  "--tol", "1e-7"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(run({"equivalence", data("s2.json"), data("s2.json"), "--domain", "1,0,0,1"}).code, 3);
  EXPECT_EQ(run({"equivalence", data("s2.json"), data("s2.json"), "--grid", "0,3"}).code, 3);
  EXPECT_EQ(run({"equivalence", data("s2.json"), data("s2.json"), "--domain", "1,2"}).code, 3);
}

TEST(Manifold, Csv) {
  auto path = std::filesystem::temp_directory_path() / "hypinv_cli_m.csv";
  std::filesystem::remove(path);
  Result r = run({"manifold", data("counterexample.json"), "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream f(path);
  std::string header, line;
  std::getline(f, header);
  EXPECT_EQ(header.rfind("point_t,point_x,J2_00,", 0), 0u) << header;
  int rows = 0;
  while (std::getline(f, line)) ++rows;
  EXPECT_EQ(rows, 400);
  Result s = run({"manifold", data("s3.json"), "--grid", "5,5", "--order", "0"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(s.out.substr(0, s.out.find('\n')), "point_t,point_x,L_00,P,Q_00");
}

TEST(Manifold, Rejections) {
  EXPECT_EQ(run({"manifold", data("s6_1.json")}).code, 3);
  EXPECT_EQ(run({"manifold", data("wave.json")}).code, 3);
  EXPECT_EQ(run({"manifold", data("s5.json")}).code, 3);
  EXPECT_EQ(run({"manifold", data("s3.json"), "--grid", "3,3"}).code, 3);
}

TEST(Errors, InputErrors) {
  Result j = run({"classify", data("bad_json.json")});
  EXPECT_EQ(j.code, 3);
  EXPECT_NE(j.err.find("byte"), std::string::npos) << j.err;
  Result e = run({"classify", data("bad_expr.json")});
  EXPECT_EQ(e.code, 3);
  EXPECT_NE(e.err.find("field 'T'"), std::string::npos) << e.err;
  EXPECT_NE(e.err.find("offset 4"), std::string::npos) << e.err;
  EXPECT_EQ(run({"classify", data("missing.json")}).code, 3);
  EXPECT_EQ(run({"classify"}).code, 3);
  EXPECT_EQ(run({"frobnicate"}).code, 3);
  EXPECT_EQ(run({"classify", data("s2.json"), "--order", "-1"}).code, 3);
  EXPECT_EQ(run({"equivalence", data("s2.json")}).code, 3);
}

TEST(Errors, ClassificationFailure) {
  std::string doc = temp_doc("ind.json", R"j({"T": "ln(-1 - t^2)", "X": "1", "U": "0"})j");
  Result r = run({"classify", doc});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("H == 0"), std::string::npos) << r.err;
}

TEST(Help, ExitsZero) {
  Result r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("equivalence"), std::string::npos);
}

TEST(Determinism, ByteIdentical) {
  std::vector<std::vector<std::string>> cmds = {
      {"classify", data("s5.json")},
      {"classify", data("counterexample.json"), "--seed", "7"},
      {"invariants", data("s2.json")},
      {"equivalence", data("counterexample.json"), data("counterexample_2t.json")},
      {"manifold", data("s4.json"), "--domain", "1.5,2.5,0.2,1.2"},
      {"selftest"}};
  for (const auto& c : cmds) {
    Result a = run(c), b = run(c);
    EXPECT_EQ(a.code, b.code) << c[0];
    EXPECT_EQ(a.out, b.out) << c[0];
    EXPECT_FALSE(a.out.empty()) << c[0];
  }
}

TEST(Selftest, Passes) {
  Result r = run({"selftest", "--n", "1"});
  EXPECT_EQ(r.code, 0) << r.out;
  json j = json::parse(r.out);
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["cartan"]["r1"], 13);
  EXPECT_EQ(j["cartan"]["characters"], json({4, 3, 1}));
  for (const auto& c : j["checks"]) EXPECT_TRUE(c["pass"].get<bool>()) << c["name"];
}
