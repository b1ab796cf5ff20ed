#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"

namespace canondeg::cli {
namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

Json invoke_json(const std::vector<std::string>& args, int expected = kOk) {
  const Outcome o = invoke(args);
  EXPECT_EQ(o.code, expected) << o.err;
  return Json::parse(o.out);
}

TEST(Cli, Modular) {
  const Json j = invoke_json({"modular", "--level", "58"});
  EXPECT_EQ(j["command"], "modular");
  EXPECT_EQ(j["records"][0]["genus"], 6);
  EXPECT_EQ(j["records"][0]["chi"], -10);
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["tool_version"], kToolVersion);
  EXPECT_EQ(j["seed"], 0);
}

TEST(Cli, ModularWindow) {
  const Json j = invoke_json({"modular", "--level", "1", "--window"});
  EXPECT_EQ(j["records"][0]["window_residual"], "13/6");
  EXPECT_EQ(j["records"][0]["window_holds"], true);
}

TEST(Cli, ModularRejectsNonSquarefree) {
  const Outcome o = invoke({"modular", "--level", "12"});
  EXPECT_EQ(o.code, kInvalidInput);
  EXPECT_NE(o.err.find("squarefree"), std::string::npos) << o.err;
}

TEST(Cli, Curvature) {
  const Json j = invoke_json({"curvature", "--type", "I", "--n", "3", "--m", "2", "--verify"});
  const Json& row = j["records"][0];
  EXPECT_EQ(row["closed_inv"], "5/1");
  EXPECT_NEAR(row["numerical_inv"].get<double>(), 5.0, 1e-6);
  EXPECT_EQ(row["tashiro_exact"], true);
  EXPECT_EQ(j["pass"], true);
}

TEST(Cli, CurvatureDerivedLabel) {
  const Json j = invoke_json({"curvature", "--type", "III", "--n", "5", "--restarts", "8"});
  EXPECT_EQ(j["records"][0]["closed_source"], "derived");
  EXPECT_EQ(j["records"][0]["closed_inv"], "8/1");
}

TEST(Cli, Shimura) {
  const Json j = invoke_json({"shimura", "--disc", "26", "--level", "5"});
  EXPECT_EQ(j["records"][0]["genus"], 7);
  EXPECT_EQ(j["records"][0]["chi"], -12);
  EXPECT_EQ(invoke({"shimura", "--disc", "26", "--level", "13"}).code, kInvalidInput);
  EXPECT_EQ(invoke({"shimura", "--disc", "3", "--level", "1"}).code, kInvalidInput);
}

TEST(Cli, Family) {
  const Json m = invoke_json({"family", "--kind", "modular", "--d", "2", "--p", "29", "--ells", "2"});
  EXPECT_EQ(m["records"][0]["ratio"], "6/5");
  EXPECT_EQ(m["records"][0]["lower_bound"], "4/15");

  const Json q = invoke_json(
      {"family", "--kind", "quat", "--disc", "26", "--d", "3", "--p", "5", "--ells", "3,7"});
  EXPECT_EQ(q["records"][0]["ratio"], "3/1");
  EXPECT_EQ(q["records"][0]["deg_fK"], 1152);

  EXPECT_EQ(invoke({"family", "--kind", "quat", "--d", "1", "--p", "5"}).code, kInvalidInput);
  EXPECT_EQ(invoke({"family", "--kind", "quat", "--disc", "6", "--d", "1", "--p", "5"}).code,
            kInvalidInput);
}

TEST(Cli, FamilySearch) {
  const Json j = invoke_json({"family-search", "--kind", "modular", "--d", "2", "--p-max", "31",
                              "--ell-max", "3", "--top", "2"});
  ASSERT_EQ(j["records"].size(), 2u);
  const Json all = invoke_json(
      {"family-search", "--kind", "quat", "--disc", "26", "--d", "2", "--p-max", "7", "--ell-max", "5"});
  for (const Json& row : all["records"]) EXPECT_EQ(row["ratio"], "2/1");
}

TEST(Cli, CurvatureProduct) {
  const Json j = invoke_json({"curvature-product", "--factors", "I:1,1;IV:3"});
  ASSERT_EQ(j["records"].size(), 3u);
  EXPECT_EQ(j["records"][2]["closed_inv"], "4/1");
  EXPECT_EQ(j["records"][2]["dim"], 4);
  EXPECT_EQ(invoke({"curvature-product", "--factors", ""}).code, kInvalidInput);
  EXPECT_EQ(invoke({"curvature-product", "--factors", "VII:2"}).code, kInvalidInput);
}

TEST(Cli, ParseErrors) {
  EXPECT_EQ(invoke({}).code, kInvalidInput);
  EXPECT_EQ(invoke({"bogus"}).code, kInvalidInput);
  EXPECT_EQ(invoke({"modular"}).code, kInvalidInput);
  EXPECT_EQ(invoke({"--format", "xml", "modular", "--level", "5"}).code, kInvalidInput);
  EXPECT_EQ(invoke({"curvature", "--type", "I", "--n", "2", "--m", "3"}).code, kInvalidInput);
  EXPECT_EQ(invoke({"--help"}).code, kOk);
}

TEST(Cli, SeedIsByteDeterministic) {
  const std::vector<std::string> args = {"--seed", "5", "curvature", "--type", "II", "--n", "3"};
  const Outcome a = invoke(args);
  const Outcome b = invoke(args);
  EXPECT_EQ(a.code, kOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(Json::parse(a.out)["seed"], 5);
  const Outcome c = invoke({"--seed", "6", "curvature", "--type", "II", "--n", "3"});
  EXPECT_NE(a.out, c.out);
  // subcommand-position seed is forwarded to the global option
  const Outcome d = invoke({"curvature", "--type", "II", "--n", "3", "--seed", "5"});
  EXPECT_EQ(a.out, d.out);
}

// Split a CSV line honoring double quotes.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cells.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.emplace_back();
    } else {
      cells.back() += ch;
    }
  }
  return cells;
}

void expect_csv_matches_json(const std::vector<std::string>& args) {
  std::vector<std::string> csv_args = {"--format", "csv"};
  csv_args.insert(csv_args.end(), args.begin(), args.end());
  const Json j = invoke_json(args);
  const Outcome c = invoke(csv_args);
  ASSERT_EQ(c.code, kOk);

  std::istringstream in(c.out);
  std::string line;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) continue;
    if (header.empty()) {
      header = split_csv(line);
    } else {
      rows.push_back(split_csv(line));
    }
  }
  ASSERT_EQ(rows.size(), j["records"].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Json& rec = j["records"][r];
    ASSERT_EQ(rows[r].size(), header.size());
    for (std::size_t k = 0; k < header.size(); ++k) {
      if (!rec.contains(header[k])) {
        EXPECT_EQ(rows[r][k], "");
        continue;
      }
      const Json& v = rec[header[k]];
      const std::string expected = v.is_string() ? v.get<std::string>() : v.is_null() ? "" : v.dump();
      EXPECT_EQ(rows[r][k], expected) << header[k];
    }
  }
}

TEST(Cli, CsvMatchesJson) {
  expect_csv_matches_json({"modular", "--level", "58", "--window"});
  expect_csv_matches_json({"family", "--kind", "modular", "--d", "2", "--p", "101", "--ells", "2"});
  expect_csv_matches_json({"curvature", "--type", "IV", "--n", "4", "--restarts", "4"});
  expect_csv_matches_json({"family-search", "--kind", "modular", "--d", "3", "--p-max", "40",
                           "--ell-max", "7"});
}

TEST(Cli, VerifyAllFastPasses) {
  const Json j = invoke_json({"verify-all", "--fast"});
  EXPECT_EQ(j["records"].size(), 10u);
  EXPECT_EQ(j["pass"], true);
}

}  // namespace
}  // namespace canondeg::cli
