#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "nieval/cli.hpp"
#include "nieval/errors.hpp"
#include "nieval/io.hpp"

namespace fs = std::filesystem;

namespace nieval {
namespace {

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() /
            (std::string("nieval_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

  fs::path write(const std::string& name, const std::string& content) const {
    const auto p = path_ / name;
    std::ofstream(p) << content;
    return p;
  }

 private:
  fs::path path_;
};

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

TEST(ReadCsv, HeaderQuotesBlankLines) {
  std::istringstream in("target,predicted\n\"1\", 0\n\n0,0\r\n");
  const auto pairs = read_label_pairs_csv(in, true);
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[0].target, "1");
  EXPECT_EQ(pairs[0].predicted, "0");
}

TEST(ReadCsv, MalformedLine) {
  std::istringstream in("1,0\n1,0,1\n");
  EXPECT_THROW(read_label_pairs_csv(in, false), InputError);
}

TEST(ReadJson, Shapes) {
  std::istringstream lone(R"({"tp":25,"fp":5,"tn":45,"fn":25})");
  const auto a = read_models_json(lone);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].name, "model");

  std::istringstream arr(R"([{"tp":1,"fp":2,"tn":3,"fn":4},{"name":"x","tp":1,"fp":0,"tn":0,"fn":1}])");
  const auto b = read_models_json(arr);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0].name, "M_1");
  EXPECT_EQ(b[1].name, "x");
}

TEST(ReadJson, Errors) {
  std::istringstream missing(R"({"tp":1,"fp":2,"tn":3})");
  EXPECT_THROW(read_models_json(missing), InputError);
  std::istringstream negative(R"({"tp":-1,"fp":2,"tn":3,"fn":1})");
  EXPECT_THROW(read_models_json(negative), InputError);
  std::istringstream garbage("{not json");
  EXPECT_THROW(read_models_json(garbage), InputError);
}

TEST(Fnv1a, KnownVectors) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(Cli, ReportJson) {
  TempDir dir;
  const auto in = dir.write("m1.json", R"({"name":"M_1","tp":25,"fp":5,"tn":45,"fn":25})");
  const auto r = cli({"report", "-i", in.string(), "-o", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j[0]["case"], "Case9");
  EXPECT_NEAR(j[0]["ni"].get<double>(), 0.1468, 5e-5);
  EXPECT_LT(j[0]["path_difference"].get<double>(), 1e-12);
}

TEST(Cli, PerfectClassifierFromPairs) {
  TempDir dir;
  const auto in = dir.write("perfect.csv", "1,1\n1,1\n0,0\n0,0\n0,0\n");
  const auto r = cli({"report", "-i", in.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Case4"), std::string::npos);
  EXPECT_NE(r.out.find("NI direct 1.0000"), std::string::npos);
}

TEST(Cli, SingleClassTargetExitsThree) {
  TempDir dir;
  const auto in = dir.write("single.csv", "1,1\n1,0\n1,1\n");
  const auto r = cli({"ni", "-i", in.string()});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("target entropy is zero"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"bogus"}).code, 2);
  EXPECT_EQ(cli({"ni", "-i", "/nonexistent/file.json"}).code, 2);
  EXPECT_EQ(cli({"map", "acc", "--w1", "10", "--w2", "20", "--out-dir", "/tmp"}).code, 2);
  TempDir dir;
  const auto in = dir.write("bad.csv", "a,b\nc,d\ne,f\n");
  EXPECT_EQ(cli({"ni", "-i", in.string()}).code, 2);
}

TEST(Cli, RankTable) {
  const auto r = cli({"rank", "-i", NIEVAL_DATA_DIR "/table2.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "-M_4 > M_1 > M_2 > -M_5 > M_6 > M_3");
}

TEST(Cli, RankTwoEqualModels) {
  TempDir dir;
  const auto in = dir.write("eq.json",
                            R"([{"name":"b","tp":3,"fp":1,"tn":4,"fn":1},
                                {"name":"a","tp":3,"fp":1,"tn":4,"fn":1}])");
  const auto r = cli({"rank", "-i", in.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("a > b\n"), std::string::npos);
  EXPECT_NE(r.out.find("tie-break"), std::string::npos);
}

TEST(Cli, MapAccuracyEven) {
  TempDir dir;
  const auto r = cli({"map", "acc", "--w1", "50", "--w2", "50", "--out-dir", dir.path().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto manifest = nlohmann::json::parse(slurp(dir.path() / "acc.manifest.json"));
  int curves = 0, points = 0;
  for (const auto& s : manifest["series"]) {
    const auto name = s["name"].get<std::string>();
    if (name.rfind("continuous:", 0) == 0) ++curves;
    if (name == "point:*") points = s["count"].get<int>();
  }
  EXPECT_EQ(curves, 4);
  EXPECT_EQ(points, 5);
  const auto csv = slurp(dir.path() / "acc.csv");
  EXPECT_EQ(csv.rfind("x,y,value,series\n", 0), 0u);
}

TEST(Cli, MapPrSurfaceActualMarksInfeasible) {
  TempDir dir;
  const auto r = cli({"map", "pr-surface", "--mode", "actual", "--w1", "60", "--w2", "40",
                      "--nx", "11", "--ny", "11", "--out-dir", dir.path().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = slurp(dir.path() / "pr-surface-actual.csv");
  EXPECT_NE(csv.find(",infeasible,"), std::string::npos);
}

TEST(Cli, MapIsByteIdentical) {
  TempDir a, b;
  for (const auto* kind : {"acc", "pr-region", "fr-surface"}) {
    ASSERT_EQ(cli({"map", kind, "--w1", "30", "--w2", "20", "--nx", "21", "--ny", "21",
                   "--out-dir", a.path().string()}).code, 0);
    ASSERT_EQ(cli({"map", kind, "--w1", "30", "--w2", "20", "--nx", "21", "--ny", "21",
                   "--out-dir", b.path().string()}).code, 0);
  }
  for (const auto& entry : fs::directory_iterator(a.path())) {
    EXPECT_EQ(slurp(entry.path()), slurp(b.path() / entry.path().filename()))
        << entry.path().filename();
  }
}

TEST(Cli, SwapClasses) {
  TempDir dir;
  const auto r = cli({"map", "rec", "--w1", "20", "--w2", "30", "--swap-classes", "--out-dir",
                      dir.path().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto manifest = nlohmann::json::parse(slurp(dir.path() / "rec.manifest.json"));
  EXPECT_EQ(manifest["w1"].get<double>(), 30.0);
  EXPECT_TRUE(manifest["swap_classes"].get<bool>());
}

}  // namespace
}  // namespace nieval
