#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(NDSL_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fx(const std::string& name) { return std::string(NDSL_FIXTURES) + "/" + name + ".json"; }

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(Cli, SolveExampleA) {
  const auto r = run("solve " + fx("exampleA") + " --real-window -60 60 --complex-box -10 10 -10 10");
  ASSERT_EQ(r.code, 0);
  const auto rows = csv_rows(r.out);
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')),
            "re_lambda,im_lambda,multiplicity,simple,osc_count,krein,re_bilinear,im_bilinear,class");
  int nonreal = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double re = std::stod(rows[i][0]), im = std::stod(rows[i][1]);
    if (im == 0.0) continue;
    ++nonreal;
    EXPECT_LE(std::abs(re), 1e-6);
    EXPECT_NEAR(std::abs(im), 4.3, 0.1);
    EXPECT_EQ(rows[i][4], "");
  }
  EXPECT_EQ(nonreal, 2);
}

TEST(Cli, SolveIsDeterministic) {
  const std::string args = "solve " + fx("exampleB") + " --real-window -80 80";
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, IndicesExampleB) {
  const auto r = run("indices " + fx("exampleB"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("n_R=2\n"), std::string::npos);
  EXPECT_NE(r.out.find("n_H=3\n"), std::string::npos);
  EXPECT_NE(r.out.find("validated=true\n"), std::string::npos);
  EXPECT_NE(r.out.find("tol_lambda=1e-10\n"), std::string::npos);
}

TEST(Cli, ClassifyTrivial) {
  const auto r = run("classify " + fx("trivial"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("right_definite"), std::string::npos);
}

TEST(Cli, IndicesOnDefiniteProblemIsPrecondition) {
  EXPECT_EQ(run("indices " + fx("exampleA_q0")).code, 4);
}

TEST(Cli, InvalidProblem) {
  const auto path = std::filesystem::temp_directory_path() / "ndsl_cli_invalid.json";
  std::ofstream(path) << R"js({"interval":[0,1],"p":[{"to":1,"expr":"-1"}],"q":[{"to":1,"expr":"0"}],
                           "r":[{"to":1,"expr":"1"}]})js";
  EXPECT_EQ(run("solve " + path.string()).code, 2);
  std::ofstream(path) << R"js({"interval":[0,1],"p":[{"to":1,"expr":"1"}],"q":[{"to":1,"expr":"0"}],
                           "r":[{"to":1,"expr":"0"}]})js";
  EXPECT_EQ(run("classify " + path.string()).code, 2);
  std::filesystem::remove(path);
}

TEST(Cli, BadWindow) {
  EXPECT_EQ(run("solve " + fx("trivial") + " --real-window 5 1").code, 2);
  EXPECT_NE(run("solve " + fx("trivial") + " --tol-lambda -1").code, 0);
}

TEST(Cli, BoxEdgeThroughEigenvalue) {
  EXPECT_EQ(run("solve " + fx("trivial") + " --complex-box 4 10 -1 1 --real-window 0.5 3").code, 0);
}

TEST(Cli, NumericalFailure) {
  const auto path = std::filesystem::temp_directory_path() / "ndsl_cli_smooth.json";
  std::ofstream(path) << R"js({"interval":[0,1],"p":[{"to":1,"expr":"1+x"}],"q":[{"to":1,"expr":"0"}],
                           "r":[{"to":1,"expr":"1"}]})js";
  EXPECT_EQ(run("scan " + path.string() + " --points 5 --rk-tol 1e-300").code, 3);
  std::filesystem::remove(path);
}

TEST(Cli, EigenfunctionAndPlot) {
  const auto dir = std::filesystem::temp_directory_path() / "ndsl_cli_plot";
  std::filesystem::remove_all(dir);
  const auto out = dir / "ef.csv";
  std::filesystem::create_directories(dir);
  const auto r = run("eigenfunction " + fx("exampleA") + " --lambda 0 4.36280170925174 --emit-plot " + dir.string() +
                     " --out " + out.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("interlacing=pass"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("class=complex_ghost_nondegenerate"), std::string::npos);
  std::ifstream f(out);
  std::string header;
  std::getline(f, header);
  EXPECT_EQ(header, "x,re_u,im_u,re_v,im_v");
  EXPECT_TRUE(std::filesystem::exists(dir / "eigenfunction_plot.csv"));
  std::filesystem::remove_all(dir);
}

TEST(Cli, ScanComplexMesh) {
  const auto r = run("scan " + fx("trivial") + " --complex-box -1 1 -1 1 --points 3");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(csv_rows(r.out).size(), 10u);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "re_lambda,im_lambda,re_F,im_F");
}

TEST(Cli, AsymptoticsAndOracle) {
  const auto a = run("asymptotics " + fx("trivial") + " --n-max 5");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(csv_rows(a.out).size(), 6u);
  const auto o = run("oracle " + fx("exampleA") + " --real-window -50 50 --oracle-n 200");
  ASSERT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("max_rel_error="), std::string::npos);
  EXPECT_EQ(run("oracle " + fx("trivial") + " --oracle-n 4").code, 2);
}

TEST(Cli, MissingSubcommand) {
  EXPECT_NE(run("").code, 0);
}
