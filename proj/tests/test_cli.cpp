#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "conegrad/cli.hpp"
#include "conegrad/problem_file.hpp"
#include "support.hpp"

using namespace conegrad;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "conegrad_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

fs::path problems_dir() {
  if (const char* p = std::getenv("CONEGRAD_PROBLEMS")) return p;
  return fs::path(__FILE__).parent_path().parent_path() / "problems";
}

std::vector<std::string> lines_of(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(ProblemFile, RoundTrip) {
  for (const auto& e : builtin_registry()) {
    const ProblemFile pf = problem_file_from_registry(e);
    const fs::path path = scratch(e.name + ".json");
    write_problem_file(path, pf);
    const ProblemFile back = read_problem_file(path);
    EXPECT_TRUE(same_problem(pf, back)) << e.name;
  }
}

TEST(ProblemFile, RoundTripKeepsParamsAndInfiniteBounds) {
  ProblemFile pf = problem_file_from_registry(find_builtin("pareto_quad2"));
  pf.feasible_set = FeasibleSet::box(conegrad::testing::vec({-INFINITY}), conegrad::testing::vec({4}));
  pf.params.sigma = 0.25;
  pf.params.max_iter = 17;
  const ProblemFile back = problem_from_json(to_json(pf));
  EXPECT_TRUE(same_problem(pf, back));
  EXPECT_EQ(back.config().max_iter, 17);
}

TEST(ProblemFile, FormatErrors) {
  auto code = [](const std::string& text) {
    try {
      problem_from_json(nlohmann::json::parse(text)).build();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InternalInconsistency;
  };
  EXPECT_EQ(code(R"({"name": "x"})"), ErrorCode::ProblemFormat);
  EXPECT_EQ(code(R"({"name":"a","variables":["x"],"objectives":["x"],"cone_dual_generators":[[1]],
                     "feasible_set":{"type":"torus"},"x0":[0]})"),
            ErrorCode::ProblemFormat);
  EXPECT_EQ(code(R"({"name":"a","variables":["x"],"objectives":["x","y"],"cone_dual_generators":[[1,0],[0,1]],
                     "feasible_set":{"type":"whole_space","dim":1},"x0":[0]})"),
            ErrorCode::UnknownIdentifier);
}

TEST(Cli, List) {
  const auto r = run({"list"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("example41"), std::string::npos);
  EXPECT_NE(r.out.find("pareto_quad2"), std::string::npos);
  EXPECT_NE(r.out.find("scalar_quad"), std::string::npos);
}

TEST(Cli, SolveExample41) {
  const auto r = run({"solve", (problems_dir() / "example41.json").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Stationary"), std::string::npos);
}

TEST(Cli, TraceCsvShape) {
  const fs::path csv = scratch("trace.csv");
  const auto r = run({"solve", "example41", "--trace", csv.string(), "--sigma", "0.3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = lines_of(csv);
  ASSERT_FALSE(lines.empty());
  EXPECT_EQ(lines[0], "k,x_0,F_0,F_1,h,q,achieved_sigma,j,t,step_norm,fejer_delta,fejer_cumsum");
  const std::size_t iterations = static_cast<std::size_t>(std::stoul(r.out.substr(r.out.find("iterations:") + 11)));
  EXPECT_EQ(lines.size(), iterations + 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    EXPECT_EQ(std::count(lines[i].begin(), lines[i].end(), ','), 11) << lines[i];
    EXPECT_EQ(lines[i].find('\r'), std::string::npos);
  }
}

TEST(Cli, JsonSummary) {
  const auto r = run({"solve", "pareto_quad2", "--json-summary", "--x0", "-4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("status"), "Stationary");
  EXPECT_NEAR(j.at("x_final")[0].get<double>(), 0.0, 1e-9);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"solve", "example41", "--x0", "7"}).code, cli::kExitInputError);
  EXPECT_NE(run({"solve", "example41", "--x0", "7"}).err.find("infeasible start"), std::string::npos);

  ProblemFile pf = problem_file_from_registry(find_builtin("example41"));
  pf.params.max_iter = 2;
  write_problem_file(scratch("short.json"), pf);
  EXPECT_EQ(run({"solve", scratch("short.json").string()}).code, cli::kExitMaxIterations);

  pf.params = {};
  pf.params.sigma = 0.0;
  pf.params.fw_gap_tol = 0.0;
  pf.params.fw_max_iters = 1;
  write_problem_file(scratch("budget.json"), pf);
  EXPECT_EQ(run({"solve", scratch("budget.json").string()}).code, cli::kExitSolverFailure);

  EXPECT_EQ(run({"solve", "no_such_problem"}).code, cli::kExitInputError);
  EXPECT_EQ(run({"solve", "example41", "--sigma", "1.5"}).code, cli::kExitInputError);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitInputError);
  EXPECT_EQ(run({}).code, cli::kExitInputError);
}

TEST(Cli, CheckCone) {
  EXPECT_EQ(run({"check-cone", "example41"}).code, 0);
  ProblemFile pf = problem_file_from_registry(find_builtin("pareto_quad2"));
  pf.cone_dual_generators = {conegrad::testing::vec({1, 0}), conegrad::testing::vec({-1, 0})};
  write_problem_file(scratch("bad_cone.json"), pf);
  const auto r = run({"check-cone", scratch("bad_cone.json").string()});
  EXPECT_EQ(r.code, cli::kExitInputError);
  EXPECT_NE(r.out.find("DualNotPointed"), std::string::npos);
}

TEST(Cli, Validate) {
  const auto r = run({"validate", "example41", "--samples", "2000", "--seed", "3"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, Batch) {
  const auto r = run({"batch", problems_dir().string(), "--parallel", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto a = r.out.find("example41.json");
  const auto b = r.out.find("pareto_quad2.json");
  ASSERT_NE(a, std::string::npos);
  ASSERT_NE(b, std::string::npos);
  EXPECT_LT(a, b);
}

TEST(Cli, ThreadCountOverride) {
  ::setenv("CONEGRAD_THREADS", "3", 1);
  EXPECT_EQ(cli::default_thread_count(), 3u);
  ::setenv("CONEGRAD_THREADS", "zero", 1);
  EXPECT_GE(cli::default_thread_count(), 1u);
  ::unsetenv("CONEGRAD_THREADS");
}
