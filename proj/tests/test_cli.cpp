#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <optional>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "ergm/io.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kModels = ERGM_LAB_MODELS_DIR;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "ergm_lab");
  std::ostringstream out;
  std::ostringstream err;
  const int code = ergm::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

/// Value of a `key = value` line.
std::string field(const std::string& text, const std::string& key) {
  for (const auto& line : lines(text))
    if (line.rfind(key + " = ", 0) == 0) return line.substr(key.size() + 3);
  return {};
}

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const char* value) : name_(name) {
    if (const char* old = std::getenv(name)) old_ = old;
    ::setenv(name, value, 1);
  }
  ~ScopedEnv() {
    if (old_) {
      ::setenv(name_, old_->c_str(), 1);
    } else {
      ::unsetenv(name_);
    }
  }

 private:
  const char* name_;
  std::optional<std::string> old_;
};

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ergm_lab_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

void expect_header(const std::string& text, const std::string& seed) {
  const auto ls = lines(text);
  ASSERT_GE(ls.size(), 3U);
  EXPECT_EQ(ls[0], std::string("# ergm_lab ") + ERGM_LAB_VERSION);
  EXPECT_EQ(ls[1].rfind("# command: ergm_lab ", 0), 0U) << ls[1];
  EXPECT_EQ(ls[2], "# seed: " + seed);
}

}  // namespace

TEST(Cli, UsageErrorsExitWithOne) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"no-such-command"}).code, 1);
  EXPECT_EQ(run({"psi", "--beta1", "abc"}).code, 1);
  EXPECT_EQ(run({"psi"}).code, 1);
  EXPECT_EQ(run({"psi", "--model", kModels + "/stars.txt", "--beta1", "0.1"}).code, 1);
  EXPECT_EQ(run({"psi", "--model", "/nonexistent/model.txt"}).code, 1);
  EXPECT_EQ(run({"phase-diagram", "--beta1", "-0.45", "--beta2", "0:1"}).code, 1);
  EXPECT_EQ(run({"phase-diagram", "--beta1", "-0.45", "--beta2", "0.5"}).code, 1);
  EXPECT_EQ(run({"degeneracy", "--beta1", "0.5"}).code, 1);
  EXPECT_EQ(run({"sample", "--beta1", "0", "--start", "sideways"}).code, 1);
  EXPECT_EQ(run({"estimate-z", "--beta1", "0", "--method", "magic"}).code, 1);
  EXPECT_EQ(run({"euler-lagrange", "--beta1", "0", "--damping", "0"}).code, 1);
  EXPECT_EQ(run({"extremal", "--motif", "0-0"}).code, 1);
  const auto r = run({"sample", "--beta1", "0", "--start", "sideways"});
  EXPECT_NE(r.err.find("--start"), std::string::npos);
}

TEST(Cli, HelpAndVersionExitWithZero) {
  const auto help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("phase-diagram"), std::string::npos);
  const auto version = run({"--version"});
  EXPECT_EQ(version.code, 0);
  EXPECT_NE(version.out.find(ERGM_LAB_VERSION), std::string::npos);
}

TEST(Cli, NumericGuardsExitWithTwo) {
  EXPECT_EQ(run({"psi", "--beta1", "0.1", "--n", "7"}).code, 2);
  EXPECT_EQ(run({"extremal", "--motif", "star:13"}).code, 2);
  const auto diverged = run({"euler-lagrange", "--beta1", "0", "--beta2", "-40", "--damping", "1", "--max-iter", "50"});
  EXPECT_EQ(diverged.code, 2);
  EXPECT_EQ(field(diverged.out, "# status"), "diverged");
  EXPECT_NE(diverged.err.find("no convergence"), std::string::npos);
}

TEST(Cli, EveryCommandWritesTheHeader) {
  const std::vector<std::vector<std::string>> commands{
      {"sample", "--beta1", "0.1", "--beta2", "0.2", "--n", "8", "--steps", "200", "--record-every", "50"},
      {"psi", "--model", kModels + "/edge_triangle.txt", "--n", "4"},
      {"phase-diagram", "--beta1", "-0.45", "--beta2", "0:0.5:6"},
      {"degeneracy", "--beta1", "-5", "--beta2", "1"},
      {"estimate-z", "--beta1", "0.2", "--beta2", "0.1", "--n", "4", "--samples", "100"},
      {"spectral-check", "--max-ell", "5"},
      {"euler-lagrange", "--beta1", "0.1", "--beta2", "0.2", "--blocks", "2"},
      {"extremal", "--motif", "triangle", "--beta1", "0.3"},
      {"top-contour", "--graph", kModels + "/small_graph.txt", "--beta1", "0:1:3", "--beta2", "0.5"},
  };
  const std::vector<bool> stochastic{true, false, false, false, true, false, true, false, false};
  for (std::size_t i = 0; i < commands.size(); ++i) {
    const auto r = run(commands[i]);
    ASSERT_EQ(r.code, 0) << commands[i][0] << ": " << r.err;
    expect_header(r.out, stochastic[i] ? "1" : "none");
  }
}

TEST(Cli, SameSeedGivesIdenticalFiles) {
  const fs::path a = scratch("a.csv");
  const fs::path b = scratch("b.csv");
  auto args = [](const fs::path& p, const std::string& seed) {
    return std::vector<std::string>{"sample", "--model", kModels + "/stars.txt", "--n", "15", "--steps", "3000",
                                    "--seed", seed, "-o", p.string()};
  };
  ASSERT_EQ(run(args(a, "42")).code, 0);
  ASSERT_EQ(run(args(b, "42")).code, 0);
  // The command line names the output path, so compare everything after it.
  auto body = [](const std::string& s) { return s.substr(s.find("# seed")); };
  EXPECT_EQ(body(slurp(a)), body(slurp(b)));
  ASSERT_EQ(run(args(b, "43")).code, 0);
  EXPECT_NE(body(slurp(a)), body(slurp(b)));
  // Identical arguments give identical bytes, header included.
  ASSERT_EQ(run(args(a, "42")).code, 0);
  const std::string first = slurp(a);
  ASSERT_EQ(run(args(a, "42")).code, 0);
  EXPECT_EQ(slurp(a), first);
  expect_header(first, "42");
}

TEST(Cli, StdoutIsDeterministicForEstimators) {
  for (const std::string method : {"importance", "self-normalized", "mcmle", "acceptance-ratio"}) {
    const std::vector<std::string> args{"estimate-z", "--beta1", "0.3", "--beta2", "0.2", "--ref-beta1", "0.2",
                                        "--ref-beta2", "0.1", "--n", "5", "--samples", "500", "--method", method,
                                        "--seed", "9"};
    const auto a = run(args);
    ASSERT_EQ(a.code, 0) << method << ": " << a.err;
    EXPECT_EQ(a.out, run(args).out);
    EXPECT_EQ(field(a.out, "seed"), "9");
  }
}

TEST(Cli, ThreadCountDoesNotChangeOutput) {
  const std::vector<std::string> phase{"phase-diagram", "--beta1", "-0.6:-0.3:4", "--beta2", "0:0.8:40"};
  const std::vector<std::string> top{"top-contour", "--graph", kModels + "/small_graph.txt", "--beta1", "-1:1:9",
                                     "--beta2", "-1:1:9"};
  std::string phase1;
  std::string top1;
  {
    ScopedEnv env("ERGM_LAB_THREADS", "1");
    EXPECT_EQ(ergm::cli::thread_cap(), 1U);
    phase1 = run(phase).out;
    top1 = run(top).out;
  }
  ScopedEnv env("ERGM_LAB_THREADS", "4");
  EXPECT_EQ(ergm::cli::thread_cap(), 4U);
  EXPECT_EQ(run(phase).out, phase1);
  EXPECT_EQ(run(top).out, top1);
}

TEST(Cli, InvalidThreadCountIsAUsageError) {
  ScopedEnv env("ERGM_LAB_THREADS", "zero");
  EXPECT_THROW((void)ergm::cli::thread_cap(), std::invalid_argument);
  EXPECT_EQ(run({"phase-diagram", "--beta1", "-0.45", "--beta2", "0:0.5:6"}).code, 1);
}

TEST(Cli, PsiReport) {
  const auto r = run({"psi", "--beta1", "-0.45", "--beta2", "0.2", "--n", "4"});
  ASSERT_EQ(r.code, 0);
  EXPECT_FALSE(field(r.out, "psi_limit").empty());
  EXPECT_EQ(field(r.out, "multiplicity"), "1");
  EXPECT_FALSE(field(r.out, "psi_n").empty());
  EXPECT_FALSE(field(r.out, "applicability").empty());
}

TEST(Cli, PsiOfTheZeroModel) {
  const auto r = run({"psi", "--model", kModels + "/zero.txt"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(std::stod(field(r.out, "psi_limit")), 0.5 * std::log(2.0), 1e-15);
  EXPECT_NEAR(std::stod(field(r.out, "maximizers")), 0.5, 1e-15);
}

TEST(Cli, PhaseDiagramRows) {
  const auto r = run({"phase-diagram", "--beta1", "-0.45", "--beta2", "0:2:200"});
  ASSERT_EQ(r.code, 0);
  int data = 0;
  int jumps = 0;
  bool header = false;
  for (const auto& line : lines(r.out)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      EXPECT_EQ(line, "beta2,u_star,psi,multiplicity");
      header = true;
      continue;
    }
    ++data;
    if (line.back() != '1') ++jumps;
  }
  EXPECT_EQ(jumps, 1);
  EXPECT_EQ(data, 201);
}

TEST(Cli, DegeneracyOutput) {
  const auto r = run({"degeneracy", "--beta1", "-5", "--beta2", "10"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(field(r.out, "c2"), "0.9");
  EXPECT_NEAR(std::stod(field(r.out, "c1")), 0.0066928509242848554, 1e-15);
  EXPECT_EQ(field(r.out, "regime"), "dense");
}

TEST(Cli, EstimateWithExactValue) {
  const auto r = run({"estimate-z", "--beta1", "0.2", "--beta2", "0.1", "--n", "4", "--samples", "20000", "--exact"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(std::stod(field(r.out, "log_estimate")), std::stod(field(r.out, "log_exact")), 0.02);
  EXPECT_EQ(field(r.out, "estimator"), "importance");
}

TEST(Cli, SampleWritesTraceAndGraph) {
  const fs::path g = scratch("final.txt");
  const auto r = run({"sample", "--beta1", "0.5", "--n", "10", "--steps", "500", "--record-every", "100",
                      "--graph-out", g.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  int rows = 0;
  for (const auto& line : lines(r.out))
    if (!line.empty() && line[0] != '#') ++rows;
  EXPECT_EQ(rows, 7);  // header row plus steps 0..500
  const std::string graph = slurp(g);
  expect_header(graph, "1");
  std::istringstream in(graph);
  EXPECT_EQ(ergm::io::read_edge_list(in).vertex_count(), 10);

  const auto again = run({"sample", "--beta1", "0.1", "--n", "5", "--steps", "50", "--start-graph", g.string()});
  EXPECT_EQ(again.code, 1);  // 10-vertex start graph for n = 5
}

TEST(Cli, EulerLagrangeOutputReloads) {
  const fs::path p = scratch("graphon.txt");
  ASSERT_EQ(run({"euler-lagrange", "--beta1", "0.1", "--beta2", "0.2", "-o", p.string()}).code, 0);
  const std::string text = slurp(p);
  EXPECT_EQ(field(text, "# status"), "converged");
  std::istringstream in(text);
  const auto h = ergm::io::read_step_graphon(in);
  EXPECT_EQ(h.blocks(), 3);
  ASSERT_EQ(run({"euler-lagrange", "--beta1", "0.1", "--beta2", "0.2", "--init", p.string()}).code, 0);
}

TEST(Cli, SpectralCheckPasses) {
  const auto r = run({"spectral-check"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(field(r.out, "status"), "ok");
}

TEST(Cli, ExtremalTriangle) {
  const auto r = run({"extremal", "--motif", "triangle", "--beta1", "0"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(field(r.out, "# chromatic_number"), "3");
  EXPECT_NEAR(std::stod(field(r.out, "# psi_limit")), 0.25 * std::log(2.0), 1e-12);
}
