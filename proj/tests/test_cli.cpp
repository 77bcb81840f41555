#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "addsvm/csv.hpp"
#include "addsvm/serialize.hpp"
#include "addsvm/svm.hpp"

namespace {

std::string g_cli;  // path to the addsvm binary, from argv[1]

int run(const std::string& args) {
  std::string cmd = g_cli + " " + args + " >cli_test_stdout.txt 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Sandbox {
  std::filesystem::path dir = "cli_test_dir";
  Sandbox() { std::filesystem::create_directories(dir); }
  ~Sandbox() { std::filesystem::remove_all(dir); }
  std::string file(const std::string& name, const std::string& content) const {
    std::string p = (dir / name).string();
    std::ofstream(p) << content;
    return p;
  }
  std::string path(const std::string& name) const {
    return (dir / name).string();
  }
};

const char* kTrainConfig = R"({
  "kernel": {"type": "gaussian", "gamma": 2.0, "dim": 1},
  "loss": "pinball:0.5",
  "lambda": 0.1
})";

}  // namespace

TEST_CASE("train then predict round-trips fitted values") {
  Sandbox sb;
  std::string data = sb.file("train.csv", "x1,y\n0,1\n0.2,2\n0.4,1.5\n0.6,0.5\n0.8,1\n");
  std::string cfg = sb.file("cfg.json", kTrainConfig);
  REQUIRE(run("train --data " + data + " --config " + cfg + " --out " +
              sb.path("model.json")) == 0);

  REQUIRE(run("predict --model " + sb.path("model.json") + " --data " + data +
              " --out " + sb.path("pred.csv")) == 0);

  addsvm::SvmModel m = addsvm::load_model(sb.path("model.json"));
  addsvm::Dataset pred = addsvm::load_csv(sb.path("pred.csv"), false);
  addsvm::Dataset orig = addsvm::load_csv(data);
  REQUIRE(pred.size() == orig.size());
  for (std::size_t i = 0; i < orig.size(); ++i)
    CHECK(std::abs(pred.x[i][0] - m.predict(orig.x[i])) <= 1e-9);
}

TEST_CASE("predict emits per-block components for sum kernels") {
  Sandbox sb;
  std::string data = sb.file("t.csv", "x1,x2,y\n0,0,1\n0.5,0.5,2\n1,1,0\n");
  std::string cfg = sb.file("cfg.json", R"({
    "kernel": {"type":"sum","blocks":[
      {"range":[0,0],"kernel":{"type":"gaussian","gamma":2.0,"dim":1}},
      {"range":[1,1],"kernel":{"type":"gaussian","gamma":2.0,"dim":1}}]},
    "loss": "pinball:0.5", "lambda": 0.1})");
  REQUIRE(run("train --data " + data + " --config " + cfg + " --out " +
              sb.path("m.json")) == 0);
  REQUIRE(run("predict --model " + sb.path("m.json") + " --data " + data +
              " --out " + sb.path("p.csv")) == 0);
  std::string head = slurp(sb.path("p.csv")).substr(0, 28);
  CHECK(head.find("pred,component1,component2") != std::string::npos);
}

TEST_CASE("bias-check with P = Q passes trivially") {
  Sandbox sb;
  std::string cfg = sb.file("bias.json", R"({
    "kernel": {"type":"gaussian","gamma":1.0,"dim":1},
    "loss": "pinball:0.5", "lambda": 0.5,
    "P": {"random": {"n": 6, "dim": 1, "seed": 4}},
    "Q": {"random": {"n": 6, "dim": 1, "seed": 4}},
    "eps_grid": [0.1, 0.4]})");
  CHECK(run("bias-check --config " + cfg + " --out " + sb.path("curve.csv")) == 0);
  CHECK(slurp(sb.path("curve.csv")).substr(0, 3) == "eps");
}

TEST_CASE("bif-check certifies a smooth-proxy instance") {
  Sandbox sb;
  std::string cfg = sb.file("bif.json", R"({
    "kernel": {"type":"gaussian","gamma":1.0,"dim":1},
    "tau": 0.5, "lambda": 0.05,
    "P": {"smooth_proxy": {"n_x": 4, "levels": 200, "center_amp": 0.1,
                           "gap": 0.6, "p_low": 0.48}},
    "Q": {"point": {"x": [0.4], "y": 3.0}},
    "eps_grid": [0.1, 0.03, 0.01]})");
  CHECK(run("bif-check --config " + cfg + " --out " + sb.path("bif.csv")) == 0);
}

TEST_CASE("simulate writes deterministic tables") {
  Sandbox sb;
  std::string cfg = sb.file("sim.json", R"({
    "n_grid": [40], "seeds": [1], "variants": ["additive"],
    "test_size": 200, "mc_size": 200, "grid_points": 3})");
  REQUIRE(run("simulate --config " + cfg + " --out-dir " + sb.dir.string()) == 0);
  std::string first = slurp(sb.path("trend.csv"));
  CHECK(first.substr(0, 7) == "variant");
  REQUIRE(run("simulate --config " + cfg + " --out-dir " + sb.dir.string()) == 0);
  CHECK(slurp(sb.path("trend.csv")) == first);
}

TEST_CASE("kernel-info reports certificates") {
  Sandbox sb;
  std::string cfg = sb.file("k.json", R"({
    "kernel": {"type":"sum","blocks":[
      {"range":[0,0],"kernel":{"type":"gaussian","gamma":2.0,"dim":1}},
      {"range":[1,1],"kernel":{"type":"gaussian","gamma":2.0,"dim":1}}]}})");
  REQUIRE(run("kernel-info --config " + cfg) == 0);
  std::string out = slurp("cli_test_stdout.txt");
  CHECK(out.find("sup_norm_bound: 1.414") != std::string::npos);
}

TEST_CASE("input errors exit with code 2") {
  Sandbox sb;
  std::string cfg = sb.file("cfg.json", kTrainConfig);
  CHECK(run("train --data " + sb.path("missing.csv") + " --config " + cfg +
            " --out " + sb.path("m.json")) == 2);

  std::string bad = sb.file("bad.csv", "x1,y\n0,oops\n");
  CHECK(run("train --data " + bad + " --config " + cfg + " --out " +
            sb.path("m.json")) == 2);

  std::string badcfg = sb.file("badcfg.json", R"({"kernel": {"type":"mystery"},
    "loss":"pinball:0.5","lambda":0.1})");
  std::string data = sb.file("d.csv", "x1,y\n0,1\n");
  CHECK(run("train --data " + data + " --config " + badcfg + " --out " +
            sb.path("m.json")) == 2);

  // Unknown flags are errors, not warnings.
  CHECK(run("train --data " + data + " --config " + cfg + " --out " +
            sb.path("m.json") + " --frobnicate") != 0);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-addsvm-binary>\n");
    return 1;
  }
  g_cli = argv[1];
  doctest::Context ctx;
  int rc = ctx.run();
  std::remove("cli_test_stdout.txt");
  return rc;
}
