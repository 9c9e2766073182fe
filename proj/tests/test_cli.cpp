#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(ESSMOD_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / ("essmod_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("gen is byte identical per seed") {
  for (const char* kind : {"right_ideal", "module_submodule", "field"}) {
    const auto a = run(std::string("gen ") + kind + " --seed 123 --defect points");
    const auto b = run(std::string("gen ") + kind + " --seed 123 --defect points");
    CHECK(a.exit_code == 0);
    CHECK(!a.out.empty());
    CHECK(a.out == b.out);
    CHECK(a.out != run(std::string("gen ") + kind + " --seed 124 --defect points").out);
  }
}

TEST_CASE("check and witness exit codes") {
  const auto dir = scratch();
  const auto inst = dir / "field.json";
  write(inst, run("gen field --seed 5 --defect interval").out);
  const auto check = run("check --in " + inst.string());
  CHECK(check.exit_code == 0);
  const auto report = Json::parse(check.out);
  CHECK(report["decision"] == false);
  CHECK(report["digest"].get<std::string>().size() == 16);
  CHECK(run("witness --in " + inst.string() + " --samples 4").exit_code == 0);

  // A wrong planted answer makes the check fail.
  auto doc = Json::parse(std::ifstream(inst));
  doc["expected"]["essential"] = true;
  const auto tampered = dir / "tampered.json";
  write(tampered, doc.dump());
  CHECK(run("check --in " + tampered.string()).exit_code == 1);

  write(dir / "garbage.json", "{not json");
  CHECK(run("check --in " + (dir / "garbage.json").string()).exit_code == 2);
  CHECK(run("check --in " + (dir / "missing.json").string()).exit_code == 2);
  CHECK(run("gen right_ideal --blocks 9").exit_code == 2);
  CHECK(run("gen field --bogus").exit_code == 2);
  fs::remove_all(dir);
}

TEST_CASE("check output is reproducible") {
  const auto dir = scratch();
  const auto inst = dir / "module.json";
  write(inst, run("gen module_submodule --seed 9").out);
  const auto a = Json::parse(run("check --in " + inst.string()).out);
  const auto b = Json::parse(run("check --in " + inst.string()).out);
  CHECK(a["digest"] == b["digest"]);
  fs::remove_all(dir);
}

TEST_CASE("suite") {
  const auto start = std::chrono::steady_clock::now();
  const auto quick = run("suite --trials 1");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(quick.exit_code == 0);
  CHECK(secs < 1.0);

  const auto faulty = run("suite --trials 5 --inject-fault theta-norm");
  CHECK(faulty.exit_code == 1);
  std::vector<std::string> failed;
  const auto report = Json::parse(faulty.out);
  for (const auto& p : report["properties"]) {
    if (!p["pass"].get<bool>()) failed.push_back(p["name"]);
  }
  CHECK(failed == std::vector<std::string>{"hilbert.theta_lipschitz"});
}
