#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "oracles.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int status = -1;
  std::string out;  // stdout and stderr together
};

Outcome cli(const std::string& args) {
  const std::string cmd = std::string("\"") + DSCFLOW_CLI_PATH + "\" " + args + " 2>&1";
  Outcome o;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) o.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("dscflow_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("validate-mesh reports the fixture") {
  const Outcome o = cli(std::string("validate-mesh ") + DSCFLOW_FIXTURE_DIR + "/cube_pair.mesh");
  CHECK(o.status == 0);
  CHECK(o.out.find("cells: 2") != std::string::npos);
  CHECK(o.out.find("interior faces: 1") != std::string::npos);
  CHECK(o.out.find("boundary faces: 10") != std::string::npos);
  CHECK(o.out.find("tag wall: 8") != std::string::npos);
  CHECK(o.out.find("total volume: 2") != std::string::npos);
}

TEST_CASE("run writes snapshots, probes and the effective config") {
  const fs::path dir = scratch("run");
  const Outcome o = cli("run --scenario slab --steps 100 --every 50 -o \"" + dir.string() + "\" -f both -p 0.5,0.0078,0.0078");
  CHECK(o.status == 0);
  CHECK(o.out.find("steps: 100") != std::string::npos);
  for (const char* f : {"snapshot_000000.csv", "snapshot_000050.csv", "snapshot_000100.csv", "snapshot_000100.vtk",
                        "probes.csv", "config.txt"}) {
    CAPTURE(f);
    CHECK(fs::exists(dir / f));
  }
  const auto rows = oracle::read_csv(slurp(dir / "snapshot_000100.csv"));
  CHECK(rows.size() == 65);
  const auto probes = oracle::read_csv(slurp(dir / "probes.csv"));
  CHECK(probes.size() == 1 + 100 * 5);

  // The written config reproduces the run.
  const fs::path again = scratch("rerun");
  const Outcome o2 = cli("run -c \"" + (dir / "config.txt").string() + "\" -o \"" + again.string() + "\" -q");
  CHECK(o2.status == 0);
  CHECK(slurp(again / "snapshot_000100.csv") == slurp(dir / "snapshot_000100.csv"));
  fs::remove_all(dir);
  fs::remove_all(again);
}

TEST_CASE("emit-config prints a parseable configuration") {
  const Outcome o = cli("emit-config -s cavity -r 8 --param reynolds=50");
  CHECK(o.status == 0);
  CHECK(o.out.find("scenario = cavity") != std::string::npos);
  CHECK(o.out.find("scenario.reynolds = 50") != std::string::npos);
}

TEST_CASE("usage errors exit with status 2") {
  Outcome o = cli("run --scenario slab --no-such-flag");
  CHECK(o.status == 2);
  CHECK(o.out.find("Usage") != std::string::npos);
  o = cli("run --scenario teapot");
  CHECK(o.status == 2);
  o = cli("");
  CHECK(o.status == 2);
}

TEST_CASE("module errors exit with status 1") {
  const Outcome o = cli("validate-mesh /nonexistent/file.mesh");
  CHECK(o.status == 1);
  CHECK(o.out.find("error:") != std::string::npos);
  const Outcome bad = cli("run --scenario cavity --param mach=2 -o \"" + scratch("bad").string() + "\"");
  CHECK(bad.status == 1);
}

TEST_CASE("help exits cleanly") {
  const Outcome o = cli("--help");
  CHECK(o.status == 0);
  CHECK(o.out.find("run") != std::string::npos);
  CHECK(o.out.find("validate-mesh") != std::string::npos);
}
