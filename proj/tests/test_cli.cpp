#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "hankel_lab_cli_test";

int run(const std::string& args) {
  const std::string cmd = std::string("\"") + HANKEL_LAB_CLI + "\" " + args + " > \"" +
                          (kWork / "stdout.txt").string() + "\" 2> \"" + (kWork / "stderr.txt").string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string out(const std::string& name) { return (kWork / name).string(); }

void write(const std::string& name, const std::string& text) { std::ofstream(kWork / name) << text; }

struct Workspace {
  Workspace() {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
  }
  ~Workspace() { fs::remove_all(kWork); }
};

}  // namespace

TEST_CASE("every subcommand runs and writes CSV plus summary") {
  Workspace ws;
  write("ratio.ini", "p_grid = 1, 2\nm = 6\ndegree = 5\ntrials = 2\n");
  CHECK(run("ratio-sweep --config " + out("ratio.ini") + " --out " + out("r.csv") + " --emit-plot-data") == 0);
  CHECK(slurp(kWork / "r.csv").rfind("p,trial,schatten,besov,rho\n", 0) == 0);
  CHECK(fs::exists(kWork / "r.json"));
  CHECK(fs::exists(kWork / "r.plot.csv"));

  write("lac.json", R"({"p_grid": [2, 3]})");
  CHECK(run("lacunary-growth --config " + out("lac.json") + " --out " + out("l.csv")) == 0);
  CHECK(slurp(kWork / "l.csv").find("lower_over_sqrt_p") != std::string::npos);

  write("proj.ini", "p_grid = 1.5\nm = 5\nmultistarts = 2\niterations = 20\n");
  CHECK(run("projection-norm --config " + out("proj.ini") + " --out " + out("p.csv")) == 0);

  write("block.ini", "p_grid = 2\nblock_dims = 1, 2\nm = 4\ndegree = 3\ntrials = 1\n");
  CHECK(run("block-sweep --config " + out("block.ini") + " --out " + out("b.csv")) == 0);

  CHECK(run("check-suite --seed 5 --jobs 2 --out " + out("c.csv")) == 0);
  CHECK(slurp(kWork / "stdout.txt").find("checks passed") != std::string::npos);
}

TEST_CASE("seed override and filtered suite") {
  Workspace ws;
  write("suite.ini", "trials = 3\n");
  CHECK(run("check-suite --config " + out("suite.ini") + " --seed 9 --only main_inequality --index 1 --out " +
            out("one.csv")) == 0);
  const std::string csv = slurp(kWork / "one.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(csv.find("main_inequality,1,") != std::string::npos);
}

TEST_CASE("configuration problems exit with status 2") {
  Workspace ws;
  write("bad.ini", "m = 6\nbogus = 1\n");
  CHECK(run("ratio-sweep --config " + out("bad.ini")) == 2);
  CHECK(slurp(kWork / "stderr.txt").find("bad.ini:2:") != std::string::npos);

  write("invalid.ini", "p_grid = 0.5\n");
  CHECK(run("ratio-sweep --config " + out("invalid.ini")) == 2);

  write("wrong.ini", "experiment = block_sweep\n");
  CHECK(run("ratio-sweep --config " + out("wrong.ini")) == 2);

  CHECK(run("ratio-sweep --config " + out("missing.ini")) == 2);
  CHECK(run("no-such-command") == 2);
  CHECK(run("check-suite --jobs 0") == 2);
  CHECK(run("") == 2);
}

TEST_CASE("help exits cleanly") {
  Workspace ws;
  CHECK(run("--help") == 0);
}
