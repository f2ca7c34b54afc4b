#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "levy_gqmle/file_io.hpp"

namespace fs = std::filesystem;
using levy_gqmle::read_file;

namespace {

struct Sandbox {
  fs::path dir;
  Sandbox() {
    dir = fs::temp_directory_path() / ("levy_gqmle_cli_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }
  fs::path operator/(const std::string& name) const { return dir / name; }

  // Runs the CLI inside the sandbox; stdout goes to `out`.
  int run(const std::string& args, const std::string& out = "stdout.txt",
          const std::string& env = "") const {
    const std::string cmd = "cd '" + dir.string() + "' && " + env + " '" LEVY_GQMLE_CLI "' " +
                            args + " > '" + out + "' 2> stderr.txt";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string text(const std::string& name) const { return read_file(dir / name); }
};

}  // namespace

TEST_CASE("optimal prints the closed-form values") {
  Sandbox s;
  REQUIRE(s.run("optimal --case i") == 0);
  CHECK(s.text("stdout.txt") == "alpha_star 0.333748960931\ngamma_star 1.414213562373\n");
  REQUIRE(s.run("--format json optimal --case ii") == 0);
  CHECK(s.text("stdout.txt").find("\"case\": \"ii\"") != std::string::npos);
}

TEST_CASE("simulate is governed by the seed") {
  Sandbox s;
  REQUIRE(s.run("--seed 7 simulate --case iii --n 100", "a.csv") == 0);
  REQUIRE(s.run("--seed 7 simulate --case iii --n 100", "b.csv") == 0);
  REQUIRE(s.run("simulate --case iii --n 100", "c.csv", "LEVY_GQMLE_SEED=7") == 0);
  REQUIRE(s.run("--seed 8 simulate --case iii --n 100", "d.csv", "LEVY_GQMLE_SEED=7") == 0);
  CHECK(s.text("a.csv") == s.text("b.csv"));
  CHECK(s.text("a.csv") == s.text("c.csv"));
  CHECK(s.text("a.csv") != s.text("d.csv"));
  CHECK(s.text("a.csv").rfind("t,x\n", 0) == 0);

  REQUIRE(s.run("--seed 7 --out-dir out simulate --case iii --n 100") == 0);
  CHECK(s.text("out/path.csv") == s.text("a.csv"));
}

TEST_CASE("estimate and moments read a path CSV") {
  Sandbox s;
  REQUIRE(s.run("--seed 1 simulate --n 500", "p.csv") == 0);
  REQUIRE(s.run("estimate p.csv") == 0);
  const std::string est = s.text("stdout.txt");
  CHECK(est.find("\"gamma_hat\"") != std::string::npos);
  CHECK(est.find("\"alpha_hat\"") != std::string::npos);
  REQUIRE(s.run("moments p.csv --r 2 4") == 0);
  CHECK(s.text("stdout.txt").rfind("r,estimate\n2,", 0) == 0);

  levy_gqmle::write_file_atomic(s / "bad.csv", "t,x\n0,1\n0.1,2\n0.25,3\n");
  CHECK(s.run("estimate bad.csv") == 1);
  CHECK(s.text("stderr.txt").find("non-equispaced") != std::string::npos);
  CHECK(s.run("estimate missing.csv") == 1);
}

TEST_CASE("usage errors and help") {
  Sandbox s;
  CHECK(s.run("--out-dir never mc --help") == 0);
  CHECK_FALSE(fs::exists(s / "never"));
  CHECK(s.run("") == 1);
  CHECK(s.run("frobnicate") == 1);
  CHECK(s.run("optimal --case iv") == 1);
  CHECK(s.run("--config nope.json optimal") == 1);
  levy_gqmle::write_file_atomic(s / "broken.json", "{oops");
  CHECK(s.run("--config broken.json optimal") == 1);
}

TEST_CASE("numerical failures exit with status 2") {
  Sandbox s;
  levy_gqmle::write_file_atomic(s / "div.json", R"({"true_model": {"alpha": -50}})");
  CHECK(s.run("--config div.json simulate --n 1000 --step 0.1 --x0 1") == 2);
  CHECK(s.text("stderr.txt").find("diverged") != std::string::npos);
  CHECK(s.run("asymptotics --case diffusion") == 2);
}

TEST_CASE("mc writes the report files") {
  Sandbox s;
  REQUIRE(s.run("--seed 3 --out-dir o mc --case i ii --replications 6") == 0);
  CHECK(fs::exists(s / "o/table2.csv"));
  CHECK(fs::exists(s / "o/summary.json"));
  CHECK(fs::exists(s / "o/boxplots.svg"));
  const std::string first = s.text("o/table2.csv");
  CHECK(first.rfind("Tn,n,h,case,", 0) == 0);
  REQUIRE(s.run("--seed 3 --threads 1 --out-dir o2 --format csv mc --case i ii --replications 6") ==
          0);
  CHECK(s.text("o2/table2.csv") == first);
  CHECK_FALSE(fs::exists(s / "o2/summary.json"));
}

TEST_CASE("asymptotics writes matrices and the EPE table") {
  Sandbox s;
  REQUIRE(s.run("--seed 2 --out-dir a asymptotics --case i --horizon 3000 --inner-paths 30 "
                "--t-max 5") == 0);
  const std::string j = s.text("a/asymptotics.json");
  CHECK(j.find("\"V\"") != std::string::npos);
  CHECK(j.find("\"Sigma\"") != std::string::npos);
  CHECK(s.text("a/epe.csv").rfind("x,f1,f2,se_f1,se_f2\n", 0) == 0);
}
