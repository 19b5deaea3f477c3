#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct Run {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Run run(const std::string& args) {
  const std::string command =
      std::string(RSDE_CLI_PATH) + " " + args + " > cli_stdout.txt 2> cli_stderr.txt";
  const int raw = std::system(command.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp("cli_stdout.txt"), slurp("cli_stderr.txt")};
}

const std::string zigzag = std::string(RSDE_DATA_DIR) + "/zigzag.csv";

}  // namespace

TEST_CASE("pvar") {
  auto r = run("pvar " + zigzag + " --p 1");
  CHECK(r.status == 0);
  CHECK(r.out == "2\n");
  r = run("pvar " + zigzag + " --p 2 --from 0 --to 1");
  CHECK(r.out == "1\n");
  r = run("pvar " + zigzag + " --p 0.5");
  CHECK(r.status == 2);
  CHECK(r.err.rfind("error=InvalidP\n", 0) == 0);

  std::ofstream("broken.csv") << "t,x1\n0,1\n1,oops\n";
  r = run("pvar broken.csv");
  CHECK(r.status == 2);
  CHECK(r.err.rfind("error=ParseError\n", 0) == 0);
}

TEST_CASE("simulate") {
  auto a = run("simulate --preset linear-reflected --seed 1 --n 64");
  auto b = run("simulate --preset linear-reflected --seed 1 --n 64");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("t,x1,k1\n", 0) == 0);
  CHECK(a.out != run("simulate --preset linear-reflected --seed 2 --n 64").out);

  auto serial = run("simulate --preset rotation-fbm --seed 3 --replicates 6 --workers 1 --n 32");
  auto pooled = run("simulate --preset rotation-fbm --seed 3 --replicates 6 --workers 4 --n 32");
  CHECK(serial.status == 0);
  CHECK(serial.out == pooled.out);
  CHECK(serial.out.rfind("replicate,t,x1,x2,k1,k2\n", 0) == 0);
  CHECK(serial.out.find("\n5,0,") != std::string::npos);

  auto geometric = run("simulate --preset geometric --tol 1e-2");
  CHECK(geometric.status == 0);
  CHECK(geometric.out.find("# scheme=adaptive") != std::string::npos);

  auto bad_hurst = run("simulate --hurst 0.4");
  CHECK(bad_hurst.status == 2);
  CHECK(bad_hurst.err.rfind("error=InvalidHurst\n", 0) == 0);

  auto stuck = run("simulate --preset degenerate --tol 0 --n0 4");
  CHECK(stuck.status == 3);
  CHECK(stuck.err.rfind("error=NoConvergence\n", 0) == 0);

  CHECK(run("simulate --preset nowhere").status == 2);
  CHECK(run("simulate --no-such-flag").status == 2);
  CHECK(run("").status == 2);
}

TEST_CASE("output file and configuration file") {
  std::ofstream("run.ini") << "preset=tanh-fbm\nseed=5\ndriver-steps=128\n";
  auto from_file = run("simulate --config run.ini --n 16 --out from_file.csv");
  CHECK(from_file.status == 0);
  CHECK(from_file.out.empty());
  auto direct = run("simulate --preset tanh-fbm --seed 5 --driver-steps 128 --n 16");
  CHECK(slurp("from_file.csv") == direct.out);
  auto overridden = run("simulate --config run.ini --seed 6 --n 16");
  auto direct6 = run("simulate --preset tanh-fbm --seed 6 --driver-steps 128 --n 16");
  CHECK(overridden.out == direct6.out);
}

TEST_CASE("convergence") {
  auto exact = run("convergence --preset linear-reflected --seed 1 --driver-steps 64 --n0 64 --levels 4");
  CHECK(exact.status == 0);
  std::istringstream lines(exact.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "n,gap,seconds");
  int rows = 0;
  while (std::getline(lines, line)) {
    const auto gap = line.substr(line.find(',') + 1, line.rfind(',') - line.find(',') - 1);
    if (rows > 0) CHECK(gap == "0");
    ++rows;
  }
  CHECK(rows == 4);

  auto flat = run("convergence --preset degenerate --n0 4 --levels 3");
  CHECK(flat.out.find("8,0,") != std::string::npos);
  CHECK(flat.out.find("16,0,") != std::string::npos);
}

TEST_CASE("fbm") {
  auto a = run("fbm --seed 4 --hurst 0.7 --steps 64");
  auto b = run("fbm --seed 4 --hurst 0.7 --steps 64");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("t,x1\n0,0\n", 0) == 0);
  CHECK(a.out != run("fbm --seed 4 --hurst 0.7 --steps 64 --index 1").out);
  CHECK(run("fbm --hurst 1.2").status == 2);
}

TEST_CASE("verify") {
  auto empty = run("verify --cases 0");
  CHECK(empty.status == 0);
  CHECK(empty.out.rfind("case,check,lhs,rhs,margin,pass\n", 0) == 0);
  auto some = run("verify --cases 60 --seed 7");
  CHECK(some.status == 0);
  CHECK(some.out.find("# violations=0") != std::string::npos);
  auto broken = run("verify --cases 20 --corrupt-solver");
  CHECK(broken.status == 1);
  CHECK(broken.err.rfind("error=VerificationFailure\n", 0) == 0);
}
