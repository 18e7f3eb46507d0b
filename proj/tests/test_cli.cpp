// End-to-end checks of the command-line tool: exit-status contract and
// report files, driven through the real binary.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

const std::string kCli = GEQN_CLI_PATH;
const std::string kData = GEQN_DATA_DIR;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string out_file = "./cli_test_output.txt";
  const std::string cmd = kCli + " " + args + " > " + out_file + " 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(raw);
  std::ifstream in(out_file);
  std::ostringstream os;
  os << in.rdbuf();
  r.output = os.str();
  std::filesystem::remove(out_file);
  return r;
}

}  // namespace

TEST_CASE("solve sqrt2 exits 0 and writes the history CSV") {
  const std::string out_dir = "./cli_out_solve";
  const RunResult r = run("solve " + kData + "/sqrt2.json --out " + out_dir);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("Converged") != std::string::npos);
  CHECK(std::filesystem::exists(out_dir + "/history.csv"));
  std::filesystem::remove_all(out_dir);
}

TEST_CASE("certify sqrt2 exits 0 with a certificate report") {
  const std::string out_dir = "./cli_out_cert";
  const RunResult r = run("certify " + kData + "/sqrt2.json --out " + out_dir);
  CHECK(r.exit_code == 0);
  REQUIRE(std::filesystem::exists(out_dir + "/certificate.json"));
  std::ifstream in(out_dir + "/certificate.json");
  nlohmann::json cert;
  in >> cert;
  CHECK(cert.at("schema_version") == 1);
  CHECK(cert.at("certified") == true);
  CHECK(cert.at("conditions").at("h4") == true);
  std::filesystem::remove_all(out_dir);
}

TEST_CASE("report files are byte-identical across reruns") {
  const std::string d1 = "./cli_det_1", d2 = "./cli_det_2";
  run("certify " + kData + "/sqrt2.json --out " + d1 + " --seed 9 --samples 128");
  run("certify " + kData + "/sqrt2.json --out " + d2 + " --seed 9 --samples 128");
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  CHECK(slurp(d1 + "/history.csv") == slurp(d2 + "/history.csv"));
  CHECK(slurp(d1 + "/certificate.json") == slurp(d2 + "/certificate.json"));
  std::filesystem::remove_all(d1);
  std::filesystem::remove_all(d2);
}

TEST_CASE("scalar reports a violated existence condition with exit 2") {
  const RunResult r = run("scalar --kind lipschitz --K 1 --b 0.6");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("violated") != std::string::npos);
}

TEST_CASE("scalar on a certifiable preset exits 0") {
  const RunResult r = run("scalar --kind lipschitz --K 1 --b 0.25");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("t*") != std::string::npos);
  CHECK(r.output.find("0.2928932188") != std::string::npos);
}

TEST_CASE("scalar smale variant") {
  const RunResult r = run("scalar --kind smale --gamma 1 --b 0.1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("quadratic rate constant") != std::string::npos);
}

TEST_CASE("lcp command prints z and exits 0") {
  const RunResult r = run("lcp " + kData + "/lcp_example.json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("z = 1 0") != std::string::npos);
  CHECK(r.output.find("Solved") != std::string::npos);
}

TEST_CASE("missing problem file exits 1") {
  const RunResult r = run("solve ./no_such_file.json");
  CHECK(r.exit_code == 1);
}

TEST_CASE("ncp and qp problems solve end to end") {
  const RunResult ncp = run("solve " + kData + "/ncp_x2m4.json --out ./cli_out_ncp");
  CHECK(ncp.exit_code == 0);
  std::filesystem::remove_all("./cli_out_ncp");

  const RunResult qp = run("certify " + kData + "/qp_small.json --out ./cli_out_qp");
  CHECK(qp.exit_code == 0);
  std::filesystem::remove_all("./cli_out_qp");
}
