// Drives the installed command-line binary end to end; the binary path
// arrives as argv[1].
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

std::string g_binary;
std::filesystem::path g_dir;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  const auto out_path = g_dir / "cmd_output.txt";
  std::string cmd = g_binary + " " + args + " > " + out_path.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  std::ifstream in(out_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  int code = -1;
  if (WIFEXITED(status)) code = WEXITSTATUS(status);
  return {code, buf.str()};
}

std::filesystem::path write_config(const std::string& name, const std::string& body) {
  auto path = g_dir / name;
  std::ofstream(path) << body;
  return path;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kReferenceConfig =
    "mode = single-tx\nK = 4\nL = 2\ngamma = 1/2\nN = 4\nC = 2\nseed = 7\n";

}  // namespace

TEST_CASE("plan reports the reference metrics and exits cleanly") {
  auto cfg = write_config("ref.cfg", kReferenceConfig);
  auto r = run("plan --config " + cfg.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("T = 1/2") != std::string::npos);
  CHECK(r.output.find("DoF = 4") != std::string::npos);
  CHECK(r.output.find("uniqueness: clean") != std::string::npos);
}

TEST_CASE("plan writes schedule and placement json") {
  auto cfg = write_config("ref.cfg", kReferenceConfig);
  auto sched = g_dir / "schedule.json";
  auto place = g_dir / "placement.json";
  auto r = run("plan --config " + cfg.string() + " --schedule-json " + sched.string() +
               " --placement-json " + place.string());
  CHECK(r.exit_code == 0);
  std::string s = slurp(sched);
  CHECK(s.find("\"lambda\"") != std::string::npos);
  CHECK(s.find("\"sigma\"") != std::string::npos);
  CHECK(slurp(place).find("\"receivers\"") != std::string::npos);
}

TEST_CASE("malformed and invalid configs exit with the config code") {
  auto bad = write_config("bad.cfg", "K : 4\n");
  CHECK(run("plan --config " + bad.string()).exit_code == 3);
  auto missing = g_dir / "does_not_exist.cfg";
  CHECK(run("plan --config " + missing.string()).exit_code == 3);
  auto fractional = write_config("frac.cfg",
                                 "mode = single-tx\nK = 4\nL = 2\ngamma = 1/3\nN = 4\nC = "
                                 "2\nseed = 1\n");
  CHECK(run("plan --config " + fractional.string()).exit_code == 3);
  auto partition = write_config("part.cfg",
                                "mode = single-tx\nK = 6\nL = 2\ngamma = 1/2\nN = 6\nC = "
                                "2\nseed = 1\n");
  CHECK(run("plan --config " + partition.string()).exit_code == 3);
}

TEST_CASE("simulate writes deterministic reports") {
  auto cfg = write_config("ref.cfg", kReferenceConfig);
  auto out1 = g_dir / "out1";
  auto out2 = g_dir / "out2";
  auto r1 = run("simulate --config " + cfg.string() + " --trials 2 --payload-bytes 32 --out " +
                out1.string());
  auto r2 = run("simulate --config " + cfg.string() + " --trials 2 --payload-bytes 32 --out " +
                out2.string());
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  for (const char* name : {"report.json", "bounds.csv", "plot_data.csv"}) {
    CHECK(slurp(out1 / name) == slurp(out2 / name));
    CHECK_FALSE(slurp(out1 / name).empty());
  }
  CHECK(slurp(out1 / "report.json").find("\"all_ok\": true") != std::string::npos);
  CHECK(slurp(out1 / "bounds.csv").find("4,1,2,1/2,1,2,1/2,1/2,4,true") != std::string::npos);
}

TEST_CASE("simulate emits a trace on request") {
  auto cfg = write_config("ref.cfg", kReferenceConfig);
  auto trace = g_dir / "trace.json";
  auto r = run("simulate --config " + cfg.string() + " --trials 1 --trace " + trace.string());
  CHECK(r.exit_code == 0);
  std::string t = slurp(trace);
  CHECK(t.find("\"channel\"") != std::string::npos);
  CHECK(t.find("\"decoders\"") != std::string::npos);
}

TEST_CASE("multi-transmitter configs flow through the same pipeline") {
  auto cfg = write_config("mt.cfg",
                          "mode = multi-tx\nK = 4\nK_T = 2\nL_T = 1\ngamma_T = 1\n"
                          "gamma = 1/2\nN = 4\nC = 2\nseed = 9\n");
  auto r = run("simulate --config " + cfg.string() + " --trials 2 --payload-bytes 32");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("T = 1/2") != std::string::npos);
  CHECK(r.output.find("DoF = 4") != std::string::npos);
  CHECK(r.output.find("0 failure(s)") != std::string::npos);
}

TEST_CASE("plan emits a json report on request") {
  auto cfg = write_config("ref.cfg", kReferenceConfig);
  auto r = run("plan --config " + cfg.string() + " --json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"schema_version\"") != std::string::npos);
  CHECK(r.output.find("\"delivery_time\": \"1/2\"") != std::string::npos);
}

TEST_CASE("sweep over cache sizes maps t back to gamma") {
  auto cfg = write_config("ref.cfg", kReferenceConfig);
  auto r = run("sweep --config " + cfg.string() + " --t-list 0,2 --trials 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("t=0 C=2: DoF = 2") != std::string::npos);
  CHECK(r.output.find("t=2 C=2: DoF = 4") != std::string::npos);
}

TEST_CASE("bound subcommand prints the converse values") {
  auto cfg = write_config("ref.cfg", kReferenceConfig);
  auto r = run("bound --config " + cfg.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("T_lower_bound = 1/2") != std::string::npos);
  CHECK(r.output.find("DoF_upper_bound = 4") != std::string::npos);
}

TEST_CASE("oracle subcommand solves the reference instance") {
  auto cfg = write_config("ref.cfg", kReferenceConfig);
  auto r = run("oracle --config " + cfg.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("min blocks = 3") != std::string::npos);  // 12 packets / 4 per block
  CHECK(r.output.find("normalized T = 1/2") != std::string::npos);
}

TEST_CASE("oracle budget overrun exits with the budget code") {
  auto cfg = write_config("big.cfg",
                          "mode = single-tx\nK = 4\nL = 2\ngamma = 0\nN = 4\nC = 2\nseed = "
                          "1\n");
  auto r = run("oracle --config " + cfg.string() + " --packets-per-file 4");
  CHECK(r.exit_code == 4);  // 16 needed packets exceed the search budget
}

TEST_CASE("sweep prints one line per grid point") {
  auto cfg = write_config("sweep.cfg",
                          "mode = single-tx\nK = 6\nL = 3\ngamma = 1/2\nN = 6\nC = 3\nseed "
                          "= 3\n");
  auto out = g_dir / "sweep_out";
  auto r = run("sweep --config " + cfg.string() + " --c-list 1,2,3 --trials 1 --out " +
               out.string());
  CHECK(r.output.find("C=1: DoF = 4") != std::string::npos);
  CHECK(r.output.find("C=2: error (schedule)") != std::string::npos);
  CHECK(r.output.find("C=3: DoF = 6") != std::string::npos);
  CHECK(r.exit_code == 3);  // the out-of-scope row surfaces as a config error
  CHECK(slurp(out / "plot_data.csv").find("dof_upper_bound,5") != std::string::npos);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <binary path>\n");
    return 1;
  }
  g_binary = argv[1];
  g_dir = std::filesystem::temp_directory_path() / "lfcc_cli_test";
  std::filesystem::create_directories(g_dir);
  doctest::Context context;
  return context.run();
}
