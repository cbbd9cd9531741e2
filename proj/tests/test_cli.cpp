#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cli/commands.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Case {
  const char* name;
  const char* command;
  int exit_code;
  const char* extra_args = "";
};

// Set HAARLAB_UPDATE_GOLDEN=1 to rewrite the expected reports.
const Case kCases[] = {
    {"verify_haar_pass", "verify-haar", 0},
    {"verify_haar_fail", "verify-haar", 1},
    {"verify_haar_right_table", "verify-haar", 0},
    {"counterexample_zero", "counterexample", 0},
    {"counterexample_one", "counterexample", 0, "--probe-bound 10"},
    {"enumerate_z4", "enumerate", 0},
    {"enumerate_s3", "enumerate", 0, "--jobs 3"},
    {"enumerate_trivial", "enumerate", 0},
    {"enumerate_z2_q8", "enumerate", 0, "--jobs 4"},
    {"construct_z4_n", "construct", 0},
    {"construct_z4_full", "construct", 0},
    {"construct_trivial", "construct", 0},
    {"quotient_d4", "quotient", 0},
    {"fubini_z2", "fubini", 0},
    {"fubini_functions", "fubini", 0},
    {"plane_open_unit", "plane", 0},
    {"plane_unbounded", "plane", 0},
    {"error_bad_table", "enumerate", 2},
    {"error_unknown_field", "enumerate", 2},
    {"error_empty_interior", "construct", 2},
    {"error_discontinuous", "verify-haar", 2},
    {"error_float_mass", "verify-haar", 2},
    {"error_negative_mass", "counterexample", 2},
    {"error_truncated", "verify-haar", 2},
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path golden(const std::string& file) { return fs::path(HAARLAB_GOLDEN_DIR) / file; }

int run_binary(const std::string& args, const fs::path& out, const std::string& env = "") {
  const std::string cmd = env + " \"" HAARLAB_BINARY "\" " + args + " --output \"" + out.string() + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "haarlab_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

json report_for(const std::string& input_name, const std::string& command, int& code, const std::string& args = "",
                const std::string& env = "") {
  const fs::path out = scratch(input_name + ".out.json");
  code = run_binary(command + " --input \"" + golden(input_name + ".input.json").string() + "\" " + args, out, env);
  return json::parse(slurp(out));
}

}  // namespace

TEST_CASE("golden reports") {
  const bool update = std::getenv("HAARLAB_UPDATE_GOLDEN") != nullptr;
  for (const Case& c : kCases) {
    CAPTURE(c.name);
    const fs::path out = scratch(std::string(c.name) + ".json");
    const std::string args = std::string(c.command) + " --input \"" +
                             golden(std::string(c.name) + ".input.json").string() + "\" " + c.extra_args;
    CHECK(run_binary(args, out) == c.exit_code);
    const fs::path expected = golden(std::string(c.name) + ".expected.json");
    if (update) fs::copy_file(out, expected, fs::copy_options::overwrite_existing);
    REQUIRE(fs::exists(expected));
    CHECK(slurp(out) == slurp(expected));
  }
}

TEST_CASE("report contents for the documented examples") {
  int code = 0;
  auto r = report_for("verify_haar_pass", "verify-haar", code);
  CHECK(code == 0);
  CHECK(r["schema_version"] == 1);
  CHECK(r["results"]["is_left_haar"] == true);

  r = report_for("verify_haar_fail", "verify-haar", code);
  CHECK(code == 1);
  CHECK(r["results"]["witnesses"][0] == json{{"axiom", "left_invariant"}, {"set", {0, 2}}, {"element", 1}});

  r = report_for("counterexample_zero", "counterexample", code);
  CHECK(code == 0);
  CHECK(r["results"]["verdict"] == "NonzeroViolated");

  r = report_for("counterexample_one", "counterexample", code, "--probe-bound 10/1");
  CHECK(r["results"]["translate_count"] == 11);
  r = report_for("counterexample_one", "counterexample", code);
  CHECK(r["results"]["translate_count"] == 1001);

  r = report_for("enumerate_z4", "enumerate", code);
  CHECK(r["results"]["topology_count"] == 3);
  for (const auto& t : r["results"]["topologies"]) CHECK(t["haar_dimension"]["left"] == 1);
  CHECK(report_for("enumerate_s3", "enumerate", code)["results"]["topology_count"] == 3);
  CHECK(report_for("enumerate_trivial", "enumerate", code)["results"]["topology_count"] == 1);

  CHECK(report_for("construct_z4_n", "construct", code)["results"]["a"] == "1/1");
  r = report_for("construct_z4_full", "construct", code);
  CHECK(r["results"]["a"] == "1/2");
  CHECK(r["results"]["measure"] == json{"1/2", "1/2"});
  CHECK(report_for("construct_trivial", "construct", code)["results"]["table"].size() == 1);

  r = report_for("plane_open_unit", "plane", code);
  CHECK(r["results"]["haar"] == "1/1");
  CHECK(r["results"]["regularity"]["inner"][0]["lo"] == "1/20");
}

TEST_CASE("input errors are structured and exit 2") {
  int code = 0;
  auto r = report_for("error_bad_table", "enumerate", code);
  CHECK(code == 2);
  CHECK(r["status"] == "error");
  CHECK(r["error"]["kind"] == "InvalidGroup");

  r = report_for("error_unknown_field", "enumerate", code);
  CHECK(r["error"]["kind"] == "ParseError");
  CHECK(r["error"]["message"].get<std::string>().find("colour") != std::string::npos);

  r = report_for("error_discontinuous", "verify-haar", code);
  CHECK(r["error"]["witness"].contains("open"));

  CHECK(report_for("error_empty_interior", "construct", code)["error"]["kind"] == "EmptyInterior");
  CHECK(report_for("error_truncated", "verify-haar", code)["error"]["kind"] == "ParseError");

  r = report_for("enumerate_z4", "enumerate", code, "--max-order 3");
  CHECK(code == 2);
  CHECK(r["error"]["kind"] == "TooLarge");
  report_for("enumerate_z4", "enumerate", code, "", "HAARLAB_MAX_ORDER=3");
  CHECK(code == 2);
  report_for("enumerate_z4", "enumerate", code, "--max-order 4", "HAARLAB_MAX_ORDER=3");
  CHECK(code == 0);

  const fs::path out = scratch("usage.json");
  CHECK(run_binary("enumerate", out) == 2);
  CHECK(run_binary("bogus --input \"" + golden("enumerate_z4.input.json").string() + "\"", out) == 2);
  CHECK(run_binary("enumerate --input /nonexistent/file.json", out) == 2);
}

TEST_CASE("in-process run matches the binary and ignores the job count") {
  haarlab::cli::RunConfig config;
  config.command = "enumerate";
  config.input_path = golden("enumerate_z2_q8.input.json").string();
  std::ostringstream one, many, err;
  config.jobs = 1;
  CHECK(haarlab::cli::run(config, one, err) == 0);
  config.jobs = 8;
  CHECK(haarlab::cli::run(config, many, err) == 0);
  CHECK(one.str() == many.str());
  CHECK(one.str() == slurp(golden("enumerate_z2_q8.expected.json")));
  CHECK(err.str().empty());
}
