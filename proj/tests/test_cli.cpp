#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frame_io.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

using nlohmann::json;

const std::filesystem::path scratch = "cli_scratch";

std::string cli_path() {
  const char* path = std::getenv("FRAMEKIT_CLI");
  REQUIRE_MESSAGE(path != nullptr, "FRAMEKIT_CLI must point at the binary");
  return path;
}

std::string path_for(const std::string& name) {
  std::filesystem::create_directories(scratch);
  return (scratch / name).string();
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = path_for(name);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  return path;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

struct run_result {
  int exit_code;
  std::string out;
  std::string err;
};

run_result run_cli(const std::string& args) {
  std::string out_path = path_for("stdout.txt");
  std::string err_path = path_for("stderr.txt");
  std::string command = "\"" + cli_path() + "\" " + args + " > \"" + out_path +
                        "\" 2> \"" + err_path + "\"";
  int raw = std::system(command.c_str());
  REQUIRE(raw != -1);
  REQUIRE(WIFEXITED(raw));
  return {WEXITSTATUS(raw), read_file(out_path), read_file(err_path)};
}

json report_of(const run_result& r) {
  json doc = json::parse(r.out);
  REQUIRE(doc.is_object());
  return doc;
}

std::string worked_frame() {
  return write_temp("f.json", "{\"dim\": 2, \"vectors\": [[1, 0], [0, 2]]}\n");
}

} // namespace

TEST_CASE("analyze reports bounds, spectrum, and identity") {
  run_result r = run_cli("analyze " + worked_frame());
  CHECK(r.exit_code == 0);
  json doc = report_of(r);
  CHECK(doc["command"] == "analyze");
  CHECK(doc["status"] == "ok");
  CHECK(doc["messages"].empty());
  CHECK(doc["input"]["dim"] == 2);
  CHECK(doc["input"]["count"] == 2);
  CHECK(doc["result"]["report"]["lower_bound"].get<double>() == 1.0);
  CHECK(doc["result"]["report"]["upper_bound"].get<double>() == 4.0);
  CHECK(doc["result"]["report"]["condition_number"].get<double>() == 4.0);
  CHECK(doc["result"]["report"]["is_tight"] == false);
  CHECK(doc["result"]["eigenvalues"].get<std::vector<double>>() ==
        std::vector<double>{1.0, 4.0});
  CHECK(doc["result"]["tight_bound_identity"].get<double>() == 2.5);
}

TEST_CASE("analyze output is byte-stable across runs") {
  std::string frame = worked_frame();
  run_result first = run_cli("analyze " + frame);
  run_result second = run_cli("analyze " + frame);
  CHECK(first.exit_code == 0);
  CHECK(first.out == second.out);
}

TEST_CASE("csv input and json input agree") {
  run_result from_json = run_cli("analyze " + worked_frame());
  run_result from_csv = run_cli("analyze " + write_temp("f.csv", "1,0\n0,2\n"));
  CHECK(from_csv.exit_code == 0);
  CHECK(report_of(from_json)["result"] == report_of(from_csv)["result"]);

  run_result forced = run_cli(
      "analyze --format csv " + write_temp("f_as.txt", "1,0\n0,2\n"));
  CHECK(forced.exit_code == 0);
  CHECK(report_of(forced)["result"] == report_of(from_json)["result"]);
}

TEST_CASE("improve writes the perturbed frame and deltas") {
  std::string out_path = path_for("improved.json");
  run_result r =
      run_cli("improve " + worked_frame() + " --epsilon 1 -o " + out_path);
  CHECK(r.exit_code == 0);
  json doc = report_of(r);
  CHECK(doc["status"] == "ok");
  double r_used = doc["result"]["r_used"].get<double>();
  CHECK(r_used == 0.9);
  CHECK(doc["result"]["report_before"]["condition_number"].get<double>() == 4.0);
  CHECK(doc["result"]["report_after"]["condition_number"].get<double>() <  4.0);
  auto vectors =
      doc["result"]["frame"]["vectors"].get<std::vector<std::vector<double>>>();
  REQUIRE(vectors.size() == 2);
  CHECK(vectors[0][0] == 1.0 + 0.9);
  CHECK(vectors[1][1] == 2.0 + 0.45);
  auto deltas = doc["result"]["deltas"].get<std::vector<std::vector<double>>>();
  CHECK(deltas[0] == std::vector<double>{0.9, 0.0});
  CHECK(deltas[1] == std::vector<double>{0.0, 0.45});

  fio::parsed_frame written = fio::parse_frame_file(out_path, {});
  CHECK(written.coords ==
        std::vector<double>{vectors[0][0], vectors[0][1], vectors[1][0],
                            vectors[1][1]});
}

TEST_CASE("tighten emits the worked trace and output files") {
  std::string out_path = path_for("tight.json");
  std::string trace_path = path_for("trace.json");
  run_result r = run_cli("tighten " + worked_frame() + " -o " + out_path +
                         " --trace " + trace_path);
  CHECK(r.exit_code == 0);
  json doc = report_of(r);
  CHECK(doc["status"] == "ok");
  CHECK(doc["result"]["step_count"] == 1);
  CHECK(doc["result"]["steps"][0]["r"].get<double>() == 2.0);
  CHECK(doc["result"]["steps"][0]["bounds_before"]["lower"].get<double>() == 1.0);
  CHECK(doc["result"]["steps"][0]["bounds_after"]["upper"].get<double>() == 9.0);
  CHECK(doc["result"]["final_report"]["is_tight"] == true);
  CHECK(doc["result"]["final_frame"]["vectors"]
            .get<std::vector<std::vector<double>>>() ==
        std::vector<std::vector<double>>{{3.0, 0.0}, {0.0, 3.0}});

  fio::parsed_frame written = fio::parse_frame_file(out_path, {});
  CHECK(written.coords == std::vector<double>{3.0, 0.0, 0.0, 3.0});

  json trace = json::parse(read_file(trace_path));
  CHECK(trace["input_frame"]["vectors"]
            .get<std::vector<std::vector<double>>>() ==
        std::vector<std::vector<double>>{{1.0, 0.0}, {0.0, 2.0}});
  CHECK(trace["steps"][0]["frame_after"]["vectors"] ==
        trace["final_frame"]["vectors"]);
  CHECK(trace["total_deltas"].get<std::vector<std::vector<double>>>() ==
        std::vector<std::vector<double>>{{2.0, 0.0}, {0.0, 1.0}});
}

TEST_CASE("tighten of a tight frame reports zero steps") {
  run_result r = run_cli(
      "tighten " + write_temp("onb.json",
                              "{\"dim\": 2, \"vectors\": [[1, 0], [0, 1]]}"));
  CHECK(r.exit_code == 0);
  json doc = report_of(r);
  CHECK(doc["result"]["step_count"] == 0);
  CHECK(doc["result"]["steps"].empty());
  CHECK(doc["result"]["final_report"]["is_tight"] == true);
}

TEST_CASE("stability reports the radius") {
  run_result r = run_cli("stability " + worked_frame());
  CHECK(r.exit_code == 0);
  json doc = report_of(r);
  CHECK(doc["result"]["radius"].get<double>() == std::sqrt(0.5));
}

TEST_CASE("pw-check certifies small perturbations and warns otherwise") {
  std::string base = worked_frame();
  std::string nudged =
      write_temp("g.json", "{\"dim\": 2, \"vectors\": [[1.1, 0], [0, 2]]}");
  run_result r = run_cli("pw-check " + base + " " + nudged);
  CHECK(r.exit_code == 0);
  json doc = report_of(r);
  CHECK(doc["status"] == "ok");
  CHECK(doc["input"]["base"]["count"] == 2);
  CHECK(doc["input"]["perturbed"]["count"] == 2);
  CHECK(doc["result"]["certificate"]["admissible"] == true);
  CHECK(doc["result"]["certificate"]["lambda_const"].get<double>() == 0.0);
  CHECK(doc["result"]["certificate"]["mu_sharp"].get<double>() ==
        doctest::Approx(0.1).epsilon(1e-12));

  std::string collapsed = write_temp(
      "collapsed.json", "{\"dim\": 2, \"vectors\": [[0, 0], [0, 2]]}");
  run_result warn = run_cli("pw-check " + base + " " + collapsed);
  CHECK(warn.exit_code == 0);
  json warned = report_of(warn);
  CHECK(warned["status"] == "warning");
  CHECK(warned["messages"].size() == 1);
  CHECK(warned["result"]["certificate"]["admissible"] == false);
  CHECK(warn.err.find("warning") != std::string::npos);
}

TEST_CASE("append and erase report verdicts") {
  std::string onb =
      write_temp("onb.json", "{\"dim\": 2, \"vectors\": [[1, 0], [0, 1]]}");
  std::string onb2 =
      write_temp("onb2.json", "{\"dim\": 2, \"vectors\": [[0, 1], [1, 0]]}");
  run_result appended = run_cli("append " + onb + " " + onb2);
  CHECK(appended.exit_code == 0);
  json doc = report_of(appended);
  CHECK(doc["result"]["verdict"]["combined_tight"] == true);
  CHECK(doc["result"]["verdict"]["appended_bound"].get<double>() == 1.0);
  CHECK(doc["result"]["verdict"]["combined_bound"].get<double>() == 2.0);

  run_result single = run_cli(
      "append " + onb + " " +
      write_temp("one.json", "{\"dim\": 2, \"vectors\": [[1, 0]]}"));
  CHECK(single.exit_code == 0);
  json single_doc = report_of(single);
  CHECK(single_doc["result"]["verdict"]["combined_tight"] == false);
  CHECK(single_doc["result"]["verdict"]["appended_bound"].is_null());

  std::string four = write_temp(
      "four.json", "{\"dim\": 2, \"vectors\": [[1, 0], [0, 1], [1, 0], [0, 1]]}");
  run_result erased = run_cli("erase " + four + " --indices 1,2");
  CHECK(erased.exit_code == 0);
  json erased_doc = report_of(erased);
  CHECK(erased_doc["status"] == "ok");
  CHECK(erased_doc["result"]["verdict"]["erased_count"] == 2);
  CHECK(erased_doc["result"]["verdict"]["remainder_tight"] == true);
  CHECK(erased_doc["result"]["verdict"]["rule_applied"] ==
        "p>=n: tight iff erased tight");
  CHECK(erased_doc["result"]["verdict"]["remainder_report"]["lower_bound"]
            .get<double>() == 1.0);
  CHECK(erased_doc["result"]["verdict"]["remainder_eigenvalues"]
            .get<std::vector<double>>() == std::vector<double>{1.0, 1.0});

  run_result gutted = run_cli("erase " + four + " --indices 1,3");
  json gutted_doc = report_of(gutted);
  CHECK(gutted.exit_code == 0);
  CHECK(gutted_doc["status"] == "warning");
  CHECK(gutted_doc["result"]["verdict"]["remainder_is_frame"] == false);
  CHECK(gutted_doc["result"]["verdict"]["remainder_report"].is_null());
  CHECK(gutted_doc["result"]["verdict"]["remainder_eigenvalues"].is_null());
}

TEST_CASE("diag2 reports 1-based positions and warning on collapse") {
  run_result r = run_cli(
      "diag2 " +
      write_temp("three.json",
                 "{\"dim\": 2, \"vectors\": [[1, 0], [0, 1], [1, 1]]}"));
  CHECK(r.exit_code == 0);
  json doc = report_of(r);
  CHECK(doc["status"] == "ok");
  CHECK(doc["result"]["chosen_vector"] == 3);
  CHECK(doc["result"]["chosen_row"] == 1);
  CHECK(doc["result"]["perturb_axis"] == 2);
  CHECK(doc["result"]["epsilon"].get<double>() == -1.0);
  CHECK(doc["result"]["still_frame"] == true);

  std::string out_path = path_for("diag.json");
  run_result collapse = run_cli(
      "diag2 " +
      write_temp("sac.json", "{\"dim\": 2, \"vectors\": [[1, 0], [1, 1]]}") +
      " -o " + out_path);
  CHECK(collapse.exit_code == 0);
  json collapsed = report_of(collapse);
  CHECK(collapsed["status"] == "warning");
  CHECK(collapsed["result"]["still_frame"] == false);
  fio::parsed_frame written = fio::parse_frame_file(out_path, {});
  CHECK(written.coords == std::vector<double>{1.0, 0.0, 1.0, 0.0});
}

TEST_CASE("blend certifies within the threshold and warns beyond it") {
  std::string base = worked_frame();
  std::string other =
      write_temp("g.json", "{\"dim\": 2, \"vectors\": [[1.1, 0], [0, 2]]}");
  run_result r = run_cli("blend " + base + " " + other + " --t 0.5,0.5");
  CHECK(r.exit_code == 0);
  json doc = report_of(r);
  CHECK(doc["status"] == "ok");
  CHECK(doc["result"]["certificate"]["certified"] == true);
  CHECK(doc["result"]["certificate"]["tau"].get<double>() == 0.5);
  CHECK(doc["result"]["certificate"]["guaranteed_lower"].is_number());

  run_result identical = run_cli("blend " + base + " " + base + " --t 1,1");
  json identical_doc = report_of(identical);
  CHECK(identical_doc["result"]["certificate"]["threshold"].is_null());
  CHECK(identical_doc["result"]["certificate"]["certified"] == true);

  std::string negated =
      write_temp("neg.json", "{\"dim\": 2, \"vectors\": [[-1, 0], [0, -2]]}");
  run_result warn = run_cli("blend " + base + " " + negated + " --t 0.5,0.5");
  CHECK(warn.exit_code == 0);
  json warned = report_of(warn);
  CHECK(warned["status"] == "warning");
  CHECK(warned["result"]["certificate"]["certified"] == false);
  CHECK(warned["result"]["certificate"]["guaranteed_lower"].is_null());
  CHECK(warned["result"]["certificate"]["guaranteed_upper"].is_null());
}

TEST_CASE("mathematical failures exit 1 with an error report") {
  std::string flat = write_temp(
      "flat.json", "{\"dim\": 2, \"vectors\": [[1, 0], [2, 0]]}");
  run_result r = run_cli("analyze " + flat);
  CHECK(r.exit_code == 1);
  json doc = report_of(r);
  CHECK(doc["status"] == "error");
  CHECK(doc["error"]["kind"] == "not_a_frame");
  CHECK(doc["messages"].size() == 1);
  CHECK(r.err.find("error") != std::string::npos);

  run_result not_tight = run_cli("append " + worked_frame() + " " + flat);
  CHECK(not_tight.exit_code == 1);
  CHECK(report_of(not_tight)["error"]["kind"] == "not_tight");
}

TEST_CASE("usage and format failures exit 2") {
  run_result ragged = run_cli("analyze " + write_temp("ragged.csv", "1,0\n0\n"));
  CHECK(ragged.exit_code == 2);
  json doc = report_of(ragged);
  CHECK(doc["status"] == "error");
  CHECK(doc["error"]["kind"] == "dimension_mismatch");
  CHECK(doc["input"].is_null());

  run_result missing = run_cli("analyze cli_scratch/nope.json");
  CHECK(missing.exit_code == 2);
  CHECK(report_of(missing)["error"]["kind"] == "io_error");

  run_result unknown_key = run_cli(
      "analyze " +
      write_temp("extra.json",
                 "{\"dim\": 2, \"vectors\": [[1, 0], [0, 2]], \"x\": 1}"));
  CHECK(unknown_key.exit_code == 2);
  CHECK(report_of(unknown_key)["error"]["kind"] == "format_error");

  run_result bad_epsilon =
      run_cli("improve " + worked_frame() + " --epsilon -1");
  CHECK(bad_epsilon.exit_code == 2);
  CHECK(report_of(bad_epsilon)["error"]["kind"] == "domain_error");

  run_result bad_safety =
      run_cli("improve " + worked_frame() + " --epsilon 1 --safety 2");
  CHECK(bad_safety.exit_code == 2);

  std::string four = write_temp(
      "four.json", "{\"dim\": 2, \"vectors\": [[1, 0], [0, 1], [1, 0], [0, 1]]}");
  run_result all_erased = run_cli("erase " + four + " --indices 1,2,3,4");
  CHECK(all_erased.exit_code == 2);
  CHECK(report_of(all_erased)["error"]["kind"] == "invalid_indices");

  run_result zero_index = run_cli("erase " + four + " --indices 0");
  CHECK(zero_index.exit_code == 2);
  CHECK(report_of(zero_index)["error"]["kind"] == "invalid_indices");

  run_result short_weights =
      run_cli("blend " + worked_frame() + " " + worked_frame() + " --t 0.5");
  CHECK(short_weights.exit_code == 2);
  CHECK(report_of(short_weights)["error"]["kind"] == "invalid_argument");

  run_result mismatched = run_cli(
      "pw-check " + worked_frame() + " " +
      write_temp("r3.json", "{\"dim\": 3, \"vectors\": [[1, 0, 0]]}"));
  CHECK(mismatched.exit_code == 2);
  CHECK(report_of(mismatched)["error"]["kind"] == "dimension_mismatch");

  run_result wrong_dim = run_cli("diag2 " + write_temp(
      "r3f.json",
      "{\"dim\": 3, \"vectors\": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}"));
  CHECK(wrong_dim.exit_code == 2);
  CHECK(report_of(wrong_dim)["error"]["kind"] == "wrong_dimension");
}

TEST_CASE("command-line parse errors exit 2 without a JSON report") {
  run_result unknown = run_cli("frobnicate x.json");
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.out.empty());
  CHECK_FALSE(unknown.err.empty());

  run_result missing_option = run_cli("improve " + worked_frame());
  CHECK(missing_option.exit_code == 2);
  CHECK(missing_option.out.empty());

  run_result no_subcommand = run_cli("");
  CHECK(no_subcommand.exit_code == 2);

  run_result bad_format = run_cli("analyze " + worked_frame() + " --format xml");
  CHECK(bad_format.exit_code == 2);

  run_result help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("Subcommands") != std::string::npos);
}
