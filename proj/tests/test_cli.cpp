#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "qsv/io_json.hpp"
#include "qsv/quantum.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string("\"") + QSV_CLI_BIN + "\" " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.output.append(buf, got);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::filesystem::path temp_dir() {
    auto dir = std::filesystem::temp_directory_path() /
               ("qsv_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir;
}

std::string write_temp(const std::string& name, const std::string& content) {
    auto path = temp_dir() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    out.close();
    return path.string();
}

}  // namespace

TEST_CASE("bounds-compare output and determinism") {
    auto first = run_cli("bounds-compare --n 100 --m 50 --k-range 1..20");
    CHECK(first.exit_code == 0);
    auto second = run_cli("bounds-compare --n 100 --m 50 --k-range 1..20");
    CHECK(first.output == second.output);  // byte-identical

    // 20 data rows + header + marker comment
    int lines = 0;
    for (char c : first.output)
        if (c == '\n') ++lines;
    CHECK(lines == 22);
    CHECK(first.output.find("k,cor2_bound,cor2_vacuous,brw_bound,brw_vacuous,nayak_max_p\n") !=
          std::string::npos);
    CHECK(first.output.find("non-rigorous") != std::string::npos);
    // spot value: brw_bound(100,50,20) = 0.182
    CHECK(first.output.find("\n20,") != std::string::npos);
    CHECK(first.output.find("0.181959848708") != std::string::npos);
}

TEST_CASE("bounds-compare empty range gives a header-only table") {
    auto res = run_cli("bounds-compare --n 100 --m 100 --k-range 5..4");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("k,cor2_bound") != std::string::npos);
    CHECK(res.output.find("\n5,") == std::string::npos);
}

TEST_CASE("bounds-compare m = n marks the sampled bound vacuous everywhere") {
    auto res = run_cli("bounds-compare --n 50 --m 50 --k-range 1..5");
    CHECK(res.exit_code == 0);
    std::istringstream ss(res.output);
    std::string line;
    int rows = 0;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'k') continue;
        ++rows;
        // cor2_vacuous is the third field
        auto p1 = line.find(',');
        auto p2 = line.find(',', p1 + 1);
        CHECK(line.substr(p2 + 1, 1) == "1");
    }
    CHECK(rows == 5);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("bounds-compare --n 100").exit_code == 2);
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("bounds-compare --n 100 --m 50 --k-range nonsense").exit_code == 2);
    CHECK(run_cli("sampling-threshold --n 10 --k 2").exit_code == 2);       // needs --p or --c
    CHECK(run_cli("sampling-threshold --n 10 --k 2 --p 0.5 --c 0.5").exit_code == 2);
}

TEST_CASE("sampling-threshold reports values and the ledger") {
    auto res = run_cli("sampling-threshold --n 1000000 --k 1200 --p 0.0009765625");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("367665.186427") != std::string::npos);
    CHECK(res.output.find("log2(1/p) <= k/12 - 5,1,85") != std::string::npos);

    // precondition violations still exit 0: reporting, not failure
    auto fail = run_cli("sampling-threshold --n 1000000 --k 60 --p 0.5");
    CHECK(fail.exit_code == 0);
    CHECK(fail.output.find("log2(1/p) <= k/12 - 5,0,") != std::string::npos);

    auto rate = run_cli("sampling-threshold --n 1000000 --k 600 --c 1");
    CHECK(rate.exit_code == 0);
    CHECK(rate.output.find("6.0027864438") != std::string::npos);
}

TEST_CASE("verify suites pass and violations are machine readable") {
    auto audit = run_cli("verify audit --k-max 300 --logk-max 1000");
    CHECK(audit.exit_code == 0);
    CHECK(audit.output.find("\"suite\":\"audit\"") != std::string::npos);

    auto tiny = run_cli("verify brw --n-max 2 --m-max 1 --rand-joints 3 --seed 0x11");
    CHECK(tiny.exit_code == 0);

    auto broken = run_cli(
        "verify brw --n-max 2 --m-max 1 --rand-joints 0 --inject-brw-bias 0.5");
    CHECK(broken.exit_code == 1);
    // first line must be a violation record with the standard fields
    std::istringstream ss(broken.output);
    std::string line;
    REQUIRE(std::getline(ss, line));
    auto doc = nlohmann::json::parse(line);
    CHECK(doc.contains("suite"));
    CHECK(doc.contains("instance"));
    CHECK(doc.contains("lhs"));
    CHECK(doc.contains("rhs"));
    CHECK(doc.contains("slack"));
}

TEST_CASE("rac-eval on the 2->1 fixture") {
    qsv::CqEnsemble enc = qsv::qrac21_encoding();
    std::string enc_path = write_temp("qrac21.json", qsv::encoding_to_json(enc, 2, 1));
    auto strategies = qsv::helstrom_subset_strategies(enc, 2, 1);
    std::string strat_path =
        write_temp("qrac21_strategies.json", qsv::strategies_to_json(strategies, 2, 1, 1));

    auto res = run_cli("rac-eval --encoding \"" + enc_path + "\" --strategies \"" + strat_path +
                       "\" --k 1");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("0.853553390593") != std::string::npos);
    CHECK(res.output.find("0.889972135561") != std::string::npos);  // nayak column
    CHECK(res.output.find("non-rigorous") != std::string::npos);

    auto pgm = run_cli("rac-eval --encoding \"" + enc_path + "\" --pgm --k 1");
    CHECK(pgm.exit_code == 0);
    CHECK(pgm.output.find("lower bound") != std::string::npos);

    // exactly one of --strategies / --pgm
    CHECK(run_cli("rac-eval --encoding \"" + enc_path + "\" --k 1").exit_code == 2);
}

TEST_CASE("rac-eval with no storage hits 2^-k") {
    // m = 0: four identical one-dimensional states
    std::string enc_path = write_temp(
        "m0.json", R"({"n":2,"m":0,"states":[[[[1,0]]],[[[1,0]]],[[[1,0]]],[[[1,0]]]]})");
    auto res = run_cli("rac-eval --encoding \"" + enc_path + "\" --pgm --k 2");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find(",0.25,") != std::string::npos);
}

TEST_CASE("rac-eval schema diagnostics carry the field path") {
    std::string bad = write_temp("bad.json", R"({"n":2,"m":1,"states":[]})");
    auto res = run_cli("rac-eval --encoding \"" + bad + "\" --pgm --k 1");
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("$.states") != std::string::npos);

    std::string junk = write_temp("junk.json", "{nope");
    auto res2 = run_cli("rac-eval --encoding \"" + junk + "\" --pgm --k 1");
    CHECK(res2.exit_code == 2);
    CHECK(res2.output.find("invalid JSON") != std::string::npos);

    std::string nontrace = write_temp(
        "nontrace.json", R"({"n":1,"m":0,"states":[[[[0.7,0]]],[[[1,0]]]]})");
    auto res3 = run_cli("rac-eval --encoding \"" + nontrace + "\" --pgm --k 1");
    CHECK(res3.exit_code == 2);
    CHECK(res3.output.find("$.states[0]") != std::string::npos);
}

TEST_CASE("joint JSON round trip and validation") {
    qsv::ClassicalJoint j(2, 2);
    j.probs = {{0.25, 0.0}, {0.0, 0.25}, {0.25, 0.0}, {0.0, 0.25}};
    qsv::ClassicalJoint back = qsv::parse_joint_json(qsv::joint_to_json(j));
    CHECK(back.n == 2);
    CHECK(back.w_size == 2);
    CHECK(back.probs == j.probs);

    CHECK_THROWS_AS(qsv::parse_joint_json(R"({"n":1,"w_size":1,"probs":[[0.5],[0.4]]})"),
                    qsv::SchemaError);
    CHECK_THROWS_AS(qsv::parse_joint_json(R"({"n":1,"probs":[[1.0],[0.0]]})"),
                    qsv::SchemaError);
    try {
        qsv::parse_joint_json(R"({"n":1,"w_size":2,"probs":[[0.5,0.5]]})");
        CHECK(false);
    } catch (const qsv::SchemaError& e) {
        CHECK(e.path == "$.probs");
    }
}

TEST_CASE("strategies JSON validation") {
    qsv::CqEnsemble enc = qsv::qrac21_encoding();
    auto strategies = qsv::helstrom_subset_strategies(enc, 2, 1);
    std::string text = qsv::strategies_to_json(strategies, 2, 1, 1);
    qsv::StrategiesFile parsed = qsv::parse_strategies_json(text);
    CHECK(parsed.n == 2);
    CHECK(parsed.k == 1);
    CHECK(parsed.povms.size() == 2);

    // duplicate subset
    auto doc = nlohmann::json::parse(text);
    doc["subsets"][1]["indices"] = doc["subsets"][0]["indices"];
    CHECK_THROWS_AS(qsv::parse_strategies_json(doc.dump()), qsv::SchemaError);
}
