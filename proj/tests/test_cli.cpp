#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef SETBM_CLI_PATH
#error "SETBM_CLI_PATH must point at the setbm binary"
#endif

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
    int exit_code = -1;
};

fs::path tmp_dir() {
    fs::path d = fs::temp_directory_path() / "setbm_cli_tests";
    fs::create_directories(d);
    return d;
}

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(SETBM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("simulate: row count and byte-identical reruns") {
    fs::path out1 = tmp_dir() / "sim1.csv";
    fs::path out2 = tmp_dir() / "sim2.csv";
    RunResult r1 = run_cli("simulate --seed 42 --n-paths 10 --uniform 100 1.0 --output " +
                           out1.string());
    RunResult r2 = run_cli("simulate --seed 42 --n-paths 10 --uniform 100 1.0 --output " +
                           out2.string());
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    std::string body1 = slurp(out1);
    CHECK(count_lines(body1) == 10 * 101 + 1);  // data rows + header
    CHECK(body1 == slurp(out2));

    fs::path out3 = tmp_dir() / "sim3.csv";
    run_cli("simulate --seed 43 --n-paths 10 --uniform 100 1.0 --output " + out3.string());
    CHECK(body1 != slurp(out3));
}

TEST_CASE("simulate: json format carries the schema version") {
    fs::path out = tmp_dir() / "sim.json";
    RunResult r = run_cli("simulate --seed 1 --n-paths 3 --times 0.5,1 --format json --output " +
                          out.string());
    CHECK(r.exit_code == 0);
    json doc = json::parse(slurp(out));
    CHECK(doc["schema_version"] == "1");
    CHECK(doc["command"] == "simulate");
    CHECK(doc["paths"].size() == 3);
    CHECK(doc["times"].size() == 3);
    CHECK(doc["paths"][0]["w"][0] == 0.0);
}

TEST_CASE("verify: passes its gates at moderate path counts") {
    fs::path out = tmp_dir() / "verify.json";
    RunResult r = run_cli("verify --seed 42 --n-paths 20000 --output " + out.string());
    CHECK(r.exit_code == 0);
    json doc = json::parse(slurp(out));
    CHECK(doc["all_pass"] == true);
    CHECK(doc["skipped"].empty());
    REQUIRE(!doc["results"].empty());
    for (const auto& entry : doc["results"]) {
        CHECK(entry.contains("test"));
        CHECK(entry.contains("params"));
        CHECK(entry.contains("empirical"));
        CHECK(entry.contains("theoretical"));
        CHECK(entry.contains("stderr"));
        CHECK(entry.contains("z"));
        CHECK(entry.contains("pass"));
    }
    json matrix = doc["covariance_theoretical_matrix"];
    CHECK(matrix == json::parse("[[1.0,1.0,1.0],[1.0,2.0,2.0],[1.0,2.0,3.0]]"));
}

TEST_CASE("verify: an impossible gate reports failure through exit 1") {
    fs::path out = tmp_dir() / "verify_tight.json";
    RunResult r = run_cli("verify --seed 3 --n-paths 2000 --tests increments --sigma 0.0001 "
                          "--output " +
                          out.string());
    CHECK(r.exit_code == 1);
    json doc = json::parse(slurp(out));  // report still written
    CHECK(doc["all_pass"] == false);
}

TEST_CASE("verify: too few paths surfaces skipped entries and exit 0") {
    fs::path out = tmp_dir() / "verify_small.json";
    RunResult r = run_cli("verify --seed 1 --n-paths 10 --output " + out.string());
    CHECK(r.exit_code == 0);
    json doc = json::parse(slurp(out));
    CHECK(doc["results"].empty());
    CHECK(doc["skipped"].size() == 8);
    for (const auto& s : doc["skipped"]) CHECK(s.contains("reason"));
}

TEST_CASE("distfn: csv surface and confidence behaviour") {
    fs::path out = tmp_dir() / "dist.csv";
    RunResult r = run_cli("distfn --seed 7 --lambda 1.0 --steps 6 --n-samples 20000 --output " +
                          out.string());
    CHECK(r.exit_code == 0);
    std::stringstream ss(slurp(out));
    std::string line;
    std::getline(ss, line);
    CHECK(line == "y1,y2,mc_estimate,half_width,analytic,abs_err");
    int rows = 0, covered = 0;
    while (std::getline(ss, line)) {
        double y1, y2, mc, hw, an, err;
        char comma;
        std::stringstream row(line);
        row >> y1 >> comma >> y2 >> comma >> mc >> comma >> hw >> comma >> an >> comma >> err;
        REQUIRE(y1 <= y2);  // no out-of-domain rows
        REQUIRE(mc >= 0.0);
        REQUIRE(mc <= 1.0);
        if (err <= hw) ++covered;
        ++rows;
    }
    CHECK(rows == 21);  // upper triangle of a 6x6 grid
    CHECK(covered >= rows * 80 / 100);
}

TEST_CASE("ghdiff: worked examples end to end") {
    fs::path out = tmp_dir() / "gh.json";
    RunResult r = run_cli("ghdiff --a [1,5] --b [0,2] --output " + out.string());
    CHECK(r.exit_code == 0);
    json doc = json::parse(slurp(out));
    CHECK(doc["case"] == "CaseI");
    CHECK(doc["value"]["lo"] == 1.0);
    CHECK(doc["value"]["hi"] == 3.0);
    CHECK(doc["identities_report"].size() == 4);
    for (const auto& id : doc["identities_report"]) CHECK(id["pass"] == true);

    run_cli("ghdiff --a [0,1] --b [0,1] --output " + out.string());
    doc = json::parse(slurp(out));
    CHECK(doc["case"] == "BothSingleton");
    CHECK(doc["value"]["lo"] == 0.0);
    CHECK(doc["value"]["hi"] == 0.0);

    run_cli("ghdiff --a 'poly:0,0;1,0' --b 'poly:0,0;0,1' --output " + out.string());
    doc = json::parse(slurp(out));
    CHECK(doc["case"] == "NotExists");
    CHECK(doc["value"].is_null());
}

TEST_CASE("exit codes: usage 2, io 3") {
    CHECK(run_cli("ghdiff --a garbage --b [0,1]").exit_code == 2);
    CHECK(run_cli("simulate").exit_code == 2);          // missing required seed
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("simulate --seed 1 --output /nonexistent-dir/x.csv").exit_code == 3);
    CHECK(run_cli("simulate --seed 1 --times 2,1").exit_code == 2);  // not increasing
    CHECK(run_cli("distfn --seed 1 --lambda -2").exit_code == 2);
    CHECK(run_cli("distfn --seed 1 --lambda 1 --steps 1").exit_code == 2);
    CHECK(run_cli("ghdiff --a [0,1] --b 'ball:0,0;1'").exit_code == 2);  // dim mismatch
}

TEST_CASE("SETBM_THREADS does not change the bytes") {
    fs::path out1 = tmp_dir() / "thr1.csv";
    fs::path out2 = tmp_dir() / "thr2.csv";
    std::string base = " simulate --seed 11 --n-paths 50 --uniform 20 1.0 --output ";
    int s1 = std::system(("SETBM_THREADS=1 " + std::string(SETBM_CLI_PATH) + base +
                          out1.string() + " > /dev/null 2>&1")
                             .c_str());
    int s2 = std::system(("SETBM_THREADS=8 " + std::string(SETBM_CLI_PATH) + base +
                          out2.string() + " > /dev/null 2>&1")
                             .c_str());
    CHECK(WEXITSTATUS(s1) == 0);
    CHECK(WEXITSTATUS(s2) == 0);
    CHECK(slurp(out1) == slurp(out2));
}

TEST_CASE("simulate --full-vectors emits the embedded values") {
    fs::path out = tmp_dir() / "full.json";
    RunResult r = run_cli(
        "simulate --seed 2 --n-paths 2 --times 1 --dim 2 --m 8 --format json --full-vectors "
        "--output " +
        out.string());
    CHECK(r.exit_code == 0);
    json doc = json::parse(slurp(out));
    CHECK(doc["grid"]["m"] == 8);
    CHECK(doc["grid"]["dimension"] == 2);
    CHECK(doc["grid"]["directions"].size() == 8);
    REQUIRE(doc["paths"][0]["values"].size() == 2);  // per time point
    CHECK(doc["paths"][0]["values"][0].size() == 8);
}

TEST_CASE("config file: flat key=value with flag override") {
    fs::path cfg = tmp_dir() / "run.cfg";
    {
        std::ofstream f(cfg);
        f << "# experiment config\n";
        f << "seed=5\n";
        f << "n-paths=4\n";
        f << "uniform=10 1.0\n";
    }
    fs::path out1 = tmp_dir() / "cfg1.csv";
    fs::path out2 = tmp_dir() / "cfg2.csv";
    CHECK(run_cli("simulate --config " + cfg.string() + " --output " + out1.string())
              .exit_code == 0);
    CHECK(count_lines(slurp(out1)) == 4 * 11 + 1);
    // command line overrides the file
    CHECK(run_cli("simulate --config " + cfg.string() + " --n-paths 2 --output " +
                  out2.string())
              .exit_code == 0);
    CHECK(count_lines(slurp(out2)) == 2 * 11 + 1);
}
