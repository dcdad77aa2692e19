#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

const fs::path data = TEST_DATA_DIR;
const fs::path work = TEST_WORK_DIR;

int run(const std::string& args) {
    fs::create_directories(work);
    const std::string cmd = std::string(ORBITLOC_CLI) + " " + args + " >" + (work / "stdout.txt").string() + " 2>" +
                            (work / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string cfg(const char* name) { return "--config " + (data / name).string(); }
std::string out(const char* name) { return "--out " + (work / name).string(); }

} // namespace

TEST_CASE("eval writes the fixed csv schema and flags the wall row") {
    REQUIRE(run("eval " + cfg("su2_eval.json") + " " + out("su2.csv")) == 0);
    std::istringstream in(slurp(work / "su2.csv"));
    std::string line;
    std::getline(in, line);
    CHECK(line == "x1,re_f,im_f,degenerate,mode,s0,version");
    int rows = 0, flagged = 0;
    while (std::getline(in, line)) {
        ++rows;
        flagged += line.find(",1,compact,") != std::string::npos;
    }
    CHECK(rows == 9);
    CHECK(flagged == 1);
}

TEST_CASE("eval json carries the resolved config and per-term breakdown") {
    REQUIRE(run("eval " + cfg("su3_eval.json") + " " + out("su3.json")) == 0);
    const std::string s = slurp(work / "su3.json");
    CHECK(s.find("\"config\"") != std::string::npos);
    CHECK(s.find("\"terms\"") != std::string::npos);
    CHECK(s.find("\"s1s2s1\"") != std::string::npos);
}

TEST_CASE("split and elliptic grids") {
    REQUIRE(run("eval " + cfg("sl2_split.json") + " --format csv " + out("split.csv")) == 0);
    std::istringstream in(slurp(work / "split.csv"));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line))
        CHECK(line.find(",0,0,maximally_split,") != std::string::npos); // im_f = 0, not degenerate

    REQUIRE(run("eval " + cfg("sl2_elliptic.json") + " " + out("elliptic.csv")) == 0);
    std::istringstream e(slurp(work / "elliptic.csv"));
    std::getline(e, line);
    int rows = 0;
    while (std::getline(e, line)) {
        ++rows;
        CHECK(line.find(",0,0,0,maximally_split,") != std::string::npos);
    }
    CHECK(rows == 10);
}

TEST_CASE("exit codes") {
    CHECK(run("eval " + cfg("wall_only.json")) == 3);
    CHECK(run("eval " + cfg("singular_lambda.json")) == 2);
    CHECK(run("eval " + cfg("broken.json")) == 2);
    CHECK(run("eval --config " + (data / "missing.json").string()) == 2);
    CHECK(run("eval " + cfg("su2_eval.json") + " --format xml") == 2);
    CHECK(run("verify " + cfg("su2_eval.json") + " --suite nope") == 2);
    CHECK(run("verify " + cfg("su2_eval.json") + " --suite algebra") == 0);
    CHECK(run("bogus") == 2);
}

TEST_CASE("calibrate needs the oracle block and writes a sibling file") {
    CHECK(run("calibrate " + cfg("su2_eval.json")) == 2);
    CHECK(slurp(work / "stderr.txt").find("'oracle'") != std::string::npos);

    fs::create_directories(work);
    fs::copy_file(data / "sl2_split.json", work / "split_in.json", fs::copy_options::overwrite_existing);
    const std::string before = slurp(work / "split_in.json");
    REQUIRE(run("calibrate --config " + (work / "split_in.json").string()) == 0);
    CHECK(slurp(work / "split_in.json") == before);
    const std::string cal = slurp(work / "split_in.calibrated.json");
    CHECK(cal.find("\"_provenance\"") != std::string::npos);
    CHECK(cal.find("\"s0\": -1") != std::string::npos);
    CHECK(run("calibrate --config " + (work / "split_in.json").string() + " --out " +
              (work / "split_in.json").string()) == 2);
}

TEST_CASE("oracle and cycle-limit") {
    CHECK(run("oracle " + cfg("su2_oracle.json") + " " + out("oracle.csv")) == 0);
    const std::string o = slurp(work / "oracle.csv");
    CHECK(o.rfind("x1,re_f,im_f,degenerate,mode,s0,version,mc_re,mc_im,mc_stderr,z\n", 0) == 0);
    CHECK(run("oracle " + cfg("sl2_split.json") + " " + out("damped.csv")) == 0);
    CHECK(run("cycle-limit " + cfg("geometry.json") + " --format json " + out("cycle.json")) == 0);
    CHECK(slurp(work / "cycle.json").find("\"slope_imaginary\"") != std::string::npos);
}
