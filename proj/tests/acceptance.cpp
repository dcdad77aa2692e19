// One line per acceptance criterion; exit status 0 iff all pass.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "core/verify.hpp"

using namespace orbitloc;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool passed = true;
    std::vector<std::string> notes;
    void add(const Check& c) {
        passed = passed && c.passed;
        std::ostringstream os;
        os.precision(4);
        os << (c.passed ? "" : "FAILED ") << c.name << " = " << c.measured << " (<= " << c.threshold << ")";
        if (!c.detail.empty())
            os << " [" << c.detail << "]";
        notes.push_back(os.str());
    }
    void add(bool ok, const std::string& note) {
        passed = passed && ok;
        notes.push_back((ok ? "" : "FAILED ") + note);
    }
};

OrbitSpec compact(int n) {
    return OrbitSpec::make(AlgebraSpec::build(Family::su, n), default_lambda(Family::su, n), MultiplicityMode::compact);
}

OrbitSpec split(int n) {
    return OrbitSpec::make(AlgebraSpec::build(Family::sl_real, n), default_lambda(Family::sl_real, n),
                           MultiplicityMode::maximally_split, -1);
}

template <class F>
Outcome guarded(F&& body) {
    Outcome o;
    try {
        body(o);
    } catch (const std::exception& e) {
        o.add(false, std::string("exception: ") + e.what());
    }
    return o;
}

Outcome criterion1() {
    return guarded([](Outcome& o) {
        for (int n : {2, 3}) {
            const auto t0 = std::chrono::steady_clock::now();
            o.add(check_mc_agreement(compact(n), kSeed, 1000000, 20, 2));
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            char buf[64];
            std::snprintf(buf, sizeof buf, "su(%d) runtime %.1f s (<= 300 s)", n, secs);
            o.add(secs <= 300.0, buf);
        }
    });
}

Outcome criterion2() {
    return guarded([](Outcome& o) {
        o.add(check_casimir(compact(2), kSeed, 100, 1e-3, 1e-4));
        o.add(check_casimir(compact(3), kSeed, 100, 1e-3, 1e-4));
        o.add(check_casimir(split(2), kSeed, 100, 1e-3, 1e-4));
    });
}

Outcome criterion3() {
    return guarded([](Outcome& o) {
        for (int n : {2, 3}) {
            o.add(check_ad_invariance(compact(n), kSeed, 50, 1e-9));
            o.add(check_ad_invariance(split(n), kSeed, 50, 1e-9));
        }
    });
}

Outcome criterion4() {
    return guarded([](Outcome& o) {
        o.add(check_elliptic_vanishing(split(2), kSeed, 100));
        o.add(check_split_reality(split(2), kSeed, 100, 1e-12));
    });
}

Outcome criterion5() {
    return guarded([](Outcome& o) {
        o.add(check_compact_multiplicities(compact(2)));
        o.add(check_compact_multiplicities(compact(3)));
        o.add(check_compact_limit(compact(2), 20, 1e-6));
    });
}

Outcome criterion6() {
    return guarded([](Outcome& o) {
        CMatrix g(2, 2);
        g << 1.0, Complex(0, 0.5), 0.0, 1.0;
        CVector ell(2);
        ell << Complex(0, 0.5), Complex(0, -0.5);
        const Report r = geometry_checks(Sl2Model(g), ell, kSeed, 10000);
        for (const auto& c : r.checks)
            o.add(c);
    });
}

int run_cli(const std::string& args, const fs::path& out) {
    const std::string cmd = std::string(ORBITLOC_CLI) + " " + args + " --out " + out.string() + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Outcome criterion7() {
    return guarded([](Outcome& o) {
        const fs::path data = TEST_DATA_DIR;
        const fs::path work = TEST_WORK_DIR;
        fs::create_directories(work);
        const std::string seed = " --seed " + std::to_string(kSeed);
        const std::vector<std::pair<std::string, std::string>> runs{
            {"eval", "eval --config " + (data / "su3_eval.json").string()},
            {"eval-csv", "eval --config " + (data / "sl2_split.json").string() + " --format csv"},
            {"oracle", "oracle --config " + (data / "su2_oracle.json").string() + seed},
            {"oracle-json", "oracle --config " + (data / "su2_oracle.json").string() + seed + " --format json"},
            {"damped", "oracle --config " + (data / "sl2_split.json").string() + seed},
            {"calibrate", "calibrate --config " + (data / "su2_oracle.json").string() + seed},
            {"verify", "verify --config " + (data / "su2_oracle.json").string() + seed + " --suite localize --format json"},
            {"cycle-limit", "cycle-limit --config " + (data / "geometry.json").string() + seed + " --format json"},
        };
        for (const auto& [name, args] : runs) {
            const fs::path a = work / (name + ".first"), b = work / (name + ".second");
            const int ca = run_cli(args, a), cb = run_cli(args, b);
            const std::string sa = slurp(a), sb = slurp(b);
            o.add(ca == cb && !sa.empty() && sa == sb,
                  name + ": exit " + std::to_string(ca) + "/" + std::to_string(cb) + ", " + std::to_string(sa.size()) +
                      " bytes, " + (sa == sb ? "identical" : "different"));
        }
        // the worker cap must not change results
        const OrbitSpec s = compact(3);
        PhiloxStream rng(kSeed, 99);
        const AlgebraElement x = random_regular_element(rng, *s.algebra, 1.0, 0.05);
        setenv("ORBIT_LOCALIZE_THREADS", "1", 1);
        const McEstimate one = mc_raw_average(s, x, kSeed, 100000);
        setenv("ORBIT_LOCALIZE_THREADS", "4", 1);
        const McEstimate four = mc_raw_average(s, x, kSeed, 100000);
        unsetenv("ORBIT_LOCALIZE_THREADS");
        o.add(one.mean == four.mean && one.std_error == four.std_error, "Monte Carlo bitwise equal under 1 and 4 workers");
    });
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, Outcome (*)()>> criteria{
        {"1 compact oracle agreement", criterion1}, {"2 eigendistribution property", criterion2},
        {"3 Ad-invariance", criterion3},            {"4 split vanishing and reality", criterion4},
        {"5 compact example consistency", criterion5}, {"6 geometry suite", criterion6},
        {"7 determinism", criterion7},
    };
    bool all = true;
    for (const auto& [name, fn] : criteria) {
        const Outcome o = fn();
        all = all && o.passed;
        std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << name << "\n";
        for (const auto& n : o.notes)
            std::cout << "    " << n << "\n";
        std::cout.flush();
    }
    return all ? 0 : 1;
}
