#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "drinfeld/cli.hpp"
#include "drinfeld/config.hpp"
#include "drinfeld/error.hpp"

using namespace drinfeld;

namespace {
struct RunResult {
    int code;
    std::string out, err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}
}  // namespace

TEST_CASE("exp-series: Carlitz coefficients through the CLI") {
    RunResult r = run({"exp-series", "--phi", "[0 1; 1]", "--r", "1", "--depth", "3"});
    CHECK(r.code == 0);
    // e_1 = 1/(t^2 - t) = 1/(t + t^2) over F_2
    CHECK(r.out.find("exp-coeff i=1 value=(1)/(0 1 1)") != std::string::npos);
    CHECK(r.out.find("# q=2") != std::string::npos);  // reproducibility header
}

TEST_CASE("components subcommand matches the hecke module") {
    RunResult r = run({"components", "--level", "0 0 1", "--set", "q=3", "--set", "ram=1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("count=3") != std::string::npos);
}

TEST_CASE("act and hecke-cosets records") {
    RunResult act = run({"act", "--phi", "[0 1; 1]", "--r", "1", "--a", "0 0 1"});
    CHECK(act.code == 0);
    CHECK(act.out.find("phi_a=") != std::string::npos);
    RunResult cos = run({"hecke-cosets", "--delta", "0 1; 0 | 0; 1"});
    CHECK(cos.code == 0);
    CHECK(cos.out.find("coset-count n=3 certified=1") != std::string::npos);
}

TEST_CASE("byte-identical output for identical config and seed") {
    std::vector<std::string> args{"u-expand", "--a", "0 1", "--i", "2", "--set", "m_u=6",
                                  "--set", "D=8", "--set", "prec=64"};
    RunResult a = run(args);
    RunResult b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    RunResult j = run({"u-expand", "--a", "0 1", "--i", "2", "--set", "m_u=6", "--set", "D=8",
                       "--set", "prec=64", "--json"});
    CHECK(j.code == 0);
    CHECK(j.out.find("\"record\":\"u-series\"") != std::string::npos);
}

TEST_CASE("exit codes: usage 2, precision failures 3") {
    RunResult usage = run({"no-such-command"});
    CHECK(usage.code == 2);
    RunResult bad_flag = run({"exp-series", "--no-such-flag", "7"});
    CHECK(bad_flag.code == 2);
    // an all-fuzz series has undecidable order: structured error, exit 3
    RunResult prec = run({"order-at-infinity", "--series", "0:4:[2:10:20:[]]"});
    CHECK(prec.code == 3);
    CHECK(prec.err.find("ZeroToPrecision") != std::string::npos);
    // non-invertible input is a hard error, exit 1
    RunResult hard = run({"hecke-cosets", "--delta", "0 1; 0 | 0 1; 0"});
    CHECK(hard.code == 1);
}

TEST_CASE("order-at-infinity over the wire") {
    RunResult r = run({"order-at-infinity", "--series", "-1:4:[1:0:20:[1]; 1:0:20:[1]]"});
    CHECK(r.code == 0);
    CHECK(r.out.find("ord=-1") != std::string::npos);
    CHECK(r.out.find("holomorphic=0") != std::string::npos);
    RunResult c = run({"order-at-infinity", "--a", "0 1", "--i", "2", "--set", "m_u=6", "--set",
                       "D=8", "--set", "prec=64"});
    CHECK(c.code == 0);
    CHECK(c.out.find("cuspidal=1") != std::string::npos);
}

TEST_CASE("block decomposition tables") {
    // full level: one block carrying the canonical analytic operator
    RunResult full = run({"hecke-cosets", "--block-h", "0 1; 0 | 0; 1", "--set", "N=1"});
    CHECK(full.code == 0);
    CHECK(full.out.find("#block 0 -> 0") != std::string::npos);
    CHECK(full.out.find("delta rep=1; 0 | 0; 0 1") != std::string::npos);
    // level t^2 over F_3 with a unit class: a 3-cycle on the components
    RunResult lvl = run({"hecke-cosets", "--block-h", "0 1; 0 | 0; 1", "--block-k",
                         "1 1; 0 | 0; 1", "--set", "q=3", "--set", "N=0 0 1"});
    CHECK(lvl.code == 0);
    CHECK(lvl.out.find("#block 0 -> 2") != std::string::npos);
    CHECK(lvl.out.find("#block 1 -> 0") != std::string::npos);
    CHECK(lvl.out.find("#block 2 -> 1") != std::string::npos);
}

TEST_CASE("remaining subcommands: smoke records") {
    // isogeny: Carlitz divided by the rational kernel {0} (identity isogeny)
    RunResult iso = run({"isogeny", "--phi", "[0 1; 1]", "--r", "1", "--kernel", "0"});
    CHECK(iso.code == 0);
    CHECK(iso.out.find("isogeny e_H=[1]") != std::string::npos);
    // lattice exponential of z = 0
    RunResult lexp = run({"lattice-exp", "--lattice", "1; 0 | 0; 1", "--omega",
                          "2:-3:64:[1]; 2:0:64:[1]", "--z", "2:64:64:[]"});
    CHECK(lexp.code == 0);
    // module-from-lattice at rank 2
    RunResult mfl = run({"module-from-lattice", "--lattice", "1; 0 | 0; 1", "--omega",
                         "2:-3:64:[1]; 2:0:64:[1]", "--a", "0 1"});
    CHECK(mfl.code == 0);
    CHECK(mfl.out.find("psi a=0 1") != std::string::npos);
    // hecke-apply of the constant form
    RunResult happ = run({"hecke-apply", "--delta", "0 1; 0 | 0; 1", "--form", "one", "--k", "0",
                          "--omega", "2:-3:64:[1]; 2:0:64:[1]"});
    CHECK(happ.code == 0);
    // hecke-compose at full level
    RunResult comp = run({"hecke-compose", "--left", "0 1; 0 | 0; 1", "--right", "0 1; 0 | 0; 1",
                          "--level", "1"});
    CHECK(comp.code == 0);
    CHECK(comp.out.find("compose-mass lhs=9 rhs=9") != std::string::npos);
}

TEST_CASE("config files round through RunConfig") {
    RunConfig cfg;
    cfg.set("q", "3");
    cfg.set("prec", "80");
    cfg.set("N", "0 0 1");
    CHECK(cfg.q() == 3);
    CHECK(cfg.prec == 80);
    CHECK_THROWS_AS(cfg.set("bogus", "1"), Error);
    CHECK_THROWS_AS(cfg.set("prec", "-5"), Error);
}

TEST_CASE("config file on disk, with flag overrides on top") {
    std::string path = "test_cli_config.tmp";
    {
        std::ofstream out(path);
        out << "# sample run configuration\n";
        out << "q = 3\n";
        out << "prec = 72\n";
        out << "seed = 5\n";
    }
    RunResult r = run({"components", "--level", "0 0 1", "--config", path, "--set", "prec=80"});
    std::remove(path.c_str());
    CHECK(r.code == 0);
    CHECK(r.out.find("# q=3") != std::string::npos);
    CHECK(r.out.find("prec=80") != std::string::npos);  // override wins
    CHECK(r.out.find("seed=5") != std::string::npos);
    CHECK(r.out.find("count=3") != std::string::npos);
}
