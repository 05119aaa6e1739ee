#include "doctest.h"

#include <sstream>

#include "cli.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = stmg::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);)
        if (!l.empty() && l[0] != '#') lines.push_back(l);
    return lines;
}

}  // namespace

TEST_CASE("solve writes one row per iteration") {
    auto r = run({"solve", "--nx", "15", "--nt", "64", "--iters", "3", "--strategy", "original"});
    REQUIRE(r.code == 0);
    auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "iteration,error_LinfL2,cumulative_block_solves,wall_time_s,residual_max,cumulative_work");
    CHECK(lines[1].rfind("0,", 0) == 0);
    CHECK(r.out.find("# seed=") != std::string::npos);
}

TEST_CASE("regime defaults are reported") {
    auto r = run({"solve", "--regime", "large", "--iters", "0"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("# nx=511") != std::string::npos);
}

TEST_CASE("smoothing sweep has one row per sigma") {
    auto r = run({"lfa-smoothing", "--strategy", "new", "--sigma-range", "0.01:1:5"});
    REQUIRE(r.code == 0);
    auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 6);
    CHECK(lines[0].rfind("sigma,omega_used,mu_S", 0) == 0);
}

TEST_CASE("rho sweep and mode map") {
    auto r = run({"lfa-rho", "--sigma-range", "1:1:1", "--resolution", "16"});
    REQUIRE(r.code == 0);
    CHECK(data_lines(r.out).size() == 2);

    auto m = run({"lfa-modes", "--resolution", "16", "--identity"});
    REQUIRE(m.code == 0);
    auto lines = data_lines(m.out);
    CHECK(lines[0] == "theta_t,theta_x,coeff_modulus");
    CHECK(lines.size() == 1 + 16 * 16);
}

TEST_CASE("usage errors exit with status 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"solve", "--nx", "16", "--nt", "64"}).code == 2);
    CHECK(run({"solve", "--omega", "1.5"}).code == 2);
    CHECK(run({"lfa-rho", "--sigma-range", "1:2"}).code == 2);
    CHECK(run({"lfa-modes", "--resolution", "12"}).code == 2);
    auto h = run({"--help"});
    CHECK(h.code == 0);
}
