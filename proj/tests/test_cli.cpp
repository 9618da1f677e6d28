#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "betanet/bayesnet.hpp"
#include "betanet/betatable.hpp"
#include "betanet/experiment.hpp"

using namespace betanet;
namespace fs = std::filesystem;

namespace {

const std::string kCli = BETANET_CLI;

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = "'" + kCli + "' " + args + " 2>&1";
    Run r{-1, {}};
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

fs::path scratch() {
    static fs::path d = [] {
        auto p = fs::temp_directory_path() / ("betanet_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return d;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exact ceiling and bad input exit 2") {
    CHECK(run("beta-exact --n-samples 400").status == 2);
    CHECK(run("beta-exact --n-samples 10 --eta 0.9").status == 2);
    CHECK(run("learn --data /nonexistent/counts.txt --no-boost").status == 2);
}

TEST_CASE("parallel output equals serial") {
    auto a = scratch() / "serial.csv", b = scratch() / "par.csv";
    REQUIRE(run("beta-exact --n-samples 40 --parallel 1 -o " + a.string()).status == 0);
    REQUIRE(run("beta-exact --n-samples 40 --parallel 4 -o " + b.string()).status == 0);
    // same keys; masses differ only by summation order
    auto rows = [](const fs::path& f) {
        std::vector<std::array<double, 3>> v;
        std::ifstream is(f);
        std::string line;
        std::getline(is, line);
        while (std::getline(is, line)) {
            std::array<double, 3> r;
            char c1, c2;
            std::istringstream(line) >> r[0] >> c1 >> r[1] >> c2 >> r[2];
            v.push_back(r);
        }
        return v;
    };
    auto ra = rows(a), rb = rows(b);
    REQUIRE(ra.size() == rb.size());
    CHECK(ra.size() > 100);
    double worst = 0;
    for (size_t i = 0; i < ra.size(); ++i) {
        CHECK(ra[i][0] == rb[i][0]);
        worst = std::max(worst, std::abs(ra[i][2] - rb[i][2]));
    }
    CHECK(worst <= 1e-12);
    CHECK(fs::exists(a.string() + ".manifest.json"));
}

TEST_CASE("seeded monte carlo reruns are identical") {
    auto a = scratch() / "mc1.csv", b = scratch() / "mc2.csv", c = scratch() / "mc3.csv";
    std::string base = "beta-mc --n-samples 100 --gamma 0.005 --max-iterations 30000 ";
    run(base + "--seed 5 -o " + a.string());
    run(base + "--seed 5 -o " + b.string());
    run(base + "--seed 6 -o " + c.string());
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) != slurp(c));
}

TEST_CASE("non-convergence exits 3") {
    auto r = run("beta-mc --n-samples 100 --gamma 0.005 --max-iterations 1 -o " + (scratch() / "nc.csv").string());
    CHECK(r.status == 3);
}

TEST_CASE("learn needs a table unless the boost is off") {
    auto data = scratch() / "counts.txt";
    {
        std::ofstream os(data);
        write_counts(os, sample(two_node_network(0.1), 60, 3));
    }
    ::unsetenv("BETA_TABLE_PATH");
    CHECK(run("learn --data " + data.string()).status == 2);
    CHECK(run("learn --data " + data.string() + " --table " + (scratch() / "missing.tbl").string()).status == 2);
    CHECK(run("learn --data " + data.string() + " --no-boost").status == 0);

    TableGrids g;
    g.n_list = {20, 40, 60, 80};
    auto tbl = scratch() / "small.tbl";
    build_table(0.01, g, BuildOptions{}).save(tbl.string());
    auto r = run("learn --data " + data.string() + " --table " + tbl.string());
    CHECK(r.status == 0);
    ::setenv("BETA_TABLE_PATH", tbl.string().c_str(), 1);
    auto r2 = run("learn --data " + data.string());
    ::unsetenv("BETA_TABLE_PATH");
    CHECK(r2.status == 0);
    CHECK(r2.out == r.out);
}

TEST_CASE("bounds output") {
    auto r = run("bounds --lambda 1e-6");
    REQUIRE(r.status == 0);
    CHECK(r.out.rfind("theorem,quantity,value", 0) == 0);
    for (const char* t : {"two-node-chernoff", "two-node-independent-b", "n-node-a", "n-node-sanov"})
        CHECK(r.out.find(t) != std::string::npos);
    // default lambda breaks the Chernoff condition
    CHECK(run("bounds --theorem two-node-chernoff").status == 2);
    CHECK(run("bounds --theorem nope").status == 2);
}

TEST_CASE("iproj output") {
    auto out = scratch() / "ip.csv";
    REQUIRE(run("iproj --eta 0.4 --resolution 200 -o " + out.string()).status == 0);
    auto s = slurp(out);
    CHECK(std::count(s.begin(), s.end(), '\n') >= 200);
}

}  // TEST_SUITE
