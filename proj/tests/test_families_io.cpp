#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "uqd/eig.hpp"
#include "uqd/families.hpp"
#include "uqd/format.hpp"
#include "uqd/partial_trace.hpp"
#include "uqd/plot.hpp"
#include "uqd/sweep.hpp"

using namespace uqd;
using Catch::Matchers::WithinAbs;

namespace {

SweepConfig small_sweep(const std::string& quantity, int steps = 3,
                        Family family = Family::ghz3) {
    SweepConfig cfg;
    cfg.family.family = family;
    cfg.quantity = quantity;
    cfg.steps = steps;
    cfg.opt.restarts = 4;
    cfg.seed = 77;
    return cfg;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path("uqd_test_" + name) {
        std::ofstream out(path, std::ios::binary);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("branch states at parameter extremes") {
    const StateVector zero3 = ghz_state(3, 0.0);
    CHECK_THAT(std::abs(zero3.amplitudes(0)), WithinAbs(1.0, 1e-15));
    CHECK(zero3.amplitudes.tail(7).norm() == 0.0);

    const double theta = std::numbers::pi / 3;
    const StateVector g4 = ghz_state(4, theta);
    CHECK_THAT(g4.amplitudes(0).real(), WithinAbs(0.5, 1e-15));
    CHECK_THAT(g4.amplitudes(15).real(), WithinAbs(std::sqrt(3.0) / 2.0, 1e-15));
    CHECK(g4.layout.arity() == 4);

    CHECK_THROWS_AS(ghz_state(3, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(ghz_state(3, std::numbers::pi / 2 + 0.1), std::invalid_argument);
    CHECK_THROWS_AS(ghz_state(1, 0.5), std::invalid_argument);
}

TEST_CASE("two-branch bell mixture family") {
    for (const double theta : {0.0, 0.4, std::numbers::pi / 4, 1.3, std::numbers::pi / 2}) {
        const StateVector psi = bell_mix_state(theta);
        CHECK_THAT(psi.amplitudes.norm(), WithinAbs(1.0, 1e-12));
        const double c = std::cos(theta), s = std::sin(theta);
        CHECK_THAT(psi.amplitudes(0).real(), WithinAbs(c / std::numbers::sqrt2, 1e-15));
        CHECK_THAT(psi.amplitudes(6).real(), WithinAbs(c / std::numbers::sqrt2, 1e-15));
        CHECK_THAT(psi.amplitudes(1).real(), WithinAbs(s / std::numbers::sqrt2, 1e-15));
        CHECK_THAT(psi.amplitudes(2).real(), WithinAbs(s / std::numbers::sqrt2, 1e-15));

        // A's marginal has spectrum (1 +- sin(theta))/2.
        const EigResult r = eig_hermitian(marginal(psi, {"A"}).entries);
        CHECK_THAT(r.values(0), WithinAbs((1.0 + s) / 2.0, 1e-12));
        CHECK_THAT(r.values(1), WithinAbs((1.0 - s) / 2.0, 1e-12));
    }
}

TEST_CASE("family names and spec validation") {
    CHECK(family_from_name("ghz3") == Family::ghz3);
    CHECK(family_from_name("ghz4") == Family::ghz4);
    CHECK(family_from_name("bellmix") == Family::bellmix);
    CHECK(family_from_name("custom") == Family::custom);
    CHECK_THROWS_AS(family_from_name("ghz5"), std::invalid_argument);

    FamilySpec spec;
    spec.family = Family::ghz4;
    spec.theta = 0.3;
    CHECK(build(spec).layout.arity() == 4);

    FamilySpec bad;
    bad.family = Family::custom;
    bad.custom_dims = {2, 2};
    bad.custom_amplitudes = Eigen::VectorXcd::Ones(3);
    CHECK_THROWS_AS(build(bad), std::invalid_argument);
    bad.custom_amplitudes = Eigen::VectorXcd::Ones(4);
    CHECK_THROWS_AS(build(bad), std::invalid_argument);
}

TEST_CASE("custom state text format") {
    std::istringstream in(
        "# three qubits, balanced two-branch state\n"
        "2 2 2\n"
        "0.7071067811865476 0\n"
        "0 0\n0 0\n0 0\n0 0\n0 0\n0 0\n"
        "0 0.7071067811865476\n");
    const FamilySpec spec = parse_custom_state(in);
    REQUIRE(spec.custom_dims == std::vector<Eigen::Index>{2, 2, 2});
    const StateVector psi = build(spec);
    CHECK(psi.layout.labels() == std::vector<std::string>{"A", "B", "C"});
    CHECK_THAT(psi.amplitudes(0).real(), WithinAbs(std::numbers::sqrt2 / 2.0, 1e-12));
    CHECK_THAT(psi.amplitudes(7).imag(), WithinAbs(std::numbers::sqrt2 / 2.0, 1e-12));

    const auto parse = [](const std::string& text) {
        std::istringstream s(text);
        return parse_custom_state(s);
    };
    CHECK_THROWS_AS(parse(""), std::invalid_argument);
    CHECK_THROWS_AS(parse("2 x\n1 0\n0 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("2\n1 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("2\n1 0\n0 0\n0 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("2\n1 0 9\n0 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("0\n"), std::invalid_argument);
    CHECK_THROWS_AS(load_custom_state("no_such_file.txt"), std::invalid_argument);
}

TEST_CASE("sweep grid and determinism") {
    const SweepResult once = run_sweep(small_sweep("fig2b", 5, Family::ghz4));
    const SweepResult again = run_sweep(small_sweep("fig2b", 5, Family::ghz4));
    CHECK(once.csv == again.csv);
    REQUIRE(once.points.size() == 5);
    CHECK_THAT(once.points.front().x, WithinAbs(0.0, 1e-15));
    CHECK_THAT(once.points.back().x, WithinAbs(1.0, 1e-15));
    CHECK_THAT(once.points[2].value, WithinAbs(-0.5, 1e-9));

    SweepConfig threaded = small_sweep("fig2b", 5, Family::ghz4);
    threaded.threads = 3;
    CHECK(run_sweep(threaded).csv == once.csv);
}

TEST_CASE("refining a sweep keeps the shared grid points") {
    SweepConfig coarse = small_sweep("fig2a", 3);
    coarse.opt.restarts = 6;
    SweepConfig fine = coarse;
    fine.steps = 5;
    const SweepResult c = run_sweep(coarse);
    const SweepResult f = run_sweep(fine);
    CHECK(c.points[0].value == f.points[0].value);
    CHECK(c.points[1].value == f.points[2].value);
    CHECK(c.points[2].value == f.points[4].value);
}

TEST_CASE("sweep validation") {
    CHECK_THROWS_AS(run_sweep(small_sweep("fig2b", 1, Family::ghz4)), std::invalid_argument);
    CHECK_THROWS_AS(run_sweep(small_sweep("nope")), std::invalid_argument);
    SweepConfig reversed = small_sweep("fig2b", 3, Family::ghz4);
    reversed.theta_start = 1.0;
    reversed.theta_end = 0.5;
    CHECK_THROWS_AS(run_sweep(reversed), std::invalid_argument);
    // Figure keys bind to fixed party positions, so arity must match.
    CHECK_THROWS_AS(run_sweep(small_sweep("fig2b", 3, Family::ghz3)), std::invalid_argument);
}

TEST_CASE("named quantity keys address explicit parties") {
    SweepConfig cfg = small_sweep("S:A", 3);
    cfg.family.family = Family::ghz3;
    const SweepResult r = run_sweep(cfg);
    CHECK_THAT(r.points[1].value, WithinAbs(1.0, 1e-12));

    SweepConfig cond = small_sweep("condS:BC", 3);
    cond.family.family = Family::bellmix;
    const SweepResult rc = run_sweep(cond);
    CHECK_THAT(rc.points[0].value, WithinAbs(1.0, 1e-9));
    CHECK_THAT(rc.points[2].value, WithinAbs(-1.0, 1e-9));

    SweepConfig conc = small_sweep("C:AB", 3);
    conc.family.family = Family::ghz3;
    CHECK_THAT(run_sweep(conc).points[1].value, WithinAbs(0.0, 1e-12));

    CHECK_THROWS_AS(run_sweep(small_sweep("S:AB", 3)), std::invalid_argument);
    CHECK_THROWS_AS(run_sweep(small_sweep("J:A", 3)), std::invalid_argument);
    CHECK_THROWS_AS(run_sweep(small_sweep("J:AQ", 3)), std::invalid_argument);
}

TEST_CASE("csv format") {
    const SweepResult r = run_sweep(small_sweep("fig2b", 3, Family::ghz4));
    std::istringstream csv(r.csv);
    std::string line;
    REQUIRE(std::getline(csv, line));
    CHECK(line == "two_theta_over_pi,fig2b");
    REQUIRE(std::getline(csv, line));
    CHECK(line == "0.00000000000,0.00000000000");
    REQUIRE(std::getline(csv, line));
    CHECK(line == "0.500000000000,-0.500000000000");
    CHECK(r.csv.find('\r') == std::string::npos);
    CHECK(r.csv.back() == '\n');
}

TEST_CASE("fixed significant-digit formatting") {
    CHECK(format_fixed12(0.0) == "0.00000000000");
    CHECK(format_fixed12(-0.0) == "0.00000000000");
    CHECK(format_fixed12(1.0) == "1.00000000000");
    CHECK(format_fixed12(-0.5) == "-0.500000000000");
    CHECK(format_fixed12(123.456) == "123.456000000");
    CHECK(format_fixed12(0.8112781244591328) == "0.811278124459");
}

TEST_CASE("csv inspection and plotting script") {
    const SweepResult r = run_sweep(small_sweep("fig2b", 3, Family::ghz4));
    const TempFile file("sweep.csv", r.csv);
    const CsvSummary summary = inspect_sweep_csv(file.path);
    CHECK(summary.quantity == "fig2b");
    CHECK(summary.rows == 3);

    const std::string script = gnuplot_script(summary);
    CHECK(script.find("set datafile separator ','") != std::string::npos);
    CHECK(script.find("fig2b") != std::string::npos);
    CHECK(script.find("using 1:2") != std::string::npos);
    CHECK(script.find(file.path) != std::string::npos);

    const TempFile empty("empty.csv", "");
    CHECK_THROWS_AS(inspect_sweep_csv(empty.path), std::invalid_argument);
    const TempFile bad_header("bad_header.csv", "x,y\n0,1\n");
    CHECK_THROWS_AS(inspect_sweep_csv(bad_header.path), std::invalid_argument);
    const TempFile bad_row("bad_row.csv", "two_theta_over_pi,q\n0,abc\n");
    CHECK_THROWS_AS(inspect_sweep_csv(bad_row.path), std::invalid_argument);
    const TempFile no_rows("no_rows.csv", "two_theta_over_pi,q\n");
    CHECK_THROWS_AS(inspect_sweep_csv(no_rows.path), std::invalid_argument);
    CHECK_THROWS_AS(inspect_sweep_csv("missing_file.csv"), std::invalid_argument);
}
