#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "uqd/entropy.hpp"
#include "uqd/families.hpp"
#include "uqd/polygamy.hpp"
#include "uqd/rng.hpp"

using namespace uqd;
using Catch::Matchers::WithinAbs;

namespace {

OptConfig quick(int restarts = 8, std::uint64_t seed = 19) {
    OptConfig cfg;
    cfg.restarts = restarts;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("tripartite deficits on reference states") {
    const OptConfig cfg = quick(12);
    const StateVector balanced = ghz_state(3, std::numbers::pi / 4);
    CHECK_THAT(deficit_left_tri(balanced, cfg), WithinAbs(-1.0, 1e-3));
    CHECK_THAT(deficit_right_tri(balanced, cfg), WithinAbs(-1.0, 1e-3));

    const StateVector product = ghz_state(3, 0.0);
    CHECK_THAT(deficit_left_tri(product, cfg), WithinAbs(0.0, 1e-6));
    CHECK_THAT(deficit_right_tri(product, cfg), WithinAbs(0.0, 1e-6));

    const double theta = 0.6;
    const double expected = -binary_entropy(std::cos(theta) * std::cos(theta));
    CHECK_THAT(deficit_left_tri(ghz_state(3, theta), cfg), WithinAbs(expected, 1e-3));
}

TEST_CASE("deficits reject wrong arity") {
    CHECK_THROWS_AS(deficit_left_tri(ghz_state(4, 0.5)), std::invalid_argument);
    CHECK_THROWS_AS(deficit_right_tri(ghz_state(4, 0.5)), std::invalid_argument);
    CHECK_THROWS_AS(deficit_quad(ghz_state(3, 0.5), DeficitDirection::left), std::invalid_argument);
    CHECK_THROWS_AS(identity_report(ghz_state(4, 0.5)), std::invalid_argument);
    CHECK_THROWS_AS(quad_bound_report(ghz_state(3, 0.5)), std::invalid_argument);
}

TEST_CASE("identity report covers the exchange relations") {
    const OptConfig cfg = quick(16, 3);
    for (const StateVector& psi : {ghz_state(3, 0.7), bell_mix_state(std::numbers::pi / 4),
                                   haar_random_pure(SubsystemLayout::qubits("ABC"), 404)}) {
        const CorrelationReport rep = identity_report(psi, cfg);
        CHECK(rep.values.size() == 31);
        CHECK(rep.residuals.size() == 13);
        INFO("state with S(A)=" << rep.values.front().second);
        for (const auto& [name, r] : rep.residuals) {
            INFO(name << " = " << r);
            CHECK(r <= 1e-3);
        }
    }
}

TEST_CASE("identity report values match closed forms on a branch state") {
    const double theta = 0.7;
    const double c2 = std::cos(theta) * std::cos(theta);
    const CorrelationReport rep = identity_report(ghz_state(3, theta), quick(12, 5));
    const auto value = [&](const std::string& name) {
        for (const auto& [n, v] : rep.values)
            if (n == name) return v;
        throw std::runtime_error("missing value " + name);
    };
    CHECK_THAT(value("S(A)"), WithinAbs(binary_entropy(c2), 1e-9));
    CHECK_THAT(value("J(A<-B)"), WithinAbs(binary_entropy(c2), 1e-6));
    CHECK_THAT(value("Eu(A<-B)"), WithinAbs(0.0, 1e-6));
    CHECK_THAT(value("D(A<-B)"), WithinAbs(0.0, 1e-6));
    CHECK_THAT(value("du(A<-B)"), WithinAbs(binary_entropy(c2), 1e-6));
    CHECK_THAT(value("Ea(A,C)"), WithinAbs(binary_entropy(c2), 1e-3));
    CHECK_THAT(value("Ef(A,C)"), WithinAbs(0.0, 1e-9));
    CHECK_THAT(value("defL(def)"), WithinAbs(-binary_entropy(c2), 1e-3));
}

TEST_CASE("quad deficits on reference states") {
    const OptConfig cfg = quick(12, 7);
    const StateVector balanced = ghz_state(4, std::numbers::pi / 4);
    CHECK(deficit_quad(balanced, DeficitDirection::left, cfg) <= -0.5 + 1e-3);
    CHECK(deficit_quad(balanced, DeficitDirection::right, cfg) <= -0.5 + 1e-3);

    CHECK_THAT(deficit_quad(ghz_state(4, 0.0), DeficitDirection::left, cfg), WithinAbs(0.0, 1e-6));
    CHECK_THAT(deficit_quad(ghz_state(4, 0.0), DeficitDirection::right, cfg), WithinAbs(0.0, 1e-6));
}

TEST_CASE("quad bound closed forms") {
    CHECK_THAT(quad_upper_bound(ghz_state(4, std::numbers::pi / 4)), WithinAbs(-0.5, 1e-12));
    const double theta = 1.0;
    CHECK_THAT(quad_upper_bound(ghz_state(4, theta)),
               WithinAbs(-binary_entropy(std::cos(theta) * std::cos(theta)) / 2.0, 1e-12));
    CHECK_THAT(quad_upper_bound(ghz_state(4, 0.0)), WithinAbs(0.0, 1e-12));
}

TEST_CASE("quad bound report on random states") {
    const OptConfig cfg = quick(12, 9);
    for (int i = 0; i < 3; ++i) {
        const StateVector psi = haar_random_pure(SubsystemLayout::qubits("ABCD"), derive_stream(40, 6, i));
        const CorrelationReport rep = quad_bound_report(psi, cfg);
        REQUIRE(rep.residuals.size() == 2);
        for (const auto& [name, r] : rep.residuals) {
            INFO(name << " = " << r);
            CHECK(r <= 1e-3);
        }
    }
}
