#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "uqd/correlations.hpp"
#include "uqd/families.hpp"
#include "uqd/format.hpp"
#include "uqd/parallel.hpp"
#include "uqd/polygamy.hpp"
#include "uqd/rng.hpp"

namespace uqd {

struct SweepConfig {
    FamilySpec family;
    std::string quantity;
    double theta_start = 0.0;
    double theta_end = std::numbers::pi / 2;
    int steps = 101;
    OptConfig opt;  // per-point seeds and threads are managed by the sweep
    std::uint64_t seed = 0;
    int threads = 1;
};

struct SweepPoint {
    double x = 0.0;  // 2 theta / pi
    double value = 0.0;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    std::string csv;
};

// Maps a quantity key to its evaluator. Figure keys are fixed formulas over
// positional parties; named keys follow "<name>:<party letters>" where the
// letter order is (kept, measured) for the one-sided quantities.
inline std::function<Bits(const StateVector&, const OptConfig&)> quantity_evaluator(const std::string& key) {
    using Fn = std::function<Bits(const StateVector&, const OptConfig&)>;

    const auto label = [](const StateVector& psi, int i) -> const std::string& {
        if (psi.layout.arity() <= i)
            throw std::invalid_argument("quantity requires at least " + std::to_string(i + 1) + " parties");
        return psi.layout.labels()[static_cast<std::size_t>(i)];
    };

    if (key == "fig1a")  // assistance-formation gap of the outer-party reduction
        return Fn{[label](const StateVector& psi, const OptConfig& o) {
            const DensityMatrix rho = marginal(psi, {label(psi, 0), label(psi, 2)});
            return detail::policy_eoa(rho, o).value - eof_wootters(rho);
        }};
    if (key == "fig1b")  // conditional entropy S(B|C)
        return Fn{[label](const StateVector& psi, const OptConfig&) {
            const DensityMatrix rho = marginal(psi, {label(psi, 1), label(psi, 2)});
            return von_neumann_entropy(rho) - von_neumann_entropy(partial_trace(rho, {label(psi, 2)}));
        }};
    if (key == "fig2a")  // right tripartite deficit via I(BC) - 2 Ea(BC)
        return Fn{[label](const StateVector& psi, const OptConfig& o) {
            const DensityMatrix rho = marginal(psi, {label(psi, 1), label(psi, 2)});
            return mutual_information(rho, {label(psi, 1)}, {label(psi, 2)}) - 2.0 * detail::policy_eoa(rho, o).value;
        }};
    if (key == "fig2b")  // half interaction information of the first three parties
        return Fn{[](const StateVector& psi, const OptConfig&) { return quad_upper_bound(psi); }};

    const auto colon = key.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= key.size())
        throw std::invalid_argument("unknown quantity key: " + key);
    const std::string name = key.substr(0, colon);
    std::vector<std::string> parties;
    for (const char ch : key.substr(colon + 1)) parties.emplace_back(1, ch);

    const auto want = [&](std::size_t n) {
        if (parties.size() != n)
            throw std::invalid_argument("quantity " + name + " takes " + std::to_string(n) + " parties");
    };

    if (name == "S") {
        want(1);
        return Fn{[parties](const StateVector& psi, const OptConfig&) {
            return von_neumann_entropy(marginal(psi, {parties[0]}));
        }};
    }
    if (name == "I") {
        want(2);
        return Fn{[parties](const StateVector& psi, const OptConfig&) {
            return mutual_information(marginal(psi, {parties[0], parties[1]}), {parties[0]}, {parties[1]});
        }};
    }
    if (name == "condS") {
        want(2);
        return Fn{[parties](const StateVector& psi, const OptConfig&) {
            const DensityMatrix rho = marginal(psi, {parties[0], parties[1]});
            return von_neumann_entropy(rho) - von_neumann_entropy(partial_trace(rho, {parties[1]}));
        }};
    }
    if (name == "J" || name == "Eu" || name == "D" || name == "delta_u" || name == "delta_u_minus_D") {
        want(2);
        return Fn{[name, parties](const StateVector& psi, const OptConfig& o) {
            const DensityMatrix rho = marginal(psi, {parties[0], parties[1]});
            const std::string& side = parties[1];
            if (name == "J") return detail::policy_opt(rho, side, OptSense::maximize, o).value;
            if (name == "Eu") return detail::policy_opt(rho, side, OptSense::minimize, o).value;
            const Bits mi = mutual_information(rho, {parties[0]}, {side});
            if (name == "D") return mi - detail::policy_opt(rho, side, OptSense::maximize, o).value;
            if (name == "delta_u") return mi - detail::policy_opt(rho, side, OptSense::minimize, o).value;
            return detail::policy_opt(rho, side, OptSense::maximize, o).value -
                   detail::policy_opt(rho, side, OptSense::minimize, o).value;
        }};
    }
    if (name == "Ef" || name == "Ea" || name == "Ea_minus_Ef" || name == "C" || name == "Ca") {
        want(2);
        return Fn{[name, parties](const StateVector& psi, const OptConfig& o) {
            const DensityMatrix rho = marginal(psi, {parties[0], parties[1]});
            if (name == "Ef") return eof_wootters(rho);
            if (name == "Ea") return detail::policy_eoa(rho, o).value;
            if (name == "C") return concurrence(rho);
            if (name == "Ca") return concurrence_of_assistance(rho);
            return detail::policy_eoa(rho, o).value - eof_wootters(rho);
        }};
    }
    throw std::invalid_argument("unknown quantity key: " + key);
}

inline SweepResult run_sweep(const SweepConfig& cfg) {
    if (cfg.steps < 2) throw std::invalid_argument("sweep: steps must be at least 2");
    if (!(cfg.theta_start >= -1e-12 && cfg.theta_end <= std::numbers::pi / 2 + 1e-12 &&
          cfg.theta_start <= cfg.theta_end))
        throw std::invalid_argument("sweep: theta range must be ordered and lie in [0, pi/2]");
    const auto eval = quantity_evaluator(cfg.quantity);

    SweepResult res;
    res.points.resize(static_cast<std::size_t>(cfg.steps));
    parallel_for_index(cfg.steps, cfg.threads, [&](int i) {
        const double t = static_cast<double>(i) / static_cast<double>(cfg.steps - 1);
        const double theta = cfg.theta_start + (cfg.theta_end - cfg.theta_start) * t;
        FamilySpec fs = cfg.family;
        fs.theta = theta;
        const StateVector psi = build(fs);
        OptConfig o = cfg.opt;
        // Seed from the theta bit pattern: values at shared grid points do
        // not depend on the step count.
        o.seed = derive_stream(cfg.seed, stream_tag::sweep_point, std::bit_cast<std::uint64_t>(theta));
        o.threads = 1;
        res.points[static_cast<std::size_t>(i)] = {2.0 * theta / std::numbers::pi, eval(psi, o)};
    });

    res.csv = "two_theta_over_pi," + cfg.quantity + "\n";
    for (const auto& p : res.points) res.csv += format_fixed12(p.x) + "," + format_fixed12(p.value) + "\n";
    return res;
}

}  // namespace uqd
