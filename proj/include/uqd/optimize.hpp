#pragma once

#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "uqd/nelder_mead.hpp"
#include "uqd/parallel.hpp"
#include "uqd/povm.hpp"
#include "uqd/rng.hpp"

namespace uqd {

enum class OptSense { minimize, maximize };

struct OptConfig {
    int restarts = 32;
    std::uint64_t seed = 0;
    int max_iters = 500;
    double tol = 1e-10;
    int outcomes = 0;  // POVM outcome count; 0 means the measured dimension
    int threads = 1;
};

struct OptResult {
    double value = 0.0;
    Eigen::VectorXd params;
    int restarts_converged = 0;
    double best_second_gap = 0.0;  // objective spread between the two best restarts
};

namespace detail {

// Multi-start simplex minimization over POVM angles. Restart 0 starts at the
// zero vector (computational basis); restart i > 0 draws its start uniformly
// from [0, 2pi) on the stream derived from (seed, restart tag, i). Each
// restart chains three simplex rounds with shrinking initial steps. The
// winner is the lowest value with ties resolved to the lowest restart index,
// so the result is independent of thread count, and adding restarts can only
// improve it.
template <class Fn>
OptResult multistart_minimize(const Fn& fn, int param_count, const OptConfig& cfg) {
    if (cfg.restarts < 1) throw std::invalid_argument("multistart_minimize: restarts must be positive");

    struct Run {
        double value = 0.0;
        Eigen::VectorXd x;
        bool converged = false;
    };
    std::vector<Run> runs(static_cast<std::size_t>(cfg.restarts));

    parallel_for_index(cfg.restarts, cfg.threads, [&](int i) {
        Eigen::VectorXd x0 = Eigen::VectorXd::Zero(param_count);
        if (i > 0) {
            SplitMix64 rng(derive_stream(cfg.seed, stream_tag::restart, static_cast<std::uint64_t>(i)));
            for (int j = 0; j < param_count; ++j) x0(j) = rng.uniform() * 2.0 * std::numbers::pi;
        }
        Run run;
        bool first = true;
        for (const double step : {0.5, 0.12, 0.03}) {
            const NelderMeadResult r = nelder_mead(fn, x0, step, cfg.tol, cfg.max_iters);
            if (first || r.value < run.value) {
                run.value = r.value;
                run.x = r.x;
                run.converged = r.converged;
                first = false;
            }
            x0 = run.x;
        }
        runs[static_cast<std::size_t>(i)] = std::move(run);
    });

    std::size_t winner = 0;
    for (std::size_t i = 1; i < runs.size(); ++i)
        if (runs[i].value < runs[winner].value) winner = i;

    OptResult res;
    res.value = runs[winner].value;
    res.params = runs[winner].x;
    double runner_up = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < runs.size(); ++i) {
        if (runs[i].converged) ++res.restarts_converged;
        if (i != winner && runs[i].value < runner_up) runner_up = runs[i].value;
    }
    res.best_second_gap = runs.size() > 1 ? runner_up - res.value : 0.0;
    return res;
}

}  // namespace detail

// Extremal localizable entropy gain over rank-1 POVMs on `side`:
// maximize for the classical correlation, minimize for the unlocalizable
// entanglement.
inline OptResult optimize_measurement(const DensityMatrix& rho, const std::string& side, OptSense sense,
                                      const OptConfig& cfg = {}) {
    if (rho.layout.arity() < 2)
        throw std::invalid_argument("optimize_measurement: need at least two parties");
    std::vector<std::string> kept;
    for (const auto& l : rho.layout.labels())
        if (l != side) kept.push_back(l);
    rho.layout.index_of(side);

    const detail::ConditionalScan scan(rho.entries, rho.layout, side, kept);
    const Eigen::Index d = scan.side_dim();
    const int k = cfg.outcomes > 0 ? cfg.outcomes : static_cast<int>(d);
    if (k < d) throw std::invalid_argument("optimize_measurement: outcome count below measured dimension");

    const double sign = sense == OptSense::maximize ? -1.0 : 1.0;
    const auto fn = [&](const Eigen::VectorXd& p) { return sign * scan.entropy_gain(povm_from_params(p, d, k)); };
    OptResult res = detail::multistart_minimize(fn, k * k, cfg);
    if (sense == OptSense::maximize) res.value = -res.value;
    if (res.value < 0.0 && res.value > -1e-9) res.value = 0.0;
    return res;
}

}  // namespace uqd
