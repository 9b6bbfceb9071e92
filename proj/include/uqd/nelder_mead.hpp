#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace uqd {

struct NelderMeadResult {
    double value = 0.0;
    Eigen::VectorXd x;
    int iterations = 0;
    bool converged = false;
};

// Downhill simplex minimization with the standard reflection/expansion/
// contraction/shrink coefficients (1, 2, 0.5, 0.5). Stops when the spread
// f_worst - f_best falls below tol or after max_iters iterations.
template <class F>
NelderMeadResult nelder_mead(F&& f, const Eigen::VectorXd& start, double step, double tol, int max_iters) {
    const Eigen::Index n = start.size();
    if (n == 0) throw std::invalid_argument("nelder_mead: empty parameter vector");

    std::vector<Eigen::VectorXd> xs(static_cast<std::size_t>(n) + 1, start);
    std::vector<double> fs(static_cast<std::size_t>(n) + 1);
    for (Eigen::Index i = 0; i < n; ++i) xs[static_cast<std::size_t>(i) + 1](i) += step;
    for (std::size_t i = 0; i < xs.size(); ++i) fs[i] = f(xs[i]);

    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto sort_order = [&] {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
    };

    NelderMeadResult res;
    for (res.iterations = 0; res.iterations < max_iters; ++res.iterations) {
        sort_order();
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[order.size() - 2];
        if (fs[worst] - fs[best] < tol) {
            res.converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (std::size_t i = 0; i + 1 < order.size(); ++i) centroid += xs[order[i]];
        centroid /= static_cast<double>(n);

        const Eigen::VectorXd reflected = centroid + (centroid - xs[worst]);
        const double fr = f(reflected);
        if (fr < fs[best]) {
            const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - xs[worst]);
            const double fe = f(expanded);
            if (fe < fr) {
                xs[worst] = expanded;
                fs[worst] = fe;
            } else {
                xs[worst] = reflected;
                fs[worst] = fr;
            }
            continue;
        }
        if (fr < fs[second]) {
            xs[worst] = reflected;
            fs[worst] = fr;
            continue;
        }

        bool contracted = false;
        if (fr < fs[worst]) {
            const Eigen::VectorXd outside = centroid + 0.5 * (reflected - centroid);
            const double fc = f(outside);
            if (fc <= fr) {
                xs[worst] = outside;
                fs[worst] = fc;
                contracted = true;
            }
        } else {
            const Eigen::VectorXd inside = centroid + 0.5 * (xs[worst] - centroid);
            const double fc = f(inside);
            if (fc < fs[worst]) {
                xs[worst] = inside;
                fs[worst] = fc;
                contracted = true;
            }
        }
        if (contracted) continue;

        for (std::size_t i = 1; i < order.size(); ++i) {
            xs[order[i]] = xs[best] + 0.5 * (xs[order[i]] - xs[best]);
            fs[order[i]] = f(xs[order[i]]);
        }
    }

    sort_order();
    res.value = fs[order.front()];
    res.x = xs[order.front()];
    return res;
}

}  // namespace uqd
