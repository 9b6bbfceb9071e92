#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "uqd/eig.hpp"
#include "uqd/partial_trace.hpp"
#include "uqd/state.hpp"

namespace uqd {

// All entropic quantities are in bits (log base 2).
using Bits = double;

inline Bits entropy_of_spectrum(const Eigen::VectorXd& eigenvalues) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        const double p = eigenvalues(i);
        if (p > kDegenerateProb) s -= p * std::log2(p);
    }
    return s;
}

namespace detail {

inline Bits entropy_raw(const Eigen::MatrixXcd& rho) {
    return entropy_of_spectrum(eigenvalues_hermitian(rho));
}

}  // namespace detail

inline Bits von_neumann_entropy(const DensityMatrix& rho) {
    return detail::entropy_raw(rho.entries);
}

inline Bits binary_entropy(double p) {
    if (p < -kDegenerateProb || p > 1.0 + kDegenerateProb)
        throw std::invalid_argument("binary_entropy: probability outside [0,1]");
    double s = 0.0;
    if (p > kDegenerateProb) s -= p * std::log2(p);
    if (1.0 - p > kDegenerateProb) s -= (1.0 - p) * std::log2(1.0 - p);
    return s;
}

// S(target | given) = S(rho_{target u given}) - S(rho_given). May be negative.
inline Bits conditional_entropy(const DensityMatrix& rho, const std::string& target,
                                const std::vector<std::string>& given) {
    for (const auto& g : given)
        if (g == target) throw std::invalid_argument("conditional_entropy: target appears in conditioning set");
    std::vector<std::string> joint = given;
    joint.push_back(target);
    const auto joint_pos = rho.layout.positions_of(joint);
    const auto given_pos = rho.layout.positions_of(given);
    const Bits s_joint = detail::entropy_raw(detail::partial_trace_raw(rho.entries, rho.layout, joint_pos));
    const Bits s_given = detail::entropy_raw(detail::partial_trace_raw(rho.entries, rho.layout, given_pos));
    return s_joint - s_given;
}

// I(A:B) = S(A) + S(B) - S(AB); the two parts must partition rho's layout.
inline Bits mutual_information(const DensityMatrix& rho, const std::vector<std::string>& part_a,
                               const std::vector<std::string>& part_b) {
    const auto pos_a = rho.layout.positions_of(part_a);
    const auto pos_b = rho.layout.positions_of(part_b);
    for (int p : pos_a)
        if (std::find(pos_b.begin(), pos_b.end(), p) != pos_b.end())
            throw std::invalid_argument("mutual_information: parts overlap");
    if (static_cast<int>(pos_a.size() + pos_b.size()) != rho.layout.arity())
        throw std::invalid_argument("mutual_information: parts must cover the layout");
    const Bits sa = detail::entropy_raw(detail::partial_trace_raw(rho.entries, rho.layout, pos_a));
    const Bits sb = detail::entropy_raw(detail::partial_trace_raw(rho.entries, rho.layout, pos_b));
    const Bits sab = detail::entropy_raw(rho.entries);
    return sa + sb - sab;
}

// I(A:(BC)) - I(A:B) - I(A:C) in the symmetric closed form
// -S_A - S_B - S_C + S_AB + S_AC + S_BC - S_ABC.
inline Bits interaction_information(const DensityMatrix& rho_abc) {
    if (rho_abc.layout.arity() != 3)
        throw std::invalid_argument("interaction_information: expected exactly three parties");
    const auto& m = rho_abc.entries;
    const auto& lay = rho_abc.layout;
    auto s = [&](std::vector<int> pos) { return detail::entropy_raw(detail::partial_trace_raw(m, lay, pos)); };
    return -s({0}) - s({1}) - s({2}) + s({0, 1}) + s({0, 2}) + s({1, 2}) - detail::entropy_raw(m);
}

}  // namespace uqd
