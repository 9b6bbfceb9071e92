#pragma once

#include <string>

#include <Eigen/Dense>

#include "uqd/eig.hpp"
#include "uqd/state.hpp"

namespace uqd {

namespace detail {

// Eigenvalues above this count toward the rank used for purification.
inline constexpr double kRankCutoff = 1e-12;

}  // namespace detail

// Number of eigenvalues above the rank cutoff.
inline Eigen::Index state_rank(const DensityMatrix& rho) {
    const Eigen::VectorXd vals = detail::eigenvalues_hermitian(rho.entries);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < vals.size(); ++i)
        if (vals(i) > detail::kRankCutoff) ++rank;
    return rank;
}

// Pure state on system x ancilla whose system marginal equals rho. The
// ancilla is appended as one party of dimension rank(rho).
inline StateVector purify(const DensityMatrix& rho, const std::string& ancilla_label = "R") {
    const EigResult eig = eig_hermitian(rho.entries);
    Eigen::Index rank = 0;
    while (rank < eig.values.size() && eig.values(rank) > detail::kRankCutoff) ++rank;
    if (rank == 0) throw std::invalid_argument("purify: input has no positive spectrum");

    const Eigen::Index d = rho.entries.rows();
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(d * rank);
    for (Eigen::Index a = 0; a < rank; ++a) {
        const double w = std::sqrt(eig.values(a));
        for (Eigen::Index s = 0; s < d; ++s) amps(s * rank + a) = w * eig.vectors(s, a);
    }
    amps /= amps.norm();
    return StateVector(std::move(amps), rho.layout.appended(ancilla_label, rank));
}

}  // namespace uqd
