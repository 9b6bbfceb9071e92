#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "uqd/entropy.hpp"
#include "uqd/optimize.hpp"
#include "uqd/partial_trace.hpp"
#include "uqd/povm.hpp"
#include "uqd/purify.hpp"
#include "uqd/state.hpp"

namespace uqd {

namespace detail {

inline std::string partner_label(const DensityMatrix& rho, const std::string& side, const char* who) {
    if (rho.layout.arity() != 2) throw std::invalid_argument(std::string(who) + ": bipartite state required");
    rho.layout.index_of(side);
    for (const auto& l : rho.layout.labels())
        if (l != side) return l;
    throw std::invalid_argument(std::string(who) + ": measured side is the only party");
}

}  // namespace detail

// J<-: maximal localizable entropy gain on the unmeasured party.
inline Bits classical_correlation_J(const DensityMatrix& rho, const std::string& measured_side,
                                    const OptConfig& cfg = {}) {
    detail::partner_label(rho, measured_side, "classical_correlation_J");
    return optimize_measurement(rho, measured_side, OptSense::maximize, cfg).value;
}

// E_u<-: minimal localizable entropy gain on the unmeasured party.
inline Bits unlocalizable_entanglement_Eu(const DensityMatrix& rho, const std::string& measured_side,
                                          const OptConfig& cfg = {}) {
    detail::partner_label(rho, measured_side, "unlocalizable_entanglement_Eu");
    return optimize_measurement(rho, measured_side, OptSense::minimize, cfg).value;
}

// D<- = I - J<-.
inline Bits quantum_discord_D(const DensityMatrix& rho, const std::string& measured_side,
                              const OptConfig& cfg = {}) {
    const std::string partner = detail::partner_label(rho, measured_side, "quantum_discord_D");
    return mutual_information(rho, {partner}, {measured_side}) - classical_correlation_J(rho, measured_side, cfg);
}

// delta_u<- = I - E_u<-.
inline Bits one_way_discord_delta(const DensityMatrix& rho, const std::string& measured_side,
                                  const OptConfig& cfg = {}) {
    const std::string partner = detail::partner_label(rho, measured_side, "one_way_discord_delta");
    return mutual_information(rho, {partner}, {measured_side}) -
           unlocalizable_entanglement_Eu(rho, measured_side, cfg);
}

namespace detail {

inline void require_two_qubits(const DensityMatrix& rho, const char* who) {
    if (rho.layout.arity() != 2 || rho.layout.dim(0) != 2 || rho.layout.dim(1) != 2)
        throw std::invalid_argument(std::string(who) + ": two-qubit state required");
}

// Descending square roots of the eigenvalues of sqrt(rho) rho~ sqrt(rho),
// where rho~ = Y conj(rho) Y and Y = sigma_y x sigma_y is the antidiagonal
// flip (-1, 1, 1, -1). With rho = V V^dagger these equal the singular values
// of V^T Y V, which avoids squaring the spectrum and keeps full precision.
inline Eigen::Vector4d wootters_lambdas(const DensityMatrix& rho) {
    static constexpr double sign[4] = {-1.0, 1.0, 1.0, -1.0};
    const EigResult eig = eig_hermitian(rho.entries);
    Eigen::Index rank = 0;
    while (rank < 4 && eig.values(rank) > kDegenerateProb) ++rank;
    Eigen::MatrixXcd v(4, std::max<Eigen::Index>(rank, 1));
    for (Eigen::Index a = 0; a < v.cols(); ++a)
        v.col(a) = eig.vectors.col(a) * std::sqrt(std::max(eig.values(a), 0.0));
    Eigen::MatrixXcd yv(4, v.cols());
    for (Eigen::Index i = 0; i < 4; ++i) yv.row(i) = sign[i] * v.row(3 - i);
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(v.transpose() * yv).singularValues();
    Eigen::Vector4d lambdas = Eigen::Vector4d::Zero();
    for (Eigen::Index i = 0; i < sv.size(); ++i) lambdas(i) = sv(i);
    return lambdas;  // descending
}

}  // namespace detail

// Wootters concurrence of a two-qubit state.
inline double concurrence(const DensityMatrix& rho) {
    detail::require_two_qubits(rho, "concurrence");
    const Eigen::Vector4d l = detail::wootters_lambdas(rho);
    return std::max(0.0, l(0) - l(1) - l(2) - l(3));
}

// Closed-form two-qubit entanglement of formation.
inline Bits eof_wootters(const DensityMatrix& rho) {
    detail::require_two_qubits(rho, "eof_wootters");
    const double c = std::min(concurrence(rho), 1.0);
    return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

// Closed-form two-qubit concurrence of assistance.
inline double concurrence_of_assistance(const DensityMatrix& rho) {
    detail::require_two_qubits(rho, "concurrence_of_assistance");
    return detail::wootters_lambdas(rho).sum();
}

namespace detail {

// Extremal average over pure-state decompositions of rho, realized as a
// measurement optimization on the purifying ancilla. per_component maps the
// normalized first-party marginal of one pure component to its score.
template <class PerComponent>
inline double optimize_decomposition(const DensityMatrix& rho, OptSense sense, const OptConfig& cfg,
                                     const PerComponent& per_component, const char* who) {
    if (rho.layout.arity() != 2) throw std::invalid_argument(std::string(who) + ": bipartite state required");
    const Eigen::Index rank = state_rank(rho);
    const StateVector psi = purify(rho);
    const std::string anc = psi.layout.labels().back();
    const std::string target = rho.layout.labels().front();

    const DensityMatrix full = density(psi);
    const ConditionalScan scan(full.entries, full.layout, anc, {target});
    if (rank == 1) return per_component(scan.prior_target_state());

    const int k = cfg.outcomes > 0 ? cfg.outcomes : static_cast<int>(rank * rank);
    if (k < rank) throw std::invalid_argument(std::string(who) + ": outcome count below state rank");

    const double sign = sense == OptSense::maximize ? -1.0 : 1.0;
    const auto fn = [&](const Eigen::VectorXd& p) {
        double acc = 0.0;
        scan.scan(povm_from_params(p, rank, k),
                  [&](double prob, const Eigen::MatrixXcd& tau) { acc += prob * per_component(tau); });
        return sign * acc;
    };
    const OptResult res = multistart_minimize(fn, k * k, cfg);
    return sense == OptSense::maximize ? -res.value : res.value;
}

}  // namespace detail

// Entanglement of assistance: maximal average component entanglement entropy
// over pure-state decompositions.
inline Bits eoa_numeric(const DensityMatrix& rho, const OptConfig& cfg = {}) {
    return detail::optimize_decomposition(
        rho, OptSense::maximize, cfg, [](const Eigen::MatrixXcd& tau) { return detail::entropy_raw(tau); },
        "eoa_numeric");
}

// Entanglement of formation by brute-force decomposition minimization;
// numeric oracle for eof_wootters on two-qubit inputs.
inline Bits eof_numeric_oracle(const DensityMatrix& rho, const OptConfig& cfg = {}) {
    double v = detail::optimize_decomposition(
        rho, OptSense::minimize, cfg, [](const Eigen::MatrixXcd& tau) { return detail::entropy_raw(tau); },
        "eof_numeric_oracle");
    if (v < 0.0 && v > -1e-9) v = 0.0;
    return v;
}

// Maximal average component concurrence over decompositions of a two-qubit
// state; numeric cross-check for concurrence_of_assistance.
inline double assistance_concurrence_numeric(const DensityMatrix& rho, const OptConfig& cfg = {}) {
    detail::require_two_qubits(rho, "assistance_concurrence_numeric");
    return detail::optimize_decomposition(
        rho, OptSense::maximize, cfg,
        [](const Eigen::MatrixXcd& tau) {
            // Pure two-qubit component: C^2 = 2(1 - purity of a marginal).
            const double purity = (tau * tau).trace().real();
            return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
        },
        "assistance_concurrence_numeric");
}

struct Decomposition {
    std::vector<double> weights;
    std::vector<StateVector> components;
};

// Pure-state decomposition of rho induced by measuring its purifying
// ancilla with the given rank-1 POVM.
inline Decomposition decomposition_from_measurement(const DensityMatrix& rho, const Povm& purifier_povm) {
    const StateVector psi = purify(rho);
    const Eigen::Index rank = psi.layout.dims().back();
    if (purifier_povm.dim != rank)
        throw std::invalid_argument("decomposition_from_measurement: POVM dimension must equal the state rank");
    if (purifier_povm.completeness_defect() > kCompletenessTol)
        throw std::invalid_argument("decomposition_from_measurement: POVM incomplete");

    const Eigen::Index d = rho.entries.rows();
    Decomposition dec;
    double total = 0.0;
    for (const auto& m : purifier_povm.vectors) {
        Eigen::VectorXcd comp = Eigen::VectorXcd::Zero(d);
        for (Eigen::Index s = 0; s < d; ++s)
            for (Eigen::Index a = 0; a < rank; ++a) comp(s) += std::conj(m(a)) * psi.amplitudes(s * rank + a);
        const double p = comp.squaredNorm();
        total += p;
        if (p <= kDegenerateProb) continue;
        comp /= std::sqrt(p);
        dec.weights.push_back(p);
        dec.components.emplace_back(std::move(comp), rho.layout);
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::runtime_error("decomposition_from_measurement: weights do not sum to 1");

    Eigen::MatrixXcd mix = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t x = 0; x < dec.weights.size(); ++x)
        mix += dec.weights[x] * (dec.components[x].amplitudes * dec.components[x].amplitudes.adjoint());
    if ((mix - rho.entries).cwiseAbs().maxCoeff() > 1e-8)
        throw std::runtime_error("decomposition_from_measurement: mixture does not reproduce the state");
    return dec;
}

}  // namespace uqd
