#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "uqd/entropy.hpp"
#include "uqd/partial_trace.hpp"
#include "uqd/state.hpp"

namespace uqd {

inline constexpr double kCompletenessTol = 1e-9;

// Rank-1 POVM on one subsystem: elements |m_k><m_k| with sum_k = identity.
struct Povm {
    std::vector<Eigen::VectorXcd> vectors;  // unnormalized |m_k>, each of size dim
    Eigen::Index dim = 0;

    int outcomes() const { return static_cast<int>(vectors.size()); }

    Eigen::MatrixXcd element(int k) const {
        const auto& m = vectors.at(static_cast<std::size_t>(k));
        return m * m.adjoint();
    }

    double completeness_defect() const {
        Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
        for (const auto& m : vectors) sum += m * m.adjoint();
        return (sum - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
    }

    static Povm from_vectors(std::vector<Eigen::VectorXcd> vecs) {
        if (vecs.empty()) throw std::invalid_argument("Povm: no outcomes");
        Povm p;
        p.dim = vecs.front().size();
        for (const auto& v : vecs)
            if (v.size() != p.dim) throw std::invalid_argument("Povm: inconsistent vector dimensions");
        p.vectors = std::move(vecs);
        if (p.completeness_defect() > kCompletenessTol)
            throw std::invalid_argument("Povm: elements do not sum to identity");
        return p;
    }

    static Povm computational(Eigen::Index d) {
        std::vector<Eigen::VectorXcd> vecs;
        for (Eigen::Index k = 0; k < d; ++k) {
            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
            v(k) = 1.0;
            vecs.push_back(std::move(v));
        }
        return from_vectors(std::move(vecs));
    }
};

// K x K unitary from K row phases followed by one Givens rotation with phase
// per index pair: K + 2*K(K-1)/2 = K^2 real angles. Zero angles give the
// identity.
inline Eigen::MatrixXcd unitary_from_angles(const Eigen::VectorXd& params, Eigen::Index k) {
    if (params.size() != k * k)
        throw std::invalid_argument("unitary_from_angles: expected K^2 parameters");
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(k, k);
    Eigen::Index t = k;
    for (Eigen::Index i = 0; i + 1 < k; ++i)
        for (Eigen::Index j = i + 1; j < k; ++j) {
            const double theta = params(t++);
            const double phi = params(t++);
            const std::complex<double> c = std::cos(theta);
            const std::complex<double> s =
                std::sin(theta) * std::complex<double>(std::cos(phi), std::sin(phi));
            // u <- u * G(i,j): mixes columns i and j.
            for (Eigen::Index r = 0; r < k; ++r) {
                const std::complex<double> ui = u(r, i);
                const std::complex<double> uj = u(r, j);
                u(r, i) = ui * c + uj * std::conj(s);
                u(r, j) = -ui * s + uj * c;
            }
        }
    for (Eigen::Index r = 0; r < k; ++r) {
        const std::complex<double> ph(std::cos(params(r)), std::sin(params(r)));
        u.row(r) *= ph;
    }
    return u;
}

// Columns of the first d rows of a K x K unitary form a rank-1 K-outcome
// POVM on dimension d (the rows are orthonormal, so completeness is exact).
inline Povm povm_from_unitary(const Eigen::MatrixXcd& u, Eigen::Index d) {
    if (d > u.rows()) throw std::invalid_argument("povm_from_unitary: dimension exceeds unitary size");
    std::vector<Eigen::VectorXcd> vecs;
    vecs.reserve(static_cast<std::size_t>(u.cols()));
    for (Eigen::Index k = 0; k < u.cols(); ++k) vecs.push_back(u.col(k).head(d));
    Povm p;
    p.dim = d;
    p.vectors = std::move(vecs);
    return p;
}

inline Povm povm_from_params(const Eigen::VectorXd& params, Eigen::Index d, int outcomes) {
    if (outcomes < d) throw std::invalid_argument("povm_from_params: outcome count below dimension");
    return povm_from_unitary(unitary_from_angles(params, outcomes), d);
}

namespace detail {

// Precomputed index machinery for conditioning a state on a rank-1
// measurement of one party and reducing each conditional state to a target
// party subset. This is the inner loop of every measurement optimization.
class ConditionalScan {
public:
    ConditionalScan(const Eigen::MatrixXcd& rho, const SubsystemLayout& layout, const std::string& side,
                    const std::vector<std::string>& target)
        : rho_(&rho) {
        const int side_pos = layout.index_of(side);
        const auto target_pos = layout.positions_of(target);
        for (int p : target_pos)
            if (p == side_pos) throw std::invalid_argument("ConditionalScan: target overlaps measured side");

        std::vector<int> rest;
        for (int p = 0; p < layout.arity(); ++p)
            if (p != side_pos && std::find(target_pos.begin(), target_pos.end(), p) == target_pos.end())
                rest.push_back(p);

        const auto strides = layout.strides();
        side_dim_ = layout.dim(side_pos);
        side_stride_ = strides[static_cast<std::size_t>(side_pos)];
        target_off_ = party_offsets(layout.dims(), strides, target_pos);
        rest_off_ = party_offsets(layout.dims(), strides, rest);
        prior_target_ = partial_trace_raw(rho, layout, target_pos);
    }

    Eigen::Index side_dim() const { return side_dim_; }
    Eigen::Index target_dim() const { return static_cast<Eigen::Index>(target_off_.size()); }
    const Eigen::MatrixXcd& prior_target_state() const { return prior_target_; }
    Bits prior_target_entropy() const { return entropy_raw(prior_target_); }

    // Unnormalized conditional state on the target parties for one POVM
    // vector; its trace is the outcome probability.
    Eigen::MatrixXcd conditional_unnormalized(const Eigen::VectorXcd& m) const {
        const Eigen::Index dt = target_dim();
        Eigen::MatrixXcd tau(dt, dt);
        for (Eigen::Index i = 0; i < dt; ++i)
            for (Eigen::Index j = i; j < dt; ++j) {
                std::complex<double> acc = 0.0;
                for (const Eigen::Index r : rest_off_) {
                    const Eigen::Index row0 = target_off_[static_cast<std::size_t>(i)] + r;
                    const Eigen::Index col0 = target_off_[static_cast<std::size_t>(j)] + r;
                    for (Eigen::Index s = 0; s < side_dim_; ++s) {
                        const std::complex<double> ms = std::conj(m(s));
                        const Eigen::Index row = row0 + s * side_stride_;
                        for (Eigen::Index sp = 0; sp < side_dim_; ++sp)
                            acc += ms * (*rho_)(row, col0 + sp * side_stride_) * m(sp);
                    }
                }
                tau(i, j) = acc;
                if (j != i) tau(j, i) = std::conj(acc);
            }
        return tau;
    }

    // Calls sink(p_k, tau_k) with tau_k normalized; degenerate outcomes
    // (p_k <= 1e-12) are skipped.
    template <class Sink>
    void scan(const Povm& povm, Sink&& sink) const {
        for (const auto& m : povm.vectors) {
            Eigen::MatrixXcd tau = conditional_unnormalized(m);
            const double p = tau.trace().real();
            if (p <= kDegenerateProb) continue;
            tau /= p;
            sink(p, tau);
        }
    }

    Bits average_target_entropy(const Povm& povm) const {
        double acc = 0.0;
        scan(povm, [&](double p, const Eigen::MatrixXcd& tau) { acc += p * entropy_raw(tau); });
        return acc;
    }

    // S(rho_target) - sum_k p_k S(tau_k), clipped of sub-1e-9 negative noise.
    Bits entropy_gain(const Povm& povm) const {
        double g = prior_target_entropy() - average_target_entropy(povm);
        if (g < 0.0 && g > -1e-9) g = 0.0;
        return g;
    }

private:
    const Eigen::MatrixXcd* rho_;
    std::vector<Eigen::Index> target_off_, rest_off_;
    Eigen::Index side_stride_ = 0, side_dim_ = 0;
    Eigen::MatrixXcd prior_target_;
};

}  // namespace detail

struct MeasurementOutcome {
    double probability = 0.0;
    // Empty for degenerate outcomes (probability <= 1e-12).
    std::optional<DensityMatrix> state;
};

// Applies a rank-1 POVM on `side` and returns the outcome probabilities with
// the conditional states of the remaining parties.
inline std::vector<MeasurementOutcome> measure_side(const DensityMatrix& rho, const Povm& povm,
                                                    const std::string& side) {
    const int side_pos = rho.layout.index_of(side);
    if (povm.dim != rho.layout.dim(side_pos))
        throw std::invalid_argument("measure_side: POVM dimension does not match measured party");
    if (povm.completeness_defect() > kCompletenessTol)
        throw std::invalid_argument("measure_side: POVM incomplete");

    std::vector<std::string> kept;
    for (const auto& l : rho.layout.labels())
        if (l != side) kept.push_back(l);
    if (kept.empty()) throw std::invalid_argument("measure_side: nothing left after measurement");

    const detail::ConditionalScan scan(rho.entries, rho.layout, side, kept);
    const SubsystemLayout kept_layout = rho.layout.select(rho.layout.positions_of(kept));

    std::vector<MeasurementOutcome> out;
    out.reserve(povm.vectors.size());
    double total = 0.0;
    for (const auto& m : povm.vectors) {
        Eigen::MatrixXcd tau = scan.conditional_unnormalized(m);
        const double p = tau.trace().real();
        MeasurementOutcome o;
        o.probability = std::max(p, 0.0);
        if (p > kDegenerateProb) {
            tau /= p;
            o.state = DensityMatrix::trusted(std::move(tau), kept_layout);
        }
        total += o.probability;
        out.push_back(std::move(o));
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::runtime_error("measure_side: outcome probabilities do not sum to 1");
    return out;
}

// S(rho_kept) - sum_k p_k S(rho_k^kept) for the given measurement.
inline Bits localizable_entropy_gain(const DensityMatrix& rho, const Povm& povm, const std::string& side) {
    const int side_pos = rho.layout.index_of(side);
    if (povm.dim != rho.layout.dim(side_pos))
        throw std::invalid_argument("localizable_entropy_gain: POVM dimension mismatch");
    std::vector<std::string> kept;
    for (const auto& l : rho.layout.labels())
        if (l != side) kept.push_back(l);
    const detail::ConditionalScan scan(rho.entries, rho.layout, side, kept);
    return scan.entropy_gain(povm);
}

}  // namespace uqd
