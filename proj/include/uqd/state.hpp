#pragma once

#include <complex>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

#include "uqd/eig.hpp"
#include "uqd/layout.hpp"

namespace uqd {

inline constexpr double kNormTol = 1e-10;
inline constexpr double kStateHermTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEigenvalueFloor = -1e-9;
inline constexpr double kDegenerateProb = 1e-12;
inline constexpr double kPurityTol = 1e-9;

// Normalized pure state over a labeled tensor factorization.
struct StateVector {
    Eigen::VectorXcd amplitudes;
    SubsystemLayout layout;

    StateVector(Eigen::VectorXcd amps, SubsystemLayout lay)
        : amplitudes(std::move(amps)), layout(std::move(lay)) {
        if (amplitudes.size() != layout.total_dim())
            throw std::invalid_argument("StateVector: amplitude count does not match layout dimension");
        const double n = amplitudes.norm();
        if (std::abs(n - 1.0) > kNormTol)
            throw std::invalid_argument("StateVector: not normalized");
    }
};

// Hermitian, unit-trace, positive-semidefinite operator with a party layout.
struct DensityMatrix {
    Eigen::MatrixXcd entries;
    SubsystemLayout layout;

    DensityMatrix(Eigen::MatrixXcd m, SubsystemLayout lay)
        : entries(std::move(m)), layout(std::move(lay)) {
        validate();
    }

    // Skips validation; for internal paths that construct valid states by
    // construction (partial traces of valid inputs, spectral projections).
    static DensityMatrix trusted(Eigen::MatrixXcd m, SubsystemLayout lay) {
        return DensityMatrix(std::move(m), std::move(lay), unchecked_tag{});
    }

private:
    struct unchecked_tag {};
    DensityMatrix(Eigen::MatrixXcd m, SubsystemLayout lay, unchecked_tag)
        : entries(std::move(m)), layout(std::move(lay)) {}

    void validate() const {
        if (entries.rows() != entries.cols())
            throw std::invalid_argument("DensityMatrix: not square");
        if (entries.rows() != layout.total_dim())
            throw std::invalid_argument("DensityMatrix: size does not match layout dimension");
        if (detail::hermiticity_defect(entries) > kStateHermTol)
            throw std::invalid_argument("DensityMatrix: not Hermitian");
        if (std::abs(entries.trace().real() - 1.0) > kTraceTol || std::abs(entries.trace().imag()) > kTraceTol)
            throw std::invalid_argument("DensityMatrix: trace differs from 1");
        const Eigen::VectorXd ev = detail::eigenvalues_hermitian(entries);
        if (ev(0) < kEigenvalueFloor)
            throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond tolerance");
    }
};

inline DensityMatrix density(const StateVector& psi) {
    return DensityMatrix::trusted(psi.amplitudes * psi.amplitudes.adjoint(), psi.layout);
}

inline double purity(const DensityMatrix& rho) {
    return (rho.entries * rho.entries).trace().real();
}

inline bool is_pure(const DensityMatrix& rho, double tol = kPurityTol) {
    return purity(rho) >= 1.0 - tol;
}

namespace detail {

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Eigen::VectorXcd kron(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    Eigen::VectorXcd out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

}  // namespace detail

inline StateVector tensor(const StateVector& x, const StateVector& y) {
    return StateVector(detail::kron(x.amplitudes, y.amplitudes), x.layout.merged_with(y.layout));
}

inline DensityMatrix tensor(const DensityMatrix& x, const DensityMatrix& y) {
    return DensityMatrix::trusted(detail::kron(x.entries, y.entries), x.layout.merged_with(y.layout));
}

}  // namespace uqd
