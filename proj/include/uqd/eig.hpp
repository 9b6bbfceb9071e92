#pragma once

#include <stdexcept>

#include <Eigen/Dense>

namespace uqd {

inline constexpr double kHermitianTol = 1e-8;

struct EigResult {
    Eigen::VectorXd values;    // descending
    Eigen::MatrixXcd vectors;  // orthonormal columns, vectors.col(i) pairs with values(i)
};

namespace detail {

inline double hermiticity_defect(const Eigen::MatrixXcd& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Ascending eigenvalues of an already-trusted Hermitian matrix.
inline Eigen::VectorXd eigenvalues_hermitian(const Eigen::MatrixXcd& m) {
    if (m.rows() == 1) {
        Eigen::VectorXd v(1);
        v(0) = m(0, 0).real();
        return v;
    }
    if (m.rows() == 2) {
        // Closed form keeps the measurement objective cheap.
        const double a = m(0, 0).real();
        const double d = m(1, 1).real();
        const double mean = 0.5 * (a + d);
        const double disc = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
        Eigen::VectorXd v(2);
        v(0) = mean - disc;
        v(1) = mean + disc;
        return v;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigenvalues_hermitian: solver did not converge");
    return es.eigenvalues();
}

}  // namespace detail

// Full Hermitian eigendecomposition, eigenvalues sorted descending.
inline EigResult eig_hermitian(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("eig_hermitian: matrix not square");
    if (detail::hermiticity_defect(m) > kHermitianTol)
        throw std::invalid_argument("eig_hermitian: input not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eig_hermitian: solver did not converge");
    const Eigen::Index n = m.rows();
    EigResult r;
    r.values = es.eigenvalues().reverse();
    r.vectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) r.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
    return r;
}

}  // namespace uqd
