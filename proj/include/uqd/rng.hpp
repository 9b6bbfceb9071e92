#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include <Eigen/Dense>

#include "uqd/state.hpp"

namespace uqd {

// Counter-style splittable PRNG. Every consumer derives its own stream from
// (master seed, tag, indices), so results never depend on execution order.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                                   std::uint64_t c = 0) {
    std::uint64_t h = mix64(master ^ 0x6a09e667f3bcc909ULL);
    h = mix64(h ^ a);
    h = mix64(h ^ b);
    h = mix64(h ^ c);
    return h;
}

// Stream tags keep unrelated consumers of the same master seed independent.
namespace stream_tag {
inline constexpr std::uint64_t state = 0x51a7e;
inline constexpr std::uint64_t restart = 0x0e57a27;
inline constexpr std::uint64_t unitary = 0x0417a27;
inline constexpr std::uint64_t sweep_point = 0x5e3b0;
}  // namespace stream_tag

// Deterministic standard-normal sampler (Box-Muller on SplitMix64).
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : gen_(seed) {}

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = gen_.uniform();
        while (u1 <= 0.0) u1 = gen_.uniform();
        const double u2 = gen_.uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    double uniform() { return gen_.uniform(); }

private:
    SplitMix64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Haar-random pure state: i.i.d. complex Gaussian amplitudes, normalized.
inline StateVector haar_random_pure(const SubsystemLayout& layout, std::uint64_t seed) {
    NormalStream ns(seed);
    Eigen::VectorXcd amps(layout.total_dim());
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        const double re = ns.normal();
        const double im = ns.normal();
        amps(i) = std::complex<double>(re, im);
    }
    amps /= amps.norm();
    return StateVector(std::move(amps), layout);
}

// Haar-random unitary: QR of a Ginibre matrix with phase-fixed diagonal.
inline Eigen::MatrixXcd haar_random_unitary(Eigen::Index d, std::uint64_t seed) {
    NormalStream ns(seed);
    Eigen::MatrixXcd g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) g(i, j) = std::complex<double>(ns.normal(), ns.normal());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < d; ++j) {
        const std::complex<double> rij = r(j, j);
        const double a = std::abs(rij);
        if (a > 0) q.col(j) *= rij / a;
    }
    return q;
}

}  // namespace uqd
