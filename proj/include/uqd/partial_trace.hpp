#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "uqd/state.hpp"

namespace uqd {
namespace detail {

// Flat offset of every multi-index over the selected parties.
inline std::vector<Eigen::Index> party_offsets(const std::vector<Eigen::Index>& dims,
                                               const std::vector<Eigen::Index>& strides,
                                               const std::vector<int>& parties) {
    Eigen::Index count = 1;
    for (int p : parties) count *= dims[static_cast<std::size_t>(p)];
    std::vector<Eigen::Index> offsets(static_cast<std::size_t>(count), 0);
    Eigen::Index repeat = count;
    for (int p : parties) {
        const Eigen::Index d = dims[static_cast<std::size_t>(p)];
        const Eigen::Index stride = strides[static_cast<std::size_t>(p)];
        repeat /= d;
        for (Eigen::Index i = 0; i < count; ++i)
            offsets[static_cast<std::size_t>(i)] += ((i / repeat) % d) * stride;
    }
    return offsets;
}

inline Eigen::MatrixXcd partial_trace_raw(const Eigen::MatrixXcd& rho, const SubsystemLayout& layout,
                                          const std::vector<int>& keep_positions) {
    const auto& dims = layout.dims();
    const auto strides = layout.strides();
    std::vector<int> traced;
    for (int p = 0; p < layout.arity(); ++p)
        if (std::find(keep_positions.begin(), keep_positions.end(), p) == keep_positions.end())
            traced.push_back(p);

    const auto kept_off = party_offsets(dims, strides, keep_positions);
    const auto traced_off = party_offsets(dims, strides, traced);

    const Eigen::Index dk = static_cast<Eigen::Index>(kept_off.size());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
    for (Eigen::Index i = 0; i < dk; ++i)
        for (Eigen::Index j = 0; j < dk; ++j) {
            std::complex<double> acc = 0.0;
            for (const Eigen::Index t : traced_off)
                acc += rho(kept_off[static_cast<std::size_t>(i)] + t, kept_off[static_cast<std::size_t>(j)] + t);
            out(i, j) = acc;
        }
    return out;
}

// Marginal of a pure state on the selected parties.
inline Eigen::MatrixXcd pure_marginal_raw(const Eigen::VectorXcd& amps, const SubsystemLayout& layout,
                                          const std::vector<int>& keep_positions) {
    const auto& dims = layout.dims();
    const auto strides = layout.strides();
    std::vector<int> traced;
    for (int p = 0; p < layout.arity(); ++p)
        if (std::find(keep_positions.begin(), keep_positions.end(), p) == keep_positions.end())
            traced.push_back(p);

    const auto kept_off = party_offsets(dims, strides, keep_positions);
    const auto traced_off = party_offsets(dims, strides, traced);

    const Eigen::Index dk = static_cast<Eigen::Index>(kept_off.size());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
    for (Eigen::Index i = 0; i < dk; ++i)
        for (Eigen::Index j = i; j < dk; ++j) {
            std::complex<double> acc = 0.0;
            for (const Eigen::Index t : traced_off)
                acc += amps(kept_off[static_cast<std::size_t>(i)] + t) *
                       std::conj(amps(kept_off[static_cast<std::size_t>(j)] + t));
            out(i, j) = acc;
            if (j != i) out(j, i) = std::conj(acc);
        }
    return out;
}

}  // namespace detail

// Reduced state on the kept parties (original relative order preserved).
inline DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
    if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
    const std::vector<int> positions = rho.layout.positions_of(keep);
    if (static_cast<int>(positions.size()) == rho.layout.arity())
        return rho;
    return DensityMatrix::trusted(detail::partial_trace_raw(rho.entries, rho.layout, positions),
                                  rho.layout.select(positions));
}

// Reduced state of a pure state without forming the global density matrix.
inline DensityMatrix marginal(const StateVector& psi, const std::vector<std::string>& keep) {
    if (keep.empty()) throw std::invalid_argument("marginal: empty keep set");
    const std::vector<int> positions = psi.layout.positions_of(keep);
    return DensityMatrix::trusted(detail::pure_marginal_raw(psi.amplitudes, psi.layout, positions),
                                  psi.layout.select(positions));
}

}  // namespace uqd
