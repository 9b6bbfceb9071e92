#pragma once

#include <cmath>
#include <complex>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "uqd/state.hpp"

namespace uqd {

enum class Family { ghz3, ghz4, bellmix, custom };

struct FamilySpec {
    Family family = Family::ghz3;
    double theta = 0.0;  // radians, [0, pi/2]; ignored by custom states
    std::vector<Eigen::Index> custom_dims;
    Eigen::VectorXcd custom_amplitudes;
};

inline Family family_from_name(const std::string& name) {
    if (name == "ghz3") return Family::ghz3;
    if (name == "ghz4") return Family::ghz4;
    if (name == "bellmix") return Family::bellmix;
    if (name == "custom") return Family::custom;
    throw std::invalid_argument("unknown family: " + name);
}

namespace detail {

inline std::vector<std::string> default_labels(std::size_t n) {
    if (n > 26) throw std::invalid_argument("default_labels: too many parties");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.emplace_back(1, static_cast<char>('A' + i));
    return labels;
}

inline void check_theta(double theta) {
    if (!(theta >= -1e-12 && theta <= std::numbers::pi / 2 + 1e-12))
        throw std::invalid_argument("family theta outside [0, pi/2]");
}

}  // namespace detail

// cos(theta)|0...0> + sin(theta)|1...1> on n qubits.
inline StateVector ghz_state(int n, double theta) {
    if (n < 2) throw std::invalid_argument("ghz_state: at least two qubits required");
    detail::check_theta(theta);
    const SubsystemLayout layout(detail::default_labels(static_cast<std::size_t>(n)),
                                 std::vector<Eigen::Index>(static_cast<std::size_t>(n), 2));
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(layout.total_dim());
    amps(0) = std::cos(theta);
    amps(layout.total_dim() - 1) = std::sin(theta);
    return StateVector(std::move(amps), layout);
}

// cos(theta)|Phi+>_AB|0>_C + sin(theta)|0>_A|Psi+>_BC with
// |Phi+> = (|00>+|11>)/sqrt(2) and |Psi+> = (|01>+|10>)/sqrt(2).
// The branches are orthogonal (B and C excitations differ), so the state is
// normalized for every theta.
inline StateVector bell_mix_state(double theta) {
    detail::check_theta(theta);
    const SubsystemLayout layout = SubsystemLayout::qubits("ABC");
    const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(8);
    amps(0) = std::cos(theta) * inv_sqrt2;  // |000>
    amps(6) = std::cos(theta) * inv_sqrt2;  // |110>
    amps(1) = std::sin(theta) * inv_sqrt2;  // |001>
    amps(2) = std::sin(theta) * inv_sqrt2;  // |010>
    return StateVector(std::move(amps), layout);
}

inline StateVector build(const FamilySpec& spec) {
    switch (spec.family) {
        case Family::ghz3:
            return ghz_state(3, spec.theta);
        case Family::ghz4:
            return ghz_state(4, spec.theta);
        case Family::bellmix:
            return bell_mix_state(spec.theta);
        case Family::custom: {
            Eigen::Index total = 1;
            for (const Eigen::Index d : spec.custom_dims) total *= d;
            if (spec.custom_dims.empty() || spec.custom_amplitudes.size() != total)
                throw std::invalid_argument("custom state: amplitude count does not match dimensions");
            const double norm = spec.custom_amplitudes.norm();
            if (std::abs(norm - 1.0) > 1e-8)
                throw std::invalid_argument("custom state: amplitudes not normalized within 1e-8");
            const SubsystemLayout layout(detail::default_labels(spec.custom_dims.size()), spec.custom_dims);
            return StateVector(spec.custom_amplitudes / norm, layout);
        }
    }
    throw std::invalid_argument("unknown family");
}

// Text format: a header line with the party dimensions, then one "re im"
// amplitude per line in tensor order; '#' starts a comment line.
inline FamilySpec parse_custom_state(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        lines.push_back(line);
    }
    if (lines.empty()) throw std::invalid_argument("custom state: empty input");

    FamilySpec spec;
    spec.family = Family::custom;
    {
        std::istringstream header(lines.front());
        Eigen::Index d = 0;
        while (header >> d) {
            if (d < 1) throw std::invalid_argument("custom state: nonpositive dimension");
            spec.custom_dims.push_back(d);
        }
        if (!header.eof()) throw std::invalid_argument("custom state: malformed dimension header");
        if (spec.custom_dims.empty()) throw std::invalid_argument("custom state: missing dimension header");
    }

    Eigen::Index total = 1;
    for (const Eigen::Index d : spec.custom_dims) total *= d;
    if (static_cast<Eigen::Index>(lines.size()) - 1 != total)
        throw std::invalid_argument("custom state: expected " + std::to_string(total) + " amplitude lines");

    spec.custom_amplitudes.resize(total);
    for (Eigen::Index i = 0; i < total; ++i) {
        std::istringstream row(lines[static_cast<std::size_t>(i) + 1]);
        double re = 0.0, im = 0.0;
        if (!(row >> re >> im)) throw std::invalid_argument("custom state: malformed amplitude line");
        std::string extra;
        if (row >> extra) throw std::invalid_argument("custom state: trailing tokens on amplitude line");
        spec.custom_amplitudes(i) = std::complex<double>(re, im);
    }
    return spec;
}

inline FamilySpec load_custom_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("custom state: cannot open " + path);
    return parse_custom_state(in);
}

}  // namespace uqd
