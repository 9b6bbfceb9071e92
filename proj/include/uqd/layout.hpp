#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace uqd {

// Ordered tensor factorization of a Hilbert space. The first party is the
// most significant index: for labels {A,B} with dims {dA,dB}, basis state
// |a,b> sits at flat index a*dB + b.
class SubsystemLayout {
public:
    SubsystemLayout() = default;

    SubsystemLayout(std::vector<std::string> labels, std::vector<Eigen::Index> dims)
        : labels_(std::move(labels)), dims_(std::move(dims)) {
        if (labels_.size() != dims_.size())
            throw std::invalid_argument("SubsystemLayout: label/dim count mismatch");
        if (labels_.empty())
            throw std::invalid_argument("SubsystemLayout: empty layout");
        for (Eigen::Index d : dims_)
            if (d < 1) throw std::invalid_argument("SubsystemLayout: dims must be positive");
        for (std::size_t i = 0; i < labels_.size(); ++i)
            for (std::size_t j = i + 1; j < labels_.size(); ++j)
                if (labels_[i] == labels_[j])
                    throw std::invalid_argument("SubsystemLayout: duplicate party label '" + labels_[i] + "'");
    }

    // Qubit parties named by single characters, e.g. qubits("ABC").
    static SubsystemLayout qubits(std::string_view names) {
        std::vector<std::string> labels;
        std::vector<Eigen::Index> dims;
        for (char c : names) {
            labels.emplace_back(1, c);
            dims.push_back(2);
        }
        return SubsystemLayout(std::move(labels), std::move(dims));
    }

    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<Eigen::Index>& dims() const { return dims_; }
    int arity() const { return static_cast<int>(labels_.size()); }

    Eigen::Index total_dim() const {
        Eigen::Index d = 1;
        for (Eigen::Index x : dims_) d *= x;
        return d;
    }

    Eigen::Index dim(int party) const { return dims_.at(static_cast<std::size_t>(party)); }

    bool has(std::string_view label) const {
        return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
    }

    int index_of(std::string_view label) const {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end())
            throw std::invalid_argument("SubsystemLayout: unknown party label '" + std::string(label) + "'");
        return static_cast<int>(it - labels_.begin());
    }

    // Party positions for a label set, in original layout order.
    std::vector<int> positions_of(const std::vector<std::string>& labels) const {
        std::vector<int> pos;
        pos.reserve(labels.size());
        for (const auto& l : labels) pos.push_back(index_of(l));
        std::sort(pos.begin(), pos.end());
        if (std::adjacent_find(pos.begin(), pos.end()) != pos.end())
            throw std::invalid_argument("SubsystemLayout: repeated label in selection");
        return pos;
    }

    // Flat-index stride of each party (big-endian).
    std::vector<Eigen::Index> strides() const {
        std::vector<Eigen::Index> s(dims_.size());
        Eigen::Index acc = 1;
        for (std::size_t i = dims_.size(); i-- > 0;) {
            s[i] = acc;
            acc *= dims_[i];
        }
        return s;
    }

    // Sub-layout of the given party positions (must be sorted, unique).
    SubsystemLayout select(const std::vector<int>& positions) const {
        std::vector<std::string> l;
        std::vector<Eigen::Index> d;
        for (int p : positions) {
            l.push_back(labels_.at(static_cast<std::size_t>(p)));
            d.push_back(dims_.at(static_cast<std::size_t>(p)));
        }
        return SubsystemLayout(std::move(l), std::move(d));
    }

    // Concatenation for tensor products; rejects duplicate labels.
    SubsystemLayout merged_with(const SubsystemLayout& other) const {
        std::vector<std::string> l = labels_;
        std::vector<Eigen::Index> d = dims_;
        for (std::size_t i = 0; i < other.labels_.size(); ++i) {
            if (has(other.labels_[i]))
                throw std::invalid_argument("SubsystemLayout: duplicate party label '" + other.labels_[i] +
                                            "' in tensor product");
            l.push_back(other.labels_[i]);
            d.push_back(other.dims_[i]);
        }
        return SubsystemLayout(std::move(l), std::move(d));
    }

    // Appends one party; picks base, base1, base2, ... to avoid clashes.
    SubsystemLayout appended(const std::string& base, Eigen::Index dim) const {
        std::string name = base;
        for (int n = 1; has(name); ++n) name = base + std::to_string(n);
        std::vector<std::string> l = labels_;
        std::vector<Eigen::Index> d = dims_;
        l.push_back(name);
        d.push_back(dim);
        return SubsystemLayout(std::move(l), std::move(d));
    }

    bool operator==(const SubsystemLayout& other) const = default;

private:
    std::vector<std::string> labels_;
    std::vector<Eigen::Index> dims_;
};

}  // namespace uqd
