#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcoh/error.hpp"

namespace qcoh {

// Finite poset with string labels. The relation is stored as a full boolean
// leq matrix; construction validates reflexivity, antisymmetry, transitivity.
class FinitePoset {
public:
    FinitePoset(std::vector<std::string> labels, std::vector<std::pair<std::string, std::string>> relations);

    static FinitePoset chain(std::size_t n); // labels "0" < "1" < ... < "n-1"

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t index(const std::string& label) const;
    const std::string& label(std::size_t i) const { return labels_[i]; }

    bool leq(std::size_t i, std::size_t j) const { return leq_[i * size() + j]; }
    bool less(std::size_t i, std::size_t j) const { return i != j && leq(i, j); }

    // All ordered pairs i < j (strict).
    std::vector<std::pair<std::size_t, std::size_t>> strict_pairs() const;

    // Least upper bound if it exists.
    std::optional<std::size_t> join(std::size_t i, std::size_t j) const;
    bool is_upper_semilattice() const;

    bool operator==(const FinitePoset& o) const {
        return labels_ == o.labels_ && leq_ == o.leq_;
    }

private:
    std::vector<std::string> labels_;
    std::vector<bool> leq_;
};

} // namespace qcoh
