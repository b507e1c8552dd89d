#include "qcoh/poset.hpp"

namespace qcoh {

FinitePoset::FinitePoset(std::vector<std::string> labels,
                         std::vector<std::pair<std::string, std::string>> relations)
    : labels_(std::move(labels)), leq_(labels_.size() * labels_.size(), false) {
    const std::size_t n = labels_.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (labels_[i] == labels_[j])
                throw Error(ErrorKind::Internal, "duplicate poset label '" + labels_[i] + "'");
    for (std::size_t i = 0; i < n; ++i) leq_[i * n + i] = true;
    for (const auto& [a, b] : relations) leq_[index(a) * n + index(b)] = true;
    // transitive closure (Floyd-Warshall)
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (leq_[i * n + k])
                for (std::size_t j = 0; j < n; ++j)
                    if (leq_[k * n + j]) leq_[i * n + j] = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && leq_[i * n + j] && leq_[j * n + i])
                throw Error(ErrorKind::Internal,
                            "antisymmetry violated between '" + labels_[i] + "' and '" + labels_[j] + "'");
}

FinitePoset FinitePoset::chain(std::size_t n) {
    std::vector<std::string> labels;
    std::vector<std::pair<std::string, std::string>> rels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    for (std::size_t i = 0; i + 1 < n; ++i)
        rels.push_back({std::to_string(i), std::to_string(i + 1)});
    return FinitePoset(labels, rels);
}

std::size_t FinitePoset::index(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return i;
    throw Error(ErrorKind::Internal, "unknown poset element '" + label + "'");
}

std::vector<std::pair<std::size_t, std::size_t>> FinitePoset::strict_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            if (less(i, j)) out.push_back({i, j});
    return out;
}

std::optional<std::size_t> FinitePoset::join(std::size_t i, std::size_t j) const {
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < size(); ++k) {
        if (!leq(i, k) || !leq(j, k)) continue;
        if (!best || leq(k, *best)) best = k;
    }
    if (!best) return std::nullopt;
    // verify least-ness (not just minimal among upper bounds)
    for (std::size_t k = 0; k < size(); ++k)
        if (leq(i, k) && leq(j, k) && !leq(*best, k)) return std::nullopt;
    return best;
}

bool FinitePoset::is_upper_semilattice() const {
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            if (!join(i, j)) return false;
    return true;
}

} // namespace qcoh
