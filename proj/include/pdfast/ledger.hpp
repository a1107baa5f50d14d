#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "pdfast/geometry.hpp"

namespace pdfast {

/// Set of broken bonds, stored per node as sorted partner lists.
/// Symmetric by construction and monotone: bonds only enter, never leave.
class BondLedger {
  public:
    BondLedger() = default;
    explicit BondLedger(index_t n_nodes) : partners_(static_cast<std::size_t>(n_nodes)) {}

    index_t n_nodes() const { return static_cast<index_t>(partners_.size()); }

    /// Marks (p,q) broken in both directions. Returns true if newly broken.
    bool break_bond(index_t p, index_t q) {
        if (!insert(p, q)) return false;
        insert(q, p);
        ++total_;
        return true;
    }

    bool is_broken(index_t p, index_t q) const {
        const auto& v = partners_[static_cast<std::size_t>(p)];
        return std::binary_search(v.begin(), v.end(), q);
    }

    int broken_count(index_t p) const {
        return static_cast<int>(partners_[static_cast<std::size_t>(p)].size());
    }

    const std::vector<index_t>& broken_partners(index_t p) const {
        return partners_[static_cast<std::size_t>(p)];
    }

    /// Number of unordered broken bonds.
    index_t total_broken() const { return total_; }

    bool operator==(const BondLedger& other) const { return partners_ == other.partners_; }

  private:
    bool insert(index_t p, index_t q) {
        auto& v = partners_[static_cast<std::size_t>(p)];
        auto it = std::lower_bound(v.begin(), v.end(), q);
        if (it != v.end() && *it == q) return false;
        v.insert(it, q);
        return true;
    }

    std::vector<std::vector<index_t>> partners_;
    index_t total_ = 0;
};

}  // namespace pdfast
