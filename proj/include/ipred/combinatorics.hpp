#pragma once

#include "ipred/core.hpp"

#include <cstdint>
#include <vector>

namespace ipred {

BigInt binomial(Index n, Index k);
/// sum_{k<=m} C(n, k)
BigInt binomial_prefix(Index n, Index m);

/// Pascal table of uint64 binomials, C(i, j) for i <= n (saturates rather than overflows).
class BinomialTable {
public:
    explicit BinomialTable(Index n);
    std::uint64_t operator()(Index n, Index k) const;

private:
    Index n_;
    std::vector<std::uint64_t> table_;
};

/// Ranks subsets of [d] with |S| <= r: all subsets of size 0 first, then size 1, and so on,
/// each size class in colex order.
class SubsetRanker {
public:
    SubsetRanker(Index d, Index r);

    std::uint64_t count() const { return offsets_.back(); }
    /// `elems` must be sorted ascending.
    std::uint64_t rank(std::span<const Index> elems) const;
    Index max_size() const { return r_; }

private:
    Index d_;
    Index r_;
    BinomialTable binom_;
    std::vector<std::uint64_t> offsets_;
};

/// Calls f(elems) for every subset of `support` with at most r elements (including the empty set).
template <typename F>
void for_each_subset_upto(std::span<const Index> support, Index r, F&& f) {
    std::vector<Index> cur;
    cur.reserve(static_cast<std::size_t>(r));
    auto rec = [&](auto&& self, std::size_t start) -> void {
        f(std::span<const Index>(cur));
        if (static_cast<Index>(cur.size()) == r) return;
        for (std::size_t i = start; i < support.size(); ++i) {
            cur.push_back(support[i]);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
}

}  // namespace ipred
