#include "ipred/combinatorics.hpp"

#include <limits>

namespace ipred {

BigInt binomial(Index n, Index k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt acc = 1;
    for (Index i = 1; i <= k; ++i) {
        acc *= n - k + i;
        acc /= i;
    }
    return acc;
}

BigInt binomial_prefix(Index n, Index m) {
    BigInt acc = 0;
    for (Index k = 0; k <= std::min(n, m); ++k) acc += binomial(n, k);
    return acc;
}

BinomialTable::BinomialTable(Index n) : n_(n), table_(static_cast<std::size_t>((n + 1) * (n + 1)), 0) {
    constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
    for (Index i = 0; i <= n; ++i) {
        table_[static_cast<std::size_t>(i * (n + 1))] = 1;
        for (Index j = 1; j <= i; ++j) {
            const auto up = table_[static_cast<std::size_t>((i - 1) * (n + 1) + j - 1)];
            const auto left = table_[static_cast<std::size_t>((i - 1) * (n + 1) + j)];
            table_[static_cast<std::size_t>(i * (n + 1) + j)] = up > cap - left ? cap : up + left;
        }
    }
}

std::uint64_t BinomialTable::operator()(Index n, Index k) const {
    if (k < 0 || n < 0 || k > n) return 0;
    return table_[static_cast<std::size_t>(n * (n_ + 1) + k)];
}

SubsetRanker::SubsetRanker(Index d, Index r) : d_(d), r_(std::min(d, r)), binom_(d) {
    offsets_.push_back(0);
    for (Index s = 0; s <= r_; ++s) offsets_.push_back(offsets_.back() + binom_(d_, s));
}

std::uint64_t SubsetRanker::rank(std::span<const Index> elems) const {
    std::uint64_t colex = 0;
    for (std::size_t i = 0; i < elems.size(); ++i) colex += binom_(elems[i], static_cast<Index>(i + 1));
    return offsets_[elems.size()] + colex;
}

}  // namespace ipred
