#pragma once

// Independent reference computations. Nothing here calls into the library's algorithms;
// only plain loops over the raw matrices.

#include "ipred/core.hpp"

#include <cstdint>
#include <vector>

namespace oracle {

template <typename M>
auto row_dot(const M& a, ipred::Index i, const M& b, ipred::Index j) {
    using S = typename M::Scalar;
    using Acc = std::conditional_t<std::is_integral_v<S>, std::int64_t, S>;
    Acc acc{0};
    for (ipred::Index k = 0; k < a.cols(); ++k) acc += Acc(a(i, k)) * Acc(b(j, k));
    return acc;
}

template <typename Inst>
auto max_ip(const Inst& inst) {
    auto best = row_dot(inst.a, 0, inst.b, 0);
    for (ipred::Index i = 0; i < inst.a.rows(); ++i)
        for (ipred::Index j = 0; j < inst.b.rows(); ++j) best = std::max(best, row_dot(inst.a, i, inst.b, j));
    return best;
}

template <typename Inst>
auto row_max_ip(const Inst& inst, ipred::Index i) {
    auto best = row_dot(inst.a, i, inst.b, 0);
    for (ipred::Index j = 0; j < inst.b.rows(); ++j) best = std::max(best, row_dot(inst.a, i, inst.b, j));
    return best;
}

template <typename Inst>
bool has_orthogonal(const Inst& inst) {
    for (ipred::Index i = 0; i < inst.a.rows(); ++i)
        for (ipred::Index j = 0; j < inst.b.rows(); ++j)
            if (row_dot(inst.a, i, inst.b, j) == 0) return true;
    return false;
}

inline std::vector<ipred::Bit> bits_of(std::uint64_t mask, int len) {
    std::vector<ipred::Bit> out(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) out[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
    return out;
}

inline ipred::Vector<ipred::Bit> bitvec(std::uint64_t mask, int len) {
    ipred::Vector<ipred::Bit> v(len);
    for (int i = 0; i < len; ++i) v(i) = (mask >> i) & 1u;
    return v;
}

inline int popcount_and(std::uint64_t x, std::uint64_t y) { return __builtin_popcountll(x & y); }

}  // namespace oracle
