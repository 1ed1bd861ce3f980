#include "ipred/polysolve.hpp"

#include "ipred/combinatorics.hpp"
#include "ipred/parallel.hpp"

#include <Eigen/Sparse>

#include <cmath>
#include <limits>

namespace ipred {

namespace {

constexpr Index kMaxBlock = Index{1} << 31;

void check_ratio(double t) {
    if (!(t > 1.0) || !std::isfinite(t)) throw std::invalid_argument("approximation ratio t must exceed 1");
}

/// Largest b in [1, kMaxBlock] with b^power <= bound.
Index largest_base_below(const Rational& bound, unsigned power) {
    auto fits = [&](Index b) { return Rational(boost::multiprecision::pow(BigInt(b), power)) <= bound; };
    Index lo = 1, hi = 2;
    while (hi < kMaxBlock && fits(hi)) hi *= 2;
    if (fits(hi)) return hi;
    while (hi - lo > 1) {
        const Index mid = lo + (hi - lo) / 2;
        (fits(mid) ? lo : hi) = mid;
    }
    return lo;
}

template <typename Acc>
Acc to_acc(const BigInt& v) {
    if constexpr (std::is_same_v<Acc, BigInt>) {
        return v;
    } else {
        return v.template convert_to<Acc>();
    }
}

template <typename Acc>
Eigen::SparseMatrix<Acc, Eigen::RowMajor> embed_blocks(const BooleanVectorSet& m, Index block,
                                                       const SubsetRanker& ranker,
                                                       const PowerSumCoefficients* coeffs) {
    const Index blocks = (m.rows() + block - 1) / block;
    std::vector<Eigen::Triplet<Acc>> entries;
    std::vector<Index> support;
    for (Index i = 0; i < m.rows(); ++i) {
        support.clear();
        for (Index j = 0; j < m.cols(); ++j) {
            if (m(i, j)) support.push_back(j);
        }
        for_each_subset_upto(std::span<const Index>(support), ranker.max_size(), [&](std::span<const Index> s) {
            if (s.empty()) return;
            const Acc w = coeffs ? to_acc<Acc>(coeffs->of_size(static_cast<Index>(s.size()))) : Acc(1);
            entries.emplace_back(i / block, static_cast<Index>(ranker.rank(s)), w);
        });
    }
    Eigen::SparseMatrix<Acc, Eigen::RowMajor> out(blocks, static_cast<Index>(ranker.count()));
    out.setFromTriplets(entries.begin(), entries.end());
    return out;
}

template <typename Acc>
Matrix<BigInt> boolean_batch(const BooleanVectorSet& a, const BooleanVectorSet& b, int r, Index block_a,
                             Index block_b) {
    const Index d = a.cols();
    const auto coeffs = compute_power_coeffs(d, r);
    const SubsetRanker ranker(d, r);
    const auto ma = embed_blocks<Acc>(a, block_a, ranker, &coeffs);
    const auto mb = embed_blocks<Acc>(b, block_b, ranker, nullptr);
    const Eigen::SparseMatrix<Acc, Eigen::RowMajor> mbt = mb.transpose();
    const Matrix<Acc> prod = Matrix<Acc>(ma * mbt);
    if constexpr (std::is_same_v<Acc, BigInt>) {
        return prod;
    } else {
        return prod.template cast<BigInt>();
    }
}

Matrix<BigInt> boolean_batch_any(const BooleanVectorSet& a, const BooleanVectorSet& b, int r, Index block_a,
                                 Index block_b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("instance sides have different dimensions");
    if (r < 1) throw std::invalid_argument("degree r must be at least 1");
    if (block_a < 1 || block_b < 1) throw std::invalid_argument("block size must be at least 1");
    const Index blocks_a = (a.rows() + block_a - 1) / block_a;
    const Index blocks_b = (b.rows() + block_b - 1) / block_b;
    if (a.cols() == 0 || a.rows() == 0 || b.rows() == 0) return Matrix<BigInt>::Zero(blocks_a, blocks_b);
    // every term is non-negative, so the final entries bound all partial sums
    const double log_bound = std::log2(static_cast<double>(std::min(block_a, a.rows()))) +
                             std::log2(static_cast<double>(std::min(block_b, b.rows()))) +
                             r * std::log2(static_cast<double>(a.cols()));
    if (log_bound < 62.0) return boolean_batch<std::int64_t>(a, b, r, block_a, block_b);
    return boolean_batch<BigInt>(a, b, r, block_a, block_b);
}

struct Multiset {
    std::vector<Index> elems;
    BigInt multinomial;
};

std::vector<Multiset> degree_multisets(Index d, int r) {
    std::vector<Multiset> out;
    std::vector<Index> cur;
    BigInt r_fact = 1;
    for (int i = 2; i <= r; ++i) r_fact *= i;
    auto rec = [&](auto&& self, Index start) -> void {
        if (static_cast<int>(cur.size()) == r) {
            BigInt denom = 1;
            std::size_t run = 1;
            for (std::size_t i = 1; i <= cur.size(); ++i) {
                if (i < cur.size() && cur[i] == cur[i - 1]) {
                    ++run;
                } else {
                    for (std::size_t f = 2; f <= run; ++f) denom *= f;
                    run = 1;
                }
            }
            out.push_back({cur, r_fact / denom});
            return;
        }
        for (Index i = start; i < d; ++i) {
            cur.push_back(i);
            self(self, i);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

Matrix<Rational> embed_real(const RealVectorSet& m, Index block, const std::vector<Multiset>& terms, bool weighted) {
    const Index blocks = (m.rows() + block - 1) / block;
    Matrix<Rational> out = Matrix<Rational>::Zero(blocks, static_cast<Index>(terms.size()));
    for (Index i = 0; i < m.rows(); ++i) {
        for (std::size_t k = 0; k < terms.size(); ++k) {
            Rational v = weighted ? Rational(terms[k].multinomial) : Rational(1);
            for (Index e : terms[k].elems) v *= m(i, e);
            out(i / block, static_cast<Index>(k)) += v;
        }
    }
    return out;
}

template <typename Scalar>
Scalar max_entry(const Matrix<Scalar>& m) {
    Scalar best = m(0, 0);
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) best = std::max<Scalar>(best, m(i, j));
    return best;
}

template <typename Scalar>
double largest_root(const Scalar& s, int r) {
    if (s <= 0) return 0.0;
    const Rational target(s);
    auto fits = [&](double v) { return pow_exact(Rational(v), static_cast<unsigned>(r)) <= target; };
    double v = std::pow(static_cast<double>(target.template convert_to<double>()), 1.0 / r);
    if (!std::isfinite(v)) v = std::numeric_limits<double>::max();
    while (v > 0 && !fits(v)) v = std::nextafter(v, 0.0);
    for (double up = std::nextafter(v, INFINITY); std::isfinite(up) && fits(up); up = std::nextafter(v, INFINITY)) {
        v = up;
    }
    return v;
}

int resolve_degree(const MultOptions& opts, Index n, Index d, double t,
                   bool real_mode, bool& lowered) {
    int r = opts.r ? *opts.r : default_degree(n, d, t);
    if (r < 1) throw std::invalid_argument("degree r must be at least 1");
    lowered = false;
    const BigInt budget(opts.monomial_budget);
    auto count = [&](int deg) { return real_mode ? real_monomial_count(d, deg) : boolean_monomial_count(d, deg); };
    while (r > 1 && count(r) > budget) {
        --r;
        lowered = true;
    }
    return r;
}

}  // namespace

PowerSumCoefficients compute_power_coeffs(Index d, int r) {
    if (d < 1 || r < 1) throw std::invalid_argument("power coefficients need d >= 1 and r >= 1");
    PowerSumCoefficients out{d, r, {}};
    const Index top = std::min<Index>(r, d);
    for (Index s = 0; s <= top; ++s) {
        BigInt acc = 0;
        for (Index j = 0; j <= s; ++j) {
            const BigInt term = binomial(s, j) * boost::multiprecision::pow(BigInt(s - j), static_cast<unsigned>(r));
            acc += (j % 2 == 0) ? term : BigInt(-term);
        }
        out.c.push_back(acc);
    }
    return out;
}

BigInt boolean_monomial_count(Index d, int r) { return binomial_prefix(d, r); }

BigInt real_monomial_count(Index d, int r) { return binomial(d + r - 1, r); }

Index blocking_size(double t, int r) {
    check_ratio(t);
    if (r < 1) throw std::invalid_argument("degree r must be at least 1");
    return largest_base_below(pow_exact(Rational(t), static_cast<unsigned>(r)), 2);
}

Matrix<BigInt> batch_power_sums(const BooleanVectorSet& a, const BooleanVectorSet& b, int r, Index block) {
    return boolean_batch_any(a, b, r, block, block);
}

Matrix<Rational> batch_power_sums(const RealVectorSet& a, const RealVectorSet& b, int r, Index block) {
    if (a.cols() != b.cols()) throw std::invalid_argument("instance sides have different dimensions");
    if (r < 1) throw std::invalid_argument("degree r must be at least 1");
    if (block < 1) throw std::invalid_argument("block size must be at least 1");
    const auto terms = degree_multisets(a.cols(), r);
    const Matrix<Rational> ma = embed_real(a, block, terms, true);
    const Matrix<Rational> mb = embed_real(b, block, terms, false);
    return ma * mb.transpose();
}

int default_degree(Index n, Index d, double t) {
    if (n < 2 || d < 1) return 1;
    const double log_n = std::log(static_cast<double>(n));
    const double c = static_cast<double>(d) / std::log2(static_cast<double>(n));
    if (c <= 1.0) return 1;
    const double eps = std::min(std::log(t) / std::log(c), 1.0);
    const double k = 0.31 / (1.0 + 0.155 * eps);
    return std::max(1, static_cast<int>(std::lround(k * log_n / std::log(c))));
}

double root_floor(const BigInt& s, int r) { return largest_root(s, r); }

double root_floor(const Rational& s, int r) { return largest_root(s, r); }

MultApprox approx_mult(const BooleanInstance& inst, double t, const MultOptions& opts) {
    check_ratio(t);
    validate(inst);
    if (inst.a.rows() == 0 || inst.b.rows() == 0) throw std::invalid_argument("empty instance");
    MultApprox out;
    out.r = resolve_degree(opts, inst.max_n(), inst.dim(), t, false, out.r_lowered);
    out.block = blocking_size(t, out.r);
    if (inst.dim() == 0) return out;
    out.value = root_floor(max_entry(batch_power_sums(inst.a, inst.b, out.r, out.block)), out.r);
    return out;
}

MultApprox approx_mult(const RealInstance& inst, double t, const MultOptions& opts) {
    check_ratio(t);
    validate(inst);
    if (inst.a.rows() == 0 || inst.b.rows() == 0) throw std::invalid_argument("empty instance");
    MultApprox out;
    out.r = resolve_degree(opts, inst.max_n(), inst.dim(), t, true, out.r_lowered);
    out.block = blocking_size(t, out.r);
    if (inst.dim() == 0) return out;
    out.value = root_floor(max_entry(batch_power_sums(inst.a, inst.b, out.r, out.block)), out.r);
    return out;
}

AllPairMultApprox all_pair_approx_mult(const BooleanInstance& inst, double t, const MultOptions& opts) {
    check_ratio(t);
    validate(inst);
    if (inst.a.rows() == 0 || inst.b.rows() == 0) throw std::invalid_argument("empty instance");
    AllPairMultApprox out;
    out.r = resolve_degree(opts, inst.max_n(), inst.dim(), t, false, out.r_lowered);
    out.block = largest_base_below(pow_exact(Rational(t), static_cast<unsigned>(out.r)), 1);
    out.values.assign(static_cast<std::size_t>(inst.a.rows()), 0.0);
    if (inst.dim() == 0) return out;
    const Matrix<BigInt> sums = boolean_batch_any(inst.a, inst.b, out.r, 1, out.block);
    parallel_for(sums.rows(), [&](std::ptrdiff_t i) {
        BigInt best = sums(i, 0);
        for (Index j = 1; j < sums.cols(); ++j) best = std::max<BigInt>(best, sums(i, j));
        out.values[static_cast<std::size_t>(i)] = root_floor(best, out.r);
    });
    return out;
}

}  // namespace ipred
