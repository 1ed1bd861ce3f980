#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace ipred {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Bit = std::uint8_t;
using Index = Eigen::Index;

/// Rows are the vectors of one side of an instance.
template <typename Scalar>
using VectorSet = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using BooleanVectorSet = VectorSet<Bit>;
using IntegerVectorSet = VectorSet<BigInt>;
using RealVectorSet = VectorSet<Rational>;

/// Accumulator used for dot products of a given element type.
template <typename Scalar>
struct DotTraits {
    using type = Scalar;
};
template <>
struct DotTraits<Bit> {
    using type = std::int64_t;
};
template <typename Scalar>
using DotType = typename DotTraits<Scalar>::type;

template <typename Scalar>
struct Instance {
    VectorSet<Scalar> a;
    VectorSet<Scalar> b;

    Index dim() const { return a.cols(); }
    /// max(nA, nB): the single n used wherever a formula needs one.
    Index max_n() const { return std::max(a.rows(), b.rows()); }
};

using BooleanInstance = Instance<Bit>;
using IntegerInstance = Instance<BigInt>;
using RealInstance = Instance<Rational>;

struct ArgPair {
    Index a = 0;
    Index b = 0;
    auto operator<=>(const ArgPair&) const = default;
};

template <typename Scalar>
struct MaxIpResult {
    DotType<Scalar> value;
    ArgPair arg;
};

struct OrthogonalResult {
    bool found = false;
    std::optional<ArgPair> witness;
};

/// Throws std::invalid_argument if the sides disagree on d or a Boolean entry is not 0/1.
void validate(const BooleanInstance& inst);
void validate(const IntegerInstance& inst);
/// Also requires every entry to be non-negative.
void validate(const RealInstance& inst);

template <typename RowA, typename RowB>
auto dot(const RowA& x, const RowB& y) {
    using Scalar = typename RowA::Scalar;
    DotType<Scalar> acc{0};
    for (Index i = 0; i < x.size(); ++i) acc += DotType<Scalar>(x(i)) * DotType<Scalar>(y(i));
    return acc;
}

/// All cross inner products, G(i,j) = a_i . b_j.
Matrix<std::int64_t> gram(const BooleanVectorSet& a, const BooleanVectorSet& b);
/// Uses an int64 product when every entry provably fits, BigInt otherwise.
Matrix<BigInt> gram(const IntegerVectorSet& a, const IntegerVectorSet& b);
Matrix<Rational> gram(const RealVectorSet& a, const RealVectorSet& b);

/// Brute-force OPT(A,B); ties go to the lexicographically smallest (indexA, indexB).
MaxIpResult<Bit> max_ip_exact(const BooleanInstance& inst);
MaxIpResult<BigInt> max_ip_exact(const IntegerInstance& inst);
MaxIpResult<Rational> max_ip_exact(const RealInstance& inst);

/// Brute-force orthogonal-pair search. Witness is the lexicographically first pair.
OrthogonalResult orthogonal_decide(const BooleanInstance& inst);
OrthogonalResult orthogonal_decide(const IntegerInstance& inst);

/// Each bit is independently 1 with probability `density`; pure in (n, d, density, seed).
BooleanVectorSet gen_random(Index n, Index d, double density, std::uint64_t seed);
/// Both sides drawn by gen_random from seeds derived from `seed`.
BooleanInstance gen_random_instance(Index n, Index d, double density, std::uint64_t seed);
/// Random instance with one orthogonal pair planted at a seed-determined position.
BooleanInstance gen_planted_orthogonal(Index n, Index d, std::uint64_t seed);

/// (sum x^k)^(1/k), which lies in [max, max * |values|^(1/k)].
double power_sum_estimate(std::span<const double> values, int k);

/// Deterministic stream splitting for seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// q^e for exact rationals (Boost only provides integer pow).
inline Rational pow_exact(const Rational& q, unsigned e) {
    return Rational(boost::multiprecision::pow(numerator(q), e), boost::multiprecision::pow(denominator(q), e));
}

IntegerInstance to_integer(const BooleanInstance& inst);
RealInstance to_real(const BooleanInstance& inst);

}  // namespace ipred
