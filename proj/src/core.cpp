#include "ipred/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

namespace ipred {

namespace {

template <typename Scalar>
void check_sides(const Instance<Scalar>& inst) {
    if (inst.a.cols() != inst.b.cols()) {
        throw std::invalid_argument("instance sides have different dimensions");
    }
}

template <typename Scalar>
void check_nonempty(const Instance<Scalar>& inst) {
    if (inst.a.rows() == 0 || inst.b.rows() == 0) throw std::invalid_argument("empty instance");
}

template <typename Scalar, typename G>
MaxIpResult<Scalar> argmax_of(const G& g) {
    MaxIpResult<Scalar> best{g(0, 0), ArgPair{0, 0}};
    for (Index i = 0; i < g.rows(); ++i) {
        for (Index j = 0; j < g.cols(); ++j) {
            if (g(i, j) > best.value) best = {g(i, j), ArgPair{i, j}};
        }
    }
    return best;
}

template <typename G>
OrthogonalResult first_zero(const G& g) {
    for (Index i = 0; i < g.rows(); ++i) {
        for (Index j = 0; j < g.cols(); ++j) {
            if (g(i, j) == 0) return {true, ArgPair{i, j}};
        }
    }
    return {};
}

std::size_t max_bits(const IntegerVectorSet& m) {
    std::size_t bits = 0;
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            const auto& v = m(i, j);
            if (v != 0) bits = std::max<std::size_t>(bits, boost::multiprecision::msb(abs(v)) + 1);
        }
    }
    return bits;
}

}  // namespace

void validate(const BooleanInstance& inst) {
    check_sides(inst);
    auto is_bit = [](const BooleanVectorSet& m) { return (m.array() <= Bit{1}).all(); };
    if (!is_bit(inst.a) || !is_bit(inst.b)) throw std::invalid_argument("boolean entry outside {0,1}");
}

void validate(const IntegerInstance& inst) { check_sides(inst); }

void validate(const RealInstance& inst) {
    check_sides(inst);
    for (const auto* m : {&inst.a, &inst.b}) {
        for (Index i = 0; i < m->rows(); ++i) {
            for (Index j = 0; j < m->cols(); ++j) {
                if ((*m)(i, j) < 0) throw std::invalid_argument("negative entry in non-negative real instance");
            }
        }
    }
}

Matrix<std::int64_t> gram(const BooleanVectorSet& a, const BooleanVectorSet& b) {
    return a.cast<std::int64_t>() * b.cast<std::int64_t>().transpose();
}

Matrix<BigInt> gram(const IntegerVectorSet& a, const IntegerVectorSet& b) {
    const std::size_t d = static_cast<std::size_t>(std::max<Index>(a.cols(), 1));
    const std::size_t dbits = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(d)))) + 1;
    if (max_bits(a) + max_bits(b) + dbits < 62) {
        auto small = [](const IntegerVectorSet& m) {
            Matrix<std::int64_t> out(m.rows(), m.cols());
            for (Index i = 0; i < m.rows(); ++i)
                for (Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).convert_to<std::int64_t>();
            return out;
        };
        const Matrix<std::int64_t> g = small(a) * small(b).transpose();
        return g.cast<BigInt>();
    }
    return a * b.transpose();
}

Matrix<Rational> gram(const RealVectorSet& a, const RealVectorSet& b) { return a * b.transpose(); }

MaxIpResult<Bit> max_ip_exact(const BooleanInstance& inst) {
    check_sides(inst);
    check_nonempty(inst);
    return argmax_of<Bit>(gram(inst.a, inst.b));
}

MaxIpResult<BigInt> max_ip_exact(const IntegerInstance& inst) {
    check_sides(inst);
    check_nonempty(inst);
    return argmax_of<BigInt>(gram(inst.a, inst.b));
}

MaxIpResult<Rational> max_ip_exact(const RealInstance& inst) {
    check_sides(inst);
    check_nonempty(inst);
    return argmax_of<Rational>(gram(inst.a, inst.b));
}

OrthogonalResult orthogonal_decide(const BooleanInstance& inst) {
    check_sides(inst);
    check_nonempty(inst);
    return first_zero(gram(inst.a, inst.b));
}

OrthogonalResult orthogonal_decide(const IntegerInstance& inst) {
    check_sides(inst);
    check_nonempty(inst);
    return first_zero(gram(inst.a, inst.b));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

BooleanVectorSet gen_random(Index n, Index d, double density, std::uint64_t seed) {
    if (!(density >= 0.0 && density <= 1.0)) throw std::invalid_argument("density must lie in [0,1]");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(density);
    BooleanVectorSet out(n, d);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < d; ++j) out(i, j) = coin(rng) ? 1 : 0;
    return out;
}

BooleanInstance gen_random_instance(Index n, Index d, double density, std::uint64_t seed) {
    return {gen_random(n, d, density, derive_seed(seed, 1)), gen_random(n, d, density, derive_seed(seed, 2))};
}

BooleanInstance gen_planted_orthogonal(Index n, Index d, std::uint64_t seed) {
    if (n < 1 || d < 1) throw std::invalid_argument("planted instance needs n >= 1 and d >= 1");
    BooleanInstance inst = gen_random_instance(n, d, 0.5, seed);
    std::mt19937_64 rng(derive_seed(seed, 3));
    std::uniform_int_distribution<Index> pick(0, n - 1);
    const Index i = pick(rng);
    const Index j = pick(rng);
    for (Index k = 0; k < d; ++k) {
        if (inst.a(i, k) == 1) inst.b(j, k) = 0;
    }
    return inst;
}

double power_sum_estimate(std::span<const double> values, int k) {
    if (k < 1) throw std::invalid_argument("power_sum_estimate needs k >= 1");
    if (values.empty()) throw std::invalid_argument("power_sum_estimate needs a non-empty multiset");
    double mx = 0.0;
    for (double v : values) {
        if (v < 0) throw std::invalid_argument("power_sum_estimate needs non-negative values");
        mx = std::max(mx, v);
    }
    if (mx == 0.0) return 0.0;
    // scaled so the largest term is exactly 1
    double sum = 0.0;
    for (double v : values) sum += std::pow(v / mx, k);
    return mx * std::pow(sum, 1.0 / k);
}

IntegerInstance to_integer(const BooleanInstance& inst) {
    return {inst.a.cast<BigInt>(), inst.b.cast<BigInt>()};
}

RealInstance to_real(const BooleanInstance& inst) {
    return {inst.a.cast<Rational>(), inst.b.cast<Rational>()};
}

}  // namespace ipred
