#include <doctest.h>

#include "ipred/combinatorics.hpp"
#include "ipred/core.hpp"
#include "ipred/numtheory.hpp"
#include "oracle.hpp"

#include <random>

using namespace ipred;

TEST_CASE("gen_random respects the density extremes") {
    const auto zero = gen_random(2, 3, 0.0, 7);
    const auto full = gen_random(2, 3, 1.0, 7);
    CHECK(zero.rows() == 2);
    CHECK(zero.cols() == 3);
    CHECK((zero.array() == 0).all());
    CHECK((full.array() == 1).all());
    CHECK_THROWS_AS(gen_random(2, 3, 1.5, 7), std::invalid_argument);
}

TEST_CASE("generators are pure in their seed") {
    CHECK(gen_random(8, 6, 0.5, 1) == gen_random(8, 6, 0.5, 1));
    CHECK(gen_random(8, 6, 0.5, 1) != gen_random(8, 6, 0.5, 2));
    const auto p1 = gen_planted_orthogonal(16, 8, 3);
    const auto p2 = gen_planted_orthogonal(16, 8, 3);
    CHECK(p1.a == p2.a);
    CHECK(p1.b == p2.b);
}

TEST_CASE("planted instances contain an orthogonal pair") {
    const auto single = gen_planted_orthogonal(1, 2, 0);
    CHECK(oracle::row_dot(single.a, 0, single.b, 0) == 0);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto inst = gen_planted_orthogonal(16, 8, seed);
        CHECK(oracle::has_orthogonal(inst));
        CHECK(orthogonal_decide(inst).found);
    }
}

TEST_CASE("max_ip_exact small cases") {
    BooleanInstance inst{BooleanVectorSet{{1, 1, 0}}, BooleanVectorSet{{1, 0, 1}}};
    auto res = max_ip_exact(inst);
    CHECK(res.value == 1);
    CHECK(res.arg == ArgPair{0, 0});

    BooleanInstance zeros{BooleanVectorSet{{0, 0}}, BooleanVectorSet{{0, 0}}};
    CHECK(max_ip_exact(zeros).value == 0);

    BooleanInstance empty{BooleanVectorSet(0, 2), BooleanVectorSet{{0, 0}}};
    CHECK_THROWS_WITH_AS(max_ip_exact(empty), "empty instance", std::invalid_argument);
}

TEST_CASE("max_ip_exact ties go to the lexicographically smallest pair") {
    BooleanInstance inst{BooleanVectorSet{{0, 1}, {1, 0}, {1, 1}}, BooleanVectorSet{{1, 0}, {0, 1}}};
    const auto res = max_ip_exact(inst);
    CHECK(res.value == 1);
    CHECK(res.arg == ArgPair{0, 1});
}

TEST_CASE("max_ip_exact matches the double loop on random instances") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto inst = gen_random_instance(1 + seed % 9, 1 + seed % 7, 0.5, seed);
        const auto res = max_ip_exact(inst);
        CHECK(res.value == oracle::max_ip(inst));
        CHECK(oracle::row_dot(inst.a, res.arg.a, inst.b, res.arg.b) == res.value);
        for (Index i = 0; i < inst.a.rows(); ++i)
            for (Index j = 0; j < inst.b.rows(); ++j) CHECK(res.value >= oracle::row_dot(inst.a, i, inst.b, j));
    }
}

TEST_CASE("integer and rational oracles") {
    IntegerInstance zi{IntegerVectorSet{{BigInt(2), BigInt(-3)}, {BigInt(1), BigInt(1)}},
                       IntegerVectorSet{{BigInt(3), BigInt(2)}, {BigInt(-1), BigInt(5)}}};
    const auto res = max_ip_exact(zi);
    CHECK(res.value == 5);
    CHECK(res.arg == ArgPair{1, 0});
    const auto ov = orthogonal_decide(zi);
    REQUIRE(ov.found);
    CHECK(*ov.witness == ArgPair{0, 0});

    // values big enough to force the BigInt product path
    const BigInt huge = BigInt(1) << 200;
    IntegerInstance big{IntegerVectorSet{{huge, BigInt(1)}}, IntegerVectorSet{{huge, BigInt(-1)}}};
    CHECK(max_ip_exact(big).value == huge * huge - 1);

    RealInstance q{RealVectorSet{{Rational(1, 2), Rational(1, 3)}}, RealVectorSet{{Rational(2), Rational(3)}}};
    CHECK(max_ip_exact(q).value == Rational(2));
    RealInstance neg{RealVectorSet{{Rational(-1)}}, RealVectorSet{{Rational(1)}}};
    CHECK_THROWS_AS(validate(neg), std::invalid_argument);
}

TEST_CASE("orthogonal_decide agrees with the exhaustive scan") {
    BooleanInstance yes{BooleanVectorSet{{1, 0}}, BooleanVectorSet{{0, 1}}};
    CHECK(orthogonal_decide(yes).found);
    CHECK(*orthogonal_decide(yes).witness == ArgPair{0, 0});
    BooleanInstance no{BooleanVectorSet{{1, 1}}, BooleanVectorSet{{1, 1}}};
    CHECK_FALSE(orthogonal_decide(no).found);
    CHECK_FALSE(orthogonal_decide(no).witness.has_value());
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto inst = gen_random_instance(6, 5, 0.6, seed);
        CHECK(orthogonal_decide(inst).found == oracle::has_orthogonal(inst));
    }
}

TEST_CASE("validate rejects mismatched dimensions and non-bits") {
    BooleanInstance mismatch{BooleanVectorSet{{1, 0}}, BooleanVectorSet{{1, 0, 1}}};
    CHECK_THROWS_AS(validate(mismatch), std::invalid_argument);
    BooleanInstance bad{BooleanVectorSet{{2, 0}}, BooleanVectorSet{{1, 0}}};
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("power_sum_estimate") {
    const std::vector<double> one{3.0};
    CHECK(power_sum_estimate(one, 5) == doctest::Approx(3.0));
    const std::vector<double> twos{2, 2, 2, 2};
    CHECK(power_sum_estimate(twos, 2) == doctest::Approx(4.0));
    const std::vector<double> zeros{0, 0};
    CHECK(power_sum_estimate(zeros, 3) == 0.0);
    CHECK_THROWS_AS(power_sum_estimate(one, 0), std::invalid_argument);
}

TEST_CASE("power_sum_estimate stays in its bracket") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> size(1, 30);
    std::uniform_int_distribution<int> kdist(1, 12);
    std::uniform_real_distribution<double> val(0.0, 100.0);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> xs(static_cast<std::size_t>(size(rng)));
        for (auto& x : xs) x = val(rng);
        const int k = kdist(rng);
        const double mx = *std::max_element(xs.begin(), xs.end());
        const double est = power_sum_estimate(xs, k);
        CHECK(est >= mx * (1 - 1e-12));
        CHECK(est <= mx * std::pow(static_cast<double>(xs.size()), 1.0 / k) * (1 + 1e-12));
    }
}

TEST_CASE("number theory helpers") {
    CHECK(smallest_primes_in(4, 9, 5) == std::vector<std::uint64_t>{5, 7});
    CHECK(smallest_primes_in(32, 1024, 4) == std::vector<std::uint64_t>{37, 41, 43, 47});
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(2));
    CHECK(is_prime(257));
    CHECK(mod_inverse(3, 7) == 5);
    CHECK(mod_pow(3, 6, 7) == 1);
    CHECK(mod_of(BigInt(-3), 5) == 2);
    const CrtBasis crt({5, 7});
    CHECK(crt.product == 35);
    CHECK(crt.combine(std::vector<int>{1, 0}) == 21);
    CHECK(crt.combine(std::vector<int>{0, 1}) == 15);
    CHECK(log_star(1) == 0);
    CHECK(log_star(2) == 1);
    CHECK(log_star(4) == 2);
    CHECK(log_star(16) == 3);
    CHECK(log_star(17) == 4);
    CHECK(ceil_log2(1024) == 10);
    CHECK(ceil_log2(1025) == 11);
}

TEST_CASE("subset ranking is a bijection onto [0, count)") {
    const Index d = 7, r = 3;
    SubsetRanker ranker(d, r);
    CHECK(ranker.count() == binomial_prefix(d, r));
    std::vector<Index> all(static_cast<std::size_t>(d));
    std::iota(all.begin(), all.end(), 0);
    std::vector<int> seen(static_cast<std::size_t>(ranker.count()), 0);
    for_each_subset_upto(std::span<const Index>(all), r, [&](std::span<const Index> s) { ++seen.at(ranker.rank(s)); });
    CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
    CHECK(binomial(6, 3) == 20);
    CHECK(binomial(3, 5) == 0);
}
