#include <doctest.h>

#include "ipred/sample_additive.hpp"
#include "oracle.hpp"

#include <cmath>
#include <random>

using namespace ipred;

TEST_CASE("sampled dimension uses the natural log") {
    // eps1 = 4/(2*64) = 1/32; 2 * 32^2 * ln 8 = 4258.7...
    CHECK(sampled_dimension(8, 64, 4.0) == static_cast<Index>(std::ceil(2.0 * 1024.0 * std::log(8.0))));
    CHECK(sampled_dimension(128, 200, 50.0) == 622);
    CHECK(sampled_dimension(1, 10, 2.0) >= 1);
    CHECK_THROWS_AS(sampled_dimension(4, 8, -1.0), std::invalid_argument);
}

TEST_CASE("plans are deterministic and fall back when sampling cannot shrink d") {
    const auto p = make_sample_plan(16, 64, 16.0, 9, {.allow_exact_fallback = false, .d1 = 20});
    const auto q = make_sample_plan(16, 64, 16.0, 9, {.allow_exact_fallback = false, .d1 = 20});
    CHECK(p.indices == q.indices);
    CHECK(p.indices.size() == 20);
    CHECK(std::all_of(p.indices.begin(), p.indices.end(), [](Index i) { return i >= 0 && i < 64; }));
    CHECK(make_sample_plan(16, 64, 2.0, 9).exact_fallback);
    CHECK(make_sample_plan(16, 64, 0.0, 9).exact_fallback);
}

TEST_CASE("all-ones instance is recovered exactly") {
    const Index d = 300;
    BooleanInstance ones{BooleanVectorSet::Ones(2, d), BooleanVectorSet::Ones(3, d)};
    const auto res = approx_additive(ones, 150.0, 4);
    CHECK_FALSE(res.plan.exact_fallback);
    CHECK(res.value == doctest::Approx(static_cast<double>(d)));
}

TEST_CASE("t >= d is answered unconditionally") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto inst = gen_random_instance(6, 10, 0.5, seed);
        const auto res = approx_additive(inst, 10.0, seed);
        CHECK(res.trivial);
        CHECK(std::abs(res.value - static_cast<double>(oracle::max_ip(inst))) <= 10.0);
    }
    CHECK_THROWS_AS(approx_additive(gen_random_instance(2, 4, 0.5, 1), -1.0, 0), std::invalid_argument);
}

TEST_CASE("small instance meets its budget in most trials") {
    BooleanInstance inst{BooleanVectorSet{{1, 1, 1, 1, 1, 0, 0, 0},
                                          {0, 1, 0, 1, 0, 1, 0, 1},
                                          {1, 0, 0, 0, 0, 0, 0, 1},
                                          {0, 0, 1, 1, 0, 0, 1, 1}},
                         BooleanVectorSet{{1, 1, 1, 1, 1, 1, 0, 0},
                                          {1, 0, 1, 0, 1, 0, 1, 0},
                                          {0, 0, 0, 0, 0, 0, 1, 1},
                                          {0, 1, 1, 0, 0, 1, 1, 0}}};
    REQUIRE(oracle::max_ip(inst) == 5);
    int good = 0;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        // forced sampling: the planned d1 already exceeds d = 8
        const auto res = approx_additive(inst, 4.0, seed, {.allow_exact_fallback = false, .d1 = 8});
        good += std::abs(res.value - 5.0) <= 4.0;
    }
    CHECK(good >= 300);
}

TEST_CASE("all_pair_additive") {
    BooleanInstance ones_self{BooleanVectorSet::Ones(1, 64), BooleanVectorSet::Ones(1, 64)};
    CHECK(all_pair_additive(ones_self, 16.0, 1, {.allow_exact_fallback = false, .d1 = 30}).values[0] == 64.0);

    const auto inst = gen_random_instance(8, 20, 0.5, 6);
    const auto exact = all_pair_additive(inst, 0.0, 1);
    CHECK(exact.plan.exact_fallback);
    for (Index i = 0; i < 8; ++i)
        CHECK(exact.values[static_cast<std::size_t>(i)] == static_cast<double>(oracle::row_max_ip(inst, i)));

    int all_good = 0;
    const auto big = gen_random_instance(8, 64, 0.5, 12);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto r = all_pair_additive(big, 16.0, seed);
        bool ok = true;
        for (Index i = 0; i < 8; ++i)
            ok &= std::abs(r.values[static_cast<std::size_t>(i)] - static_cast<double>(oracle::row_max_ip(big, i))) <= 16.0;
        all_good += ok;
    }
    CHECK(all_good >= 175);
}

TEST_CASE("per-pair deviation respects the Chernoff bound") {
    const Index d = 200, d1 = 50;
    const double eps1 = 0.1;
    std::mt19937_64 rng(77);
    const auto inst = gen_random_instance(1, d, 0.5, 31);
    const double exact = static_cast<double>(oracle::row_dot(inst.a, 0, inst.b, 0)) / static_cast<double>(d);
    int fails = 0;
    const int trials = 10000;
    for (int k = 0; k < trials; ++k) {
        const auto plan = make_sample_plan(1, d, 10.0, rng(), {.allow_exact_fallback = false, .d1 = d1});
        const BooleanVectorSet sa = restrict_columns(inst.a, plan.indices), sb = restrict_columns(inst.b, plan.indices);
        const double est = static_cast<double>(oracle::row_dot(sa, 0, sb, 0)) / static_cast<double>(d1);
        fails += std::abs(est - exact) >= eps1;
    }
    CHECK(static_cast<double>(fails) / trials <= 2.0 * chernoff_pair_bound(d1, eps1));
}
