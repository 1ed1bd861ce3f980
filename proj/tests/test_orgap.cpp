#include <doctest.h>

#include "ipred/combinatorics.hpp"
#include "ipred/orgap.hpp"
#include "oracle.hpp"

#include <bit>

using namespace ipred;

namespace {

int chi(std::uint32_t s_mask, std::uint32_t x_mask) { return std::popcount(s_mask & x_mask) % 2 ? -1 : 1; }

std::int64_t dot8(const std::vector<std::int8_t>& u, const std::vector<std::int8_t>& v) {
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
    return acc;
}

Vector<Bit> bits(std::uint32_t mask, Index d) {
    Vector<Bit> v(d);
    for (Index i = 0; i < d; ++i) v(i) = (mask >> i) & 1;
    return v;
}

struct PM1View {
    VectorSet<std::int8_t> a, b;
};

}  // namespace

TEST_CASE("OR polynomial on one bit is the exact complement") {
    for (auto eps : {Rational(1, 3), Rational(1, 100), Rational(9, 10)}) {
        auto p = build_or_approx_poly(1, eps);
        CHECK(p.degree == 1);
        CHECK(p.values == std::vector<Rational>{1, 0});
    }
}

TEST_CASE("OR polynomial error and degree envelope over a grid") {
    const std::vector<Rational> grid{Rational(1, 3), Rational(1, 4), Rational(1, 8), Rational(1, 16), Rational(1, 100)};
    for (Index d = 1; d <= 24; ++d) {
        for (const auto& eps : grid) {
            auto p = build_or_approx_poly(d, eps);
            REQUIRE(p.values.size() == static_cast<std::size_t>(d + 1));
            CHECK(p.values[0] >= 1 - eps);
            for (Index w = 0; w <= d; ++w) {
                CHECK(p.values[w] >= 0);
                CHECK(p.values[w] <= 1);
                if (w > 0) CHECK(p.values[w] <= eps);
            }
            CHECK(p.degree <= d);
            CHECK(p.degree <= or_degree_envelope(d, static_cast<double>(eps)));
        }
    }
}

TEST_CASE("OR polynomial worked cases") {
    auto p4 = build_or_approx_poly(4, Rational(1, 3));
    for (Index w = 0; w <= 4; ++w) CHECK(abs(p4.values[w] - (w == 0 ? 1 : 0)) <= Rational(1, 3));

    auto p16 = build_or_approx_poly(16, Rational(1, 8));
    CHECK(p16.values.size() == 17);
    CHECK(p16.degree == 10);
    for (Index w = 1; w <= 16; ++w) CHECK(p16.values[w] <= Rational(1, 8));

    CHECK_THROWS_AS(build_or_approx_poly(16, Rational(1, 8), Index{4}), std::runtime_error);
    CHECK_THROWS_AS(build_or_approx_poly(0, Rational(1, 8)), std::invalid_argument);
    CHECK_THROWS_AS(build_or_approx_poly(3, Rational(0)), std::invalid_argument);
}

TEST_CASE("Fourier coefficients of small polynomials") {
    auto f1 = fourier_transform(build_or_approx_poly(1, Rational(1, 3)));
    CHECK(f1.c == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});

    SymmetricPoly one{5, 5, std::vector<Rational>(6, Rational(1))};
    auto f = fourier_transform(one);
    CHECK(f.c[0] == 1);
    for (std::size_t s = 1; s < f.c.size(); ++s) CHECK(f.c[s] == 0);
}

TEST_CASE("Fourier reconstruction is exact on the whole cube") {
    for (Index d = 1; d <= 10; ++d) {
        auto p = build_or_approx_poly(d, Rational(1, 5));
        // Full-length transform: coefficients above the degree must vanish.
        SymmetricPoly wide = p;
        wide.degree = d;
        auto full = fourier_transform(wide);
        for (Index s = p.degree + 1; s <= d; ++s) CHECK(full.c[s] == 0);
        for (const auto& c : full.c) CHECK(abs(c) <= 1);

        auto f = fourier_transform(p);
        const std::uint32_t cube = 1u << d;
        for (std::uint32_t x = 0; x < cube; ++x) {
            std::vector<std::int64_t> by_size(static_cast<std::size_t>(d + 1), 0);
            for (std::uint32_t s = 0; s < cube; ++s) by_size[std::popcount(s)] += chi(s, x);
            Rational acc = 0;
            for (Index k = 0; k <= p.degree; ++k) acc += f.c[k] * by_size[k];
            CHECK(acc == p.values[std::popcount(x)]);
        }
    }
}

TEST_CASE("Standard coefficients: worked example and zero polynomial") {
    auto s = compile_standard_coeffs(fourier_transform(build_or_approx_poly(1, Rational(1, 3))), Rational(1, 3));
    CHECK(s.scale == 12);
    CHECK(s.c_hat == std::vector<BigInt>{6, 6});
    CHECK(s.c_tilde == std::vector<BigInt>{12, -12});
    CHECK(scaled_eval_standard(s, 0) == 12);
    CHECK(scaled_eval_standard(s, 1) == 0);

    FourierCoeffs zero{4, 2, {0, 0, 0}};
    auto z = compile_standard_coeffs(zero, Rational(1, 4));
    for (const auto& c : z.c_hat) CHECK(c == 0);
    for (const auto& c : z.c_tilde) CHECK(c == 0);
}

TEST_CASE("Basis change identity and discretization error on the whole cube") {
    for (Index d = 1; d <= 6; ++d) {
        for (auto eps : {Rational(1, 3), Rational(1, 7)}) {
            auto p = build_or_approx_poly(d, eps);
            auto s = compile_standard_coeffs(fourier_transform(p), eps);
            CHECK(s.M == binomial_prefix(d, p.degree));
            for (const auto& c : s.c_tilde) CHECK(abs(c) <= s.B);
            const std::uint32_t cube = 1u << d;
            for (std::uint32_t z = 0; z < cube; ++z) {
                BigInt via_chars = 0, via_monomials = 0;
                for (std::uint32_t t = 0; t < cube; ++t) {
                    const int k = std::popcount(t);
                    if (k > p.degree) continue;
                    via_chars += s.c_hat[k] * chi(t, z);
                    if ((t & z) == t) via_monomials += s.c_tilde[k];
                }
                CHECK(via_chars == via_monomials);
                CHECK(via_chars == scaled_eval_fourier(s, std::popcount(z)));
                CHECK(via_monomials == scaled_eval_standard(s, std::popcount(z)));
                CHECK(abs(Rational(via_chars) / s.scale - p.values[std::popcount(z)]) <= eps);
            }
        }
    }
}

TEST_CASE("Gadget search") {
    CHECK_FALSE(find_gadget(2).has_value());
    auto g = find_gadget(8);
    REQUIRE(g.has_value());
    CHECK(g->width == 4);
    CHECK(g->lambda > 0);
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b) CHECK(dot8(g->x(a), g->y(b)) == g->lambda * a * b);

    // The two-wide lift with psi_x(0) = (-1, 1), psi_y(0) = (1, -1) breaks at (0, 0).
    CHECK(dot8({-1, 1}, {1, -1}) == -2);
}

TEST_CASE("Explicit and implicit dots agree on every pair at d = 2") {
    const Rational eps(1, 3);
    auto s = compile_standard_coeffs(fourier_transform(build_or_approx_poly(2, eps)), eps);
    auto g = *find_gadget(8);
    for (std::uint32_t xm = 0; xm < 4; ++xm)
        for (std::uint32_t ym = 0; ym < 4; ++ym) {
            auto ex = pm1_encode_x(bits(xm, 2), s, g);
            auto ey = pm1_encode_y(bits(ym, 2), s, g);
            REQUIRE(BigInt(ex.size()) == BigInt(g.width) * s.B * s.M);
            for (auto e : ex) CHECK((e == 1 || e == -1));
            CHECK(BigInt(dot8(ex, ey)) == implicit_dot(bits(xm, 2), bits(ym, 2), s, g));
        }
    auto ones = bits(3, 2);
    CHECK(implicit_dot(ones, ones, s, g) == g.lambda * scaled_eval_fourier(s, 2));
    CHECK_THROWS_AS(pm1_encode_x(ones, s, g, 100), std::length_error);
}

TEST_CASE("OV to +-1 gap instances") {
    const Rational eps(1, 3);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto yes = gen_planted_orthogonal(4, 2, seed);
        auto gy = ov_to_pm1_gap(yes, eps);
        REQUIRE(gy.a.has_value());
        CHECK(BigInt(gy.a->cols()) == gy.dimension);
        CHECK(Rational(oracle::max_ip(PM1View{*gy.a, *gy.b})) >= gy.threshold);
        CHECK(Rational(pm1_opt(gy)) >= gy.threshold);
        for (Index i = 0; i < 4; ++i)
            for (Index j = 0; j < 4; ++j) CHECK(BigInt(oracle::row_dot(*gy.a, i, *gy.b, j)) == gy.dot(i, j));
    }
    BooleanInstance ones{BooleanVectorSet::Ones(4, 2), BooleanVectorSet::Ones(4, 2)};
    auto gn = ov_to_pm1_gap(ones, eps);
    CHECK(gn.no_bound <= gn.threshold * eps);
    for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j < 4; ++j) CHECK(abs(Rational(oracle::row_dot(*gn.a, i, *gn.b, j))) <= gn.no_bound);
}

TEST_CASE("Implicit gap instances at larger d") {
    for (Index d : {6, 12}) {
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            auto inst = gen_random_instance(6, d, 0.6, seed);
            auto g = ov_to_pm1_gap(inst, Rational(1, 4));
            CHECK_FALSE(g.a.has_value());
            const bool yes = oracle::has_orthogonal(inst);
            for (Index i = 0; i < 6; ++i)
                for (Index j = 0; j < 6; ++j) {
                    const bool orth = oracle::row_dot(inst.a, i, inst.b, j) == 0;
                    const Rational v(g.dot(i, j));
                    if (orth) CHECK(v >= g.threshold);
                    else CHECK(abs(v) <= g.threshold * g.eps);
                }
            if (yes) CHECK(Rational(pm1_opt(g)) >= g.threshold);
        }
    }
}
