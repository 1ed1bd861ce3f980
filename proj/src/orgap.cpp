#include "ipred/orgap.hpp"

#include "ipred/combinatorics.hpp"
#include "ipred/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace ipred {

namespace {

BigInt floor_of(const Rational& q) {
    BigInt n = numerator(q), d = denominator(q);
    BigInt f = n / d;
    if (n % d != 0 && n < 0) f -= 1;
    return f;
}

BigInt ceil_of(const Rational& q) { return -floor_of(-q); }

Rational chebyshev(Index k, const Rational& z) {
    Rational prev = 1, cur = z;
    if (k == 0) return prev;
    for (Index i = 1; i < k; ++i) {
        Rational next = 2 * z * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// K_s(w) = sum_j (-1)^j C(w, j) C(d - w, s - j)
BigInt krawtchouk(Index d, Index s, Index w) {
    BigInt acc = 0;
    for (Index j = 0; j <= s && j <= w; ++j) {
        if (s - j > d - w) continue;
        BigInt term = binomial(w, j) * binomial(d - w, s - j);
        if (j % 2) acc -= term;
        else acc += term;
    }
    return acc;
}

void check_eps(const Rational& eps) {
    if (eps <= 0 || eps >= 1) throw std::invalid_argument("eps must lie in (0, 1)");
}

}  // namespace

Index or_degree_envelope(Index d, double eps) {
    return static_cast<Index>(std::ceil(2.0 * std::sqrt(static_cast<double>(d) * std::log(1.0 / eps))));
}

SymmetricPoly build_or_approx_poly(Index d, const Rational& eps, std::optional<Index> max_degree) {
    if (d < 1) throw std::invalid_argument("d must be at least 1");
    check_eps(eps);
    SymmetricPoly p;
    p.d = d;
    if (d == 1) {
        p.degree = 1;
        p.values = {Rational(1), Rational(0)};
    } else {
        const Rational z0(d, d - 1);
        const Rational target = 1 / eps;
        Index k = 1;
        Rational top = chebyshev(k, z0);
        while (top * top < target) top = chebyshev(++k, z0);
        const Rational norm = top * top;
        p.degree = std::min<Index>(2 * k, d);
        p.values.reserve(static_cast<std::size_t>(d + 1));
        for (Index w = 0; w <= d; ++w) {
            Rational t = chebyshev(k, Rational(d - w, d - 1));
            p.values.push_back(t * t / norm);
        }
    }
    if (max_degree && p.degree > *max_degree)
        throw std::runtime_error("OR polynomial degree " + std::to_string(p.degree) + " exceeds budget " +
                                 std::to_string(*max_degree));
    return p;
}

FourierCoeffs fourier_transform(const SymmetricPoly& p) {
    FourierCoeffs f;
    f.d = p.d;
    f.degree = p.degree;
    const Rational inv = Rational(1, 1) / Rational(BigInt(1) << static_cast<unsigned>(p.d));
    for (Index s = 0; s <= p.degree; ++s) {
        Rational acc = 0;
        for (Index w = 0; w <= p.d; ++w) acc += p.values[static_cast<std::size_t>(w)] * binomial(p.d, w) * krawtchouk(p.d, s, w);
        // Weight classes are counted from the x side, so divide by the number of S of size s.
        f.c.push_back(acc * inv / Rational(binomial(p.d, s)));
    }
    return f;
}

Rational fourier_eval(const FourierCoeffs& f, Index w) {
    Rational acc = 0;
    for (Index s = 0; s < static_cast<Index>(f.c.size()); ++s) acc += f.c[static_cast<std::size_t>(s)] * krawtchouk(f.d, s, w);
    return acc;
}

StandardCoeffs compile_standard_coeffs(const FourierCoeffs& f, const Rational& eps) {
    check_eps(eps);
    StandardCoeffs s;
    s.d = f.d;
    s.degree = f.degree;
    s.M = binomial_prefix(f.d, f.degree);
    s.scale = Rational(2 * s.M) / eps;
    for (const auto& c : f.c) s.c_hat.push_back(floor_of(c * s.scale));
    for (Index t = 0; t <= f.degree; ++t) {
        BigInt acc = 0;
        for (Index u = t; u <= f.degree; ++u) acc += binomial(f.d - t, u - t) * s.c_hat[static_cast<std::size_t>(u)];
        BigInt sign_pow = BigInt(1) << static_cast<unsigned>(t);
        s.c_tilde.push_back(t % 2 ? BigInt(-sign_pow * acc) : BigInt(sign_pow * acc));
    }
    s.B = ceil_of(Rational(s.M * s.M * (BigInt(1) << static_cast<unsigned>(f.degree)) * 2) / eps);
    return s;
}

BigInt scaled_eval_fourier(const StandardCoeffs& s, Index w) {
    BigInt acc = 0;
    for (Index u = 0; u <= s.degree; ++u) acc += s.c_hat[static_cast<std::size_t>(u)] * krawtchouk(s.d, u, w);
    return acc;
}

BigInt scaled_eval_standard(const StandardCoeffs& s, Index w) {
    BigInt acc = 0;
    for (Index t = 0; t <= s.degree && t <= w; ++t) acc += s.c_tilde[static_cast<std::size_t>(t)] * binomial(w, t);
    return acc;
}

std::vector<std::int8_t> Gadget::x(int a) const {
    if (a == 0) return x_zero;
    auto v = x_one;
    if (a < 0)
        for (auto& e : v) e = static_cast<std::int8_t>(-e);
    return v;
}

std::vector<std::int8_t> Gadget::y(int b) const {
    if (b == 0) return y_zero;
    auto v = y_one;
    if (b < 0)
        for (auto& e : v) e = static_cast<std::int8_t>(-e);
    return v;
}

std::optional<Gadget> find_gadget(Index max_width) {
    auto unpack = [](std::uint32_t mask, Index g) {
        std::vector<std::int8_t> v(static_cast<std::size_t>(g));
        for (Index i = 0; i < g; ++i) v[static_cast<std::size_t>(i)] = (mask >> i) & 1 ? -1 : 1;
        return v;
    };
    auto dotv = [](const std::vector<std::int8_t>& u, const std::vector<std::int8_t>& v) {
        std::int64_t acc = 0;
        for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
        return acc;
    };
    // Negating one coordinate in all four vectors keeps every product, so x_one = (1, ..., 1).
    for (Index g = 2; g <= max_width; g += 2) {
        const std::uint32_t limit = 1u << g;
        const auto x1 = unpack(0, g);
        for (std::uint32_t my1 = 0; my1 < limit; ++my1) {
            const auto y1 = unpack(my1, g);
            const std::int64_t lambda = dotv(x1, y1);
            if (lambda <= 0) continue;
            for (std::uint32_t mx0 = 0; mx0 < limit; ++mx0) {
                const auto x0 = unpack(mx0, g);
                if (dotv(x0, y1) != 0) continue;
                for (std::uint32_t my0 = 0; my0 < limit; ++my0) {
                    const auto y0 = unpack(my0, g);
                    if (dotv(x1, y0) != 0 || dotv(x0, y0) != 0) continue;
                    return Gadget{g, lambda, x1, x0, y1, y0};
                }
            }
        }
    }
    return std::nullopt;
}

namespace {

std::vector<std::int8_t> encode_side(const Vector<Bit>& v, const StandardCoeffs& s, const Gadget& g, bool x_side,
                                     std::size_t budget) {
    if (v.size() != s.d) throw std::invalid_argument("vector length does not match coefficients");
    const BigInt dim = BigInt(g.width) * s.B * s.M;
    if (dim > BigInt(budget))
        throw std::length_error("explicit encoding of width " + dim.str() + " exceeds budget; use implicit_dot");
    const auto block = static_cast<std::size_t>(s.B);
    const auto width = static_cast<std::size_t>(g.width);
    std::vector<std::int8_t> out(static_cast<std::size_t>(dim));
    const auto lift_zero = x_side ? g.x(0) : g.y(0);
    for (std::size_t p = 0; p < out.size(); p += width) std::copy(lift_zero.begin(), lift_zero.end(), out.begin() + p);

    SubsetRanker ranker(s.d, s.degree);
    std::vector<Index> all(static_cast<std::size_t>(s.d));
    for (Index i = 0; i < s.d; ++i) all[static_cast<std::size_t>(i)] = i;
    for_each_subset_upto(std::span<const Index>(all), s.degree, [&](std::span<const Index> t) {
        bool on = true;
        for (Index i : t) on = on && v(i) != 0;
        if (!on) return;
        const BigInt& c = s.c_tilde[t.size()];
        const auto len = static_cast<std::size_t>(abs(c));
        const int val = x_side ? (c < 0 ? -1 : 1) : 1;
        const auto lifted = x_side ? g.x(val) : g.y(val);
        const std::size_t base = static_cast<std::size_t>(ranker.rank(t)) * block * width;
        for (std::size_t p = 0; p < len; ++p) std::copy(lifted.begin(), lifted.end(), out.begin() + base + p * width);
    });
    return out;
}

}  // namespace

std::vector<std::int8_t> pm1_encode_x(const Vector<Bit>& x, const StandardCoeffs& s, const Gadget& g, std::size_t budget) {
    return encode_side(x, s, g, true, budget);
}

std::vector<std::int8_t> pm1_encode_y(const Vector<Bit>& y, const StandardCoeffs& s, const Gadget& g, std::size_t budget) {
    return encode_side(y, s, g, false, budget);
}

BigInt implicit_dot(const Vector<Bit>& x, const Vector<Bit>& y, const StandardCoeffs& s, const Gadget& g) {
    if (x.size() != s.d || y.size() != s.d) throw std::invalid_argument("vector length does not match coefficients");
    Index w = 0;
    for (Index i = 0; i < s.d; ++i) w += (x(i) && y(i)) ? 1 : 0;
    return g.lambda * scaled_eval_standard(s, w);
}

BigInt PM1GapInstance::dot(Index i, Index j) const {
    return implicit_dot(source.a.row(i).transpose(), source.b.row(j).transpose(), coeffs, gadget);
}

PM1GapInstance ov_to_pm1_gap(const BooleanInstance& inst, const Rational& eps, Index explicit_max_d) {
    validate(inst);
    check_eps(eps);
    static const Gadget gadget = *find_gadget(8);
    PM1GapInstance g;
    g.source = inst;
    g.eps = eps;
    g.inner_eps = eps / 3;
    const auto poly = build_or_approx_poly(std::max<Index>(inst.dim(), 1), g.inner_eps);
    g.coeffs = compile_standard_coeffs(fourier_transform(poly), g.inner_eps);
    g.gadget = gadget;
    g.dimension = BigInt(gadget.width) * g.coeffs.B * g.coeffs.M;
    const Rational full = Rational(gadget.lambda) * g.coeffs.scale;
    g.threshold = full * (1 - 2 * g.inner_eps);
    g.no_bound = full * 2 * g.inner_eps;
    if (inst.dim() >= 1 && inst.dim() <= explicit_max_d) {
        const auto width = static_cast<Index>(g.dimension);
        auto side = [&](const BooleanVectorSet& src, bool x_side) {
            VectorSet<std::int8_t> out(src.rows(), width);
            for (Index i = 0; i < src.rows(); ++i) {
                const Vector<Bit> row = src.row(i).transpose();
                auto enc = x_side ? pm1_encode_x(row, g.coeffs, gadget) : pm1_encode_y(row, g.coeffs, gadget);
                for (Index k = 0; k < width; ++k) out(i, k) = enc[static_cast<std::size_t>(k)];
            }
            return out;
        };
        g.a = side(inst.a, true);
        g.b = side(inst.b, false);
    }
    return g;
}

BigInt pm1_opt(const PM1GapInstance& g) {
    const Index na = g.source.a.rows(), nb = g.source.b.rows();
    if (na == 0 || nb == 0) throw std::invalid_argument("empty instance");
    std::vector<BigInt> best(static_cast<std::size_t>(na));
    parallel_for(na, [&](std::ptrdiff_t i) {
        BigInt m = g.dot(i, 0);
        for (Index j = 1; j < nb; ++j) m = std::max(m, g.dot(i, j));
        best[static_cast<std::size_t>(i)] = m;
    });
    return *std::max_element(best.begin(), best.end());
}

}  // namespace ipred
