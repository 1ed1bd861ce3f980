#pragma once

#include "ipred/core.hpp"

#include <array>
#include <optional>
#include <vector>

namespace ipred {

/// A symmetric function on {0,1}^d given by its values on Hamming weights 0..d.
struct SymmetricPoly {
    Index d = 0;
    /// Degree as a multilinear polynomial.
    Index degree = 0;
    std::vector<Rational> values;
};

/// Close to 1 at weight 0 and to 0 elsewhere: values[0] >= 1 - eps, values[w] <= eps for w >= 1,
/// all values in [0, 1]. Built from a squared, rescaled Chebyshev polynomial. Throws
/// std::runtime_error if the degree would exceed `max_degree`.
SymmetricPoly build_or_approx_poly(Index d, const Rational& eps, std::optional<Index> max_degree = std::nullopt);

/// ceil(2 sqrt(d ln(1/eps))).
Index or_degree_envelope(Index d, double eps);

/// c[s] = E_x chi_S(x) P(x) for any |S| = s, with chi_S(x) = (-1)^(sum_{i in S} x_i).
struct FourierCoeffs {
    Index d = 0;
    Index degree = 0;
    std::vector<Rational> c;
};

FourierCoeffs fourier_transform(const SymmetricPoly& p);

/// sum_S c[|S|] chi_S(x) at a point of Hamming weight w.
Rational fourier_eval(const FourierCoeffs& f, Index w);

/// Integer coefficients of the scaled polynomial in the monomial basis z_T.
struct StandardCoeffs {
    Index d = 0;
    Index degree = 0;
    /// Number of monomials of degree <= degree.
    BigInt M;
    /// 2M / eps.
    Rational scale;
    /// floor(c_s * scale).
    std::vector<BigInt> c_hat;
    /// Coefficient of every z_T with |T| = t.
    std::vector<BigInt> c_tilde;
    /// ceil(M^2 * 2^degree * 2 / eps); bounds every |c_tilde|.
    BigInt B;
};

StandardCoeffs compile_standard_coeffs(const FourierCoeffs& f, const Rational& eps);

/// P-hat at a point of Hamming weight w, through the character expansion.
BigInt scaled_eval_fourier(const StandardCoeffs& s, Index w);
/// The same value through c_tilde: sum_t c_tilde[t] C(w, t).
BigInt scaled_eval_standard(const StandardCoeffs& s, Index w);

/// psi_x(a) . psi_y(b) = lambda * a * b for a, b in {-1, 0, 1}; psi(-1) = -psi(1).
struct Gadget {
    Index width = 0;
    std::int64_t lambda = 0;
    std::vector<std::int8_t> x_one, x_zero, y_one, y_zero;

    std::vector<std::int8_t> x(int a) const;
    std::vector<std::int8_t> y(int b) const;
};

/// First gadget found by exhaustive search over even widths up to max_width, with lambda > 0.
std::optional<Gadget> find_gadget(Index max_width = 8);

/// Explicit +-1 encodings. Throws std::length_error when g * B * M exceeds `budget`.
std::vector<std::int8_t> pm1_encode_x(const Vector<Bit>& x, const StandardCoeffs& s, const Gadget& g,
                                      std::size_t budget = std::size_t{1} << 24);
std::vector<std::int8_t> pm1_encode_y(const Vector<Bit>& y, const StandardCoeffs& s, const Gadget& g,
                                      std::size_t budget = std::size_t{1} << 24);

/// lambda * P-hat(x AND y) without materializing the vectors.
BigInt implicit_dot(const Vector<Bit>& x, const Vector<Bit>& y, const StandardCoeffs& s, const Gadget& g);

struct PM1GapInstance {
    BooleanInstance source;
    Rational eps;
    Rational inner_eps;
    StandardCoeffs coeffs;
    Gadget gadget;
    /// g * B * M.
    BigInt dimension;
    /// Reached by some pair when the source has an orthogonal pair.
    Rational threshold;
    /// |dot| never exceeds this when it has none; equals threshold * eps' * 2 / (1 - 2 eps').
    Rational no_bound;
    /// Present when materialized.
    std::optional<VectorSet<std::int8_t>> a;
    std::optional<VectorSet<std::int8_t>> b;

    BigInt dot(Index i, Index j) const;
};

/// Inner error eps' = eps / 3. Explicit vectors are built when d <= explicit_max_d.
PM1GapInstance ov_to_pm1_gap(const BooleanInstance& inst, const Rational& eps, Index explicit_max_d = 2);

/// Exact OPT of the gap instance, via the implicit evaluator.
BigInt pm1_opt(const PM1GapInstance& g);

}  // namespace ipred
