#pragma once

#include "ipred/core.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ipred {

/// Coefficients of the multilinearized (z_1 + ... + z_d)^r: c[s] multiplies every z_S with |S| = s.
struct PowerSumCoefficients {
    Index d = 0;
    int r = 0;
    /// c[s] for s = 0..min(r, d); c[0] = 0 for r >= 1.
    std::vector<BigInt> c;

    const BigInt& of_size(Index s) const { return c.at(static_cast<std::size_t>(s)); }
};

/// c_s = number of surjections from an r-set onto an s-set.
PowerSumCoefficients compute_power_coeffs(Index d, int r);

/// Number of monomials z_S with |S| <= r, and of degree-r multisets over d variables.
BigInt boolean_monomial_count(Index d, int r);
BigInt real_monomial_count(Index d, int r);

/// floor(t^(r/2)), at least 1.
Index blocking_size(double t, int r);

/// Entry (i, j) is sum over x in block i of A, y in block j of B, of (x.y)^r. Blocks are
/// consecutive runs of `block` rows (the last may be shorter).
Matrix<BigInt> batch_power_sums(const BooleanVectorSet& a, const BooleanVectorSet& b, int r, Index block);
Matrix<Rational> batch_power_sums(const RealVectorSet& a, const RealVectorSet& b, int r, Index block);

/// Degree suggested by the exponent heuristic; only a starting point, see MultOptions::r.
int default_degree(Index n, Index d, double t);

struct MultOptions {
    std::optional<int> r;
    /// Largest monomial count allowed before r is lowered.
    std::uint64_t monomial_budget = std::uint64_t{1} << 22;
};

struct MultApprox {
    double value = 0.0;
    int r = 1;
    Index block = 1;
    bool r_lowered = false;
};

struct AllPairMultApprox {
    std::vector<double> values;
    int r = 1;
    Index block = 1;
    bool r_lowered = false;
};

/// OPT <= value <= t * OPT. Boolean mode is exact about it; the real mode's root may sit
/// up to one ulp below OPT.
MultApprox approx_mult(const BooleanInstance& inst, double t, const MultOptions& opts = {});
MultApprox approx_mult(const RealInstance& inst, double t, const MultOptions& opts = {});

/// Per row x of A: OPT(x, B) <= values[x] <= t * OPT(x, B). Only B is blocked, with block
/// size floor(t^r).
AllPairMultApprox all_pair_approx_mult(const BooleanInstance& inst, double t, const MultOptions& opts = {});

/// Largest double v >= floor(s^(1/r)) with v^r <= s.
double root_floor(const BigInt& s, int r);
/// Largest double v with v^r <= s.
double root_floor(const Rational& s, int r);

}  // namespace ipred
