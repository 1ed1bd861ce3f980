#pragma once

#include "ipred/core.hpp"

#include <cstdint>
#include <vector>

namespace ipred {

/// Deterministic trial division; intended for the modest magnitudes used here.
bool is_prime(std::uint64_t n);

/// The `count` smallest primes in [lo, hi], ascending. Fewer are returned if the range runs out.
std::vector<std::uint64_t> smallest_primes_in(std::uint64_t lo, std::uint64_t hi, std::size_t count);

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t mod);
std::uint64_t mod_of(const BigInt& v, std::uint64_t mod);

/// Chinese remainder basis for pairwise coprime moduli: e_j = 1 (mod m_j), 0 (mod m_i), i != j.
struct CrtBasis {
    std::vector<std::uint64_t> moduli;
    std::vector<BigInt> basis;
    BigInt product;

    CrtBasis() : product(1) {}
    explicit CrtBasis(std::vector<std::uint64_t> mods);

    /// The unique value in [0, product) with the given residues.
    template <typename Residues>
    BigInt combine(const Residues& residues) const {
        BigInt acc = 0;
        for (std::size_t j = 0; j < basis.size(); ++j) acc += basis[j] * BigInt(residues[j]);
        return acc % product;
    }
};

/// Ceiling of log2(x) for x >= 1; 0 for x <= 1.
std::uint64_t ceil_log2(std::uint64_t x);
/// Number of bits to write any value in [0, x).
std::uint64_t bits_for(std::uint64_t x);

/// Iterated base-2 logarithm: 0 for m <= 1, else 1 + log*(log2 m).
int log_star(double m);

}  // namespace ipred
