#pragma once

#include "ipred/core.hpp"
#include "ipred/crtreduce.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ipred {

struct CostReport {
    std::uint64_t advice_bits = 0;
    std::uint64_t coin_bits = 0;
    std::uint64_t message_bits = 0;
    std::uint64_t rounds = 0;
};

// ---- Reed-Solomon inner-product protocol over F_q ----

struct RsParams {
    Index n = 0;
    Index T = 1;
    std::uint64_t q = 0;

    Index block_len() const { return (n + T - 1) / T; }
    /// Largest advice length, 2 * block_len - 1 coefficients.
    Index advice_len() const { return 2 * block_len() - 1; }
};

/// Throws std::invalid_argument unless q is prime and q > 2 * block_len.
void check_params(const RsParams& p);

/// Coefficients of s (lowest degree first); s sums to x.y mod q over the points 0..block_len-1.
struct RsAdvice {
    std::vector<std::uint64_t> coeffs;
};

struct RsOutcome {
    bool accepted = false;
    /// Alice's output, the advice's sum over the interpolation points.
    std::uint64_t claimed = 0;
    std::uint64_t alpha = 0;
    CostReport cost;
};

/// Value at alpha of the degree < block_len polynomial through block i of x.
std::uint64_t rs_block_eval(const RsParams& p, std::span<const Bit> x, Index block, std::uint64_t alpha);
RsAdvice rs_honest_advice(const RsParams& p, std::span<const Bit> x, std::span<const Bit> y);
std::uint64_t rs_claimed_value(const RsParams& p, const RsAdvice& advice);
std::uint64_t rs_eval(const RsAdvice& advice, std::uint64_t alpha, std::uint64_t q);
/// Bob's message: py_i(alpha) for every block.
std::vector<std::uint64_t> rs_bob_message(const RsParams& p, std::span<const Bit> y, std::uint64_t alpha);
bool rs_alice_check(const RsParams& p, std::span<const Bit> x, const RsAdvice& advice,
                    const std::vector<std::uint64_t>& message, std::uint64_t alpha);

/// One run; honest advice is computed when none is given.
RsOutcome rs_ip_mod_protocol(std::span<const Bit> x, std::span<const Bit> y, std::uint64_t q, Index T,
                             const std::optional<RsAdvice>& advice, std::uint64_t seed);

/// Every alpha in F_q at which Alice accepts.
std::vector<std::uint64_t> rs_accepting_alphas(const RsParams& p, std::span<const Bit> x, std::span<const Bit> y,
                                               const RsAdvice& advice);

/// Advice that claims `claimed` and agrees with the honest polynomial at as many points as the
/// degree allows.
RsAdvice rs_cheating_advice(const RsParams& p, std::span<const Bit> x, std::span<const Bit> y, std::uint64_t claimed);

/// Largest number of accepting alphas over all advice claiming a wrong value, by enumeration.
/// Throws std::length_error when q^advice_len exceeds `budget`.
std::uint64_t rs_best_cheater_accepts(const RsParams& p, std::span<const Bit> x, std::span<const Bit> y,
                                      std::uint64_t budget = std::uint64_t{1} << 22);

/// (2 * block_len - 2) / q.
double rs_soundness_bound(const RsParams& p);

CostReport protocol_cost(const RsParams& p);

// ---- multi-prime wrapper ----

struct WrapperParams {
    Index n = 0;
    Index T = 1;
    Index rho = 1;
    std::vector<std::uint64_t> primes;
    /// Primes were taken above rho^2 because [rho + 1, rho^2] had too few usable ones.
    bool extended_range = false;
};

/// Smallest rho with rho^rho >= n.
Index rho_for(Index n);
/// ceil(sqrt(n * ceil(log2 n) / ceil(log2 ceil(log2 n)))), with the logs clamped to >= 1.
Index default_block_count(Index n);
/// Throws std::runtime_error when the standard range is short and `allow_extended` is false.
WrapperParams make_wrapper_params(Index n, std::optional<Index> T = std::nullopt, bool allow_extended = true);

struct WrapperAdvice {
    std::uint64_t z = 0;
    std::vector<RsAdvice> packages;
};

WrapperAdvice wrapper_honest_advice(const WrapperParams& p, std::span<const Bit> x, std::span<const Bit> y);
/// Honest packages on primes dividing |x.y - z|, maximal-agreement cheating packages elsewhere.
WrapperAdvice wrapper_cheating_advice(const WrapperParams& p, std::span<const Bit> x, std::span<const Bit> y,
                                      std::uint64_t z);

struct WrapperOutcome {
    bool accepted = false;
    bool z_consistent = false;
    std::uint64_t z = 0;
    std::size_t prime_index = 0;
    std::uint64_t alpha = 0;
    CostReport cost;
    bool extended_range = false;
};

WrapperOutcome ma_disj_improved(std::span<const Bit> x, std::span<const Bit> y, const WrapperParams& p,
                                const std::optional<WrapperAdvice>& advice, std::uint64_t seed);

/// Exact acceptance probability of a fixed advice, averaged over prime index and alpha.
Rational wrapper_accept_probability(const WrapperParams& p, std::span<const Bit> x, std::span<const Bit> y,
                                    const WrapperAdvice& advice);

/// Fraction of the wrapper's primes dividing |ip - z|.
Rational bad_prime_fraction(const WrapperParams& p, std::uint64_t ip, std::uint64_t z);

/// Worst-case cost over prime choices.
CostReport protocol_cost(const WrapperParams& p);

// ---- advice enumeration: OV -> Boolean gap Max-IP ----

/// A small MA protocol for "x.y = 0": blocks of two bits, one field element per block message,
/// coins drawn as r-bit strings reduced mod q.
struct ToyProtocol {
    Index d = 0;
    RsParams rs;
    std::uint64_t field_bits = 0;
    Index reps = 1;

    std::uint64_t advice_bits() const { return static_cast<std::uint64_t>(rs.advice_len()) * field_bits; }
    std::uint64_t coin_bits() const { return field_bits * static_cast<std::uint64_t>(reps); }
    std::uint64_t message_bits() const { return static_cast<std::uint64_t>(rs.T) * field_bits * static_cast<std::uint64_t>(reps); }
    /// Per-repetition acceptance bound raised to the repetition count.
    double soundness() const;
};

/// reps = 0 picks the fewest repetitions with soundness <= eps.
ToyProtocol make_toy_protocol(Index d, double eps, Index reps);

/// Number of coin strings on which Alice accepts, by direct simulation.
std::uint64_t toy_accept_count(const ToyProtocol& proto, std::span<const Bit> x, std::span<const Bit> y,
                               std::uint64_t advice);
/// The advice string that encodes the honest polynomial.
std::uint64_t toy_honest_advice(const ToyProtocol& proto, std::span<const Bit> x, std::span<const Bit> y);

Vector<Bit> toy_alice_vector(const ToyProtocol& proto, std::span<const Bit> x, std::uint64_t advice);
Vector<Bit> toy_bob_vector(const ToyProtocol& proto, std::span<const Bit> y);

struct GapFamily {
    ToyProtocol proto;
    /// Indexed by advice string.
    std::vector<BooleanInstance> instances;
    std::uint64_t threshold = 0;
    double soundness = 0.0;
};

/// One instance per advice string. Throws std::length_error when advice bits or the vector
/// dimension exceed the budgets.
GapFamily ov_to_maxip_gap(const BooleanInstance& inst, double eps, Index reps, std::uint64_t max_advice_bits = 12,
                          std::uint64_t max_dimension_bits = 16);

// ---- NP.UPP vector family ----

struct NpUppFamily {
    CrtReduction red;
    std::vector<BigInt> thresholds;

    std::size_t size() const { return thresholds.size(); }
    Index dim() const { return (red.ell + 1) * (red.ell + 1); }
    Vector<BigInt> alice(std::size_t i, const Vector<Bit>& x) const;
    Vector<BigInt> bob(std::size_t i, const Vector<Bit>& y) const;
};

NpUppFamily np_upp_family(Index d, Index ell, std::size_t budget = kDefaultEnumerationBudget);

/// 1/2 + u.v / (2 |v|_1 |u|_inf). Throws std::invalid_argument on a zero vector.
Rational upp_simulate(const Vector<Rational>& u, const Vector<Rational>& v);
Rational upp_simulate(const Vector<BigInt>& u, const Vector<BigInt>& v);

/// Yes iff some family index gives some pair acceptance probability >= 1/2.
bool upp_reduction_decide(const BooleanInstance& inst, Index ell);

}  // namespace ipred
