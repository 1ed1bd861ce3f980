#pragma once

#include "ipred/core.hpp"
#include "ipred/numtheory.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace ipred {

/// The map psi_{b,ell}: b*ell bits -> ell non-negative integers, either a direct CRT encoding
/// (b < ell) or a CRT encoding of an inner reduction applied to micro-blocks.
struct CrtReduction {
    enum class Arm { Base, Recursive };

    Index b = 0;
    Index ell = 0;
    Arm arm = Arm::Base;
    /// q_1 < ... < q_b (base) or p_1 < ... < p_k (recursive).
    std::vector<std::uint64_t> primes;
    Index b_micro = 0;
    std::shared_ptr<const CrtReduction> inner;
    CrtBasis crt;
    /// ell * (L - 1)^2, the largest realizable psi(x).psi(y).
    BigInt tight_bound;
    /// tight_bound when it fits, INT64_MAX otherwise.
    std::int64_t tight_bound_i64 = 0;

    Index input_length() const { return b * ell; }
    /// Product of the top-level primes; every coordinate lies in [0, L).
    const BigInt& L() const { return crt.product; }
    /// ell^(6^log*(b) * 2b + 1), exclusive.
    BigInt paper_bound() const;
    /// ell^(6^log*(b) * b), exclusive.
    BigInt coordinate_bound() const;
};

/// Throws std::invalid_argument for b < 1 or ell < 2, std::runtime_error("insufficient primes ...")
/// when the prime interval is too small.
CrtReduction build_reduction(Index b, Index ell);

/// Largest m >= 1 with ell^(6^log*(m) * m) <= b.
Index micro_block_length(Index b, Index ell);

/// psi(x); inputs shorter than b*ell are zero-padded.
Vector<BigInt> encode(const CrtReduction& red, const Vector<Bit>& x);
/// Row-wise encode.
IntegerVectorSet encode_rows(const CrtReduction& red, const BooleanVectorSet& rows);

enum class RangeBound { Tight, Paper };

/// k when v can only arise as psi(x).psi(y) with x.y = k, nullopt when v is not of that shape
/// (some residue is out of range or v exceeds the range bound).
std::optional<Index> level_of(const CrtReduction& red, const BigInt& v, RangeBound bound = RangeBound::Tight);
std::optional<Index> level_of(const CrtReduction& red, std::int64_t v, RangeBound bound = RangeBound::Tight);

/// Membership in V: level_of(v) == 0.
bool is_certificate(const CrtReduction& red, const BigInt& v, RangeBound bound = RangeBound::Tight);
bool is_certificate(const CrtReduction& red, std::int64_t v, RangeBound bound = RangeBound::Tight);

/// Sum of (recursively decoded) residues; equals x.y whenever v = psi(x).psi(y).
Index decode_ip(const CrtReduction& red, const BigInt& v);
Index decode_ip(const CrtReduction& red, std::int64_t v);

inline constexpr std::size_t kDefaultEnumerationBudget = std::size_t{1} << 22;

/// Sorted explicit V^k within the tight bound. Throws std::length_error when it would exceed
/// `budget` members; use level_of for implicit membership instead.
std::vector<BigInt> level_set(const CrtReduction& red, Index k, std::size_t budget = kDefaultEnumerationBudget);
/// Sorted explicit V = V^0.
std::vector<BigInt> certificate_set(const CrtReduction& red, std::size_t budget = kDefaultEnumerationBudget);

/// One Z-OV instance per certificate value t: A rows [psi(u), 1], B rows [psi(v), -t].
struct ZovFamily {
    CrtReduction red;
    std::vector<BigInt> thresholds;
    std::vector<IntegerInstance> instances;
};

/// Requires 2 <= ell <= d.
ZovFamily ov_to_zov(const BooleanInstance& inst, Index ell, std::size_t budget = kDefaultEnumerationBudget);

/// [psi rows | 1] against [psi rows | -t].
IntegerInstance zov_instance(const IntegerVectorSet& encoded_a, const IntegerVectorSet& encoded_b, const BigInt& t);

/// Answers "is OPT = 0" for the tensor-squared Z-Max-IP instances handed to it.
using ZeroOptTest = std::function<bool(const IntegerInstance&)>;

/// Exact OPT(A, B) from zero-tests alone, scanning levels from d down to 1.
Index maxip_via_crt_queries(const BooleanInstance& inst, Index ell, const ZeroOptTest& solver,
                            std::size_t budget = kDefaultEnumerationBudget);

/// A candidate map {0,1}^(b*ell) -> Z^ell, stored by input bitmask (bit i is x_i).
struct ReductionTable {
    Index b = 0;
    Index ell = 0;
    std::vector<Vector<std::int64_t>> images;
};

ReductionTable table_of(const CrtReduction& red);

/// D0 = {phi(x).phi(y) : x.y = 0}; returns D0 (sorted) if it misses every value of x.y != 0 pairs.
std::optional<std::vector<std::int64_t>> validate_candidate_reduction(const ReductionTable& table);

struct FoundReduction {
    ReductionTable table;
    std::vector<std::int64_t> v;
};

/// Enumerates every table into {0..L-1}^ell in odometer order. Throws std::length_error when
/// L^(ell * 2^(b*ell)) exceeds `budget`.
std::optional<FoundReduction> brute_force_search_reduction(Index b, Index ell, std::int64_t L,
                                                           std::uint64_t budget = std::uint64_t{1} << 24);

}  // namespace ipred
