#pragma once

#include "ipred/core.hpp"

#include <vector>

namespace ipred {

/// A rows x (x) x, B rows -(y (x) y): every cross dot becomes -(x.y)^2.
IntegerInstance zov_to_zmaxip_tensor(const IntegerInstance& inst);

enum class GeometryMode { Furthest, Closest };

/// (head, sqrt(tail_a_sq), sqrt(tail_b_sq)) with the square roots kept formal.
struct SqrtExtPoint {
    Vector<BigInt> head;
    BigInt tail_a_sq;
    BigInt tail_b_sq;

    BigInt norm_sq() const;
};

struct GeometryInstance {
    IntegerVectorSet head_a;
    IntegerVectorSet head_b;
    /// Radicands of the appended coordinate (third-to-last for A, last for B).
    std::vector<BigInt> tail_a;
    std::vector<BigInt> tail_b;
    BigInt W;
    Index k = 1;
    Index n = 0;
    GeometryMode mode = GeometryMode::Furthest;

    SqrtExtPoint point_a(Index i) const;
    SqrtExtPoint point_b(Index j) const;
};

/// Smallest k >= 1 with every |entry| < m^k and m^(3k) > 4d, where m = max(2, nA, nB).
Index bit_length_parameter(const IntegerInstance& inst);

GeometryInstance zmaxip_to_geometry(const IntegerInstance& inst, GeometryMode mode);

/// Exact squared distance between A point i and B point j.
BigInt cross_distance_sq(const GeometryInstance& g, Index i, Index j);

struct DistanceInterval {
    BigInt lo;
    BigInt hi;
};

/// Bounds on |p - q|^2 for two points of the same side, from an integer square root of the
/// radicand product.
DistanceInterval within_distance_sq(const SqrtExtPoint& p, const SqrtExtPoint& q);

struct ExtremePair {
    ArgPair pair;
    BigInt distance_sq;
    BigInt decoded_opt;
    /// Furthest mode: largest upper bound over same-side pairs. Zero in closest mode, where only
    /// cross pairs compete.
    BigInt within_class_hi;
};

/// Furthest or bichromatic closest pair by exhaustive scan. Ties go to the smallest (i, j).
/// Furthest mode throws std::runtime_error if a same-side pair could be at least as far apart.
ExtremePair geometry_extreme_pair(const GeometryInstance& g);

struct GeometryDecision {
    bool found = false;
    std::size_t instances_checked = 0;
};

/// OV -> Z-OV family -> tensor -> geometry -> decoded OPT; yes iff some chained instance decodes to 0.
GeometryDecision ov_to_geometry_decide(const BooleanInstance& inst, Index ell, GeometryMode mode);

}  // namespace ipred
