#include "ipred/geomreduce.hpp"

#include "ipred/crtreduce.hpp"

namespace ipred {

namespace {

BigInt row_norm_sq(const IntegerVectorSet& m, Index i) {
    BigInt acc = 0;
    for (Index k = 0; k < m.cols(); ++k) acc += m(i, k) * m(i, k);
    return acc;
}

}  // namespace

IntegerInstance zov_to_zmaxip_tensor(const IntegerInstance& inst) {
    validate(inst);
    const Index d = inst.dim();
    auto square = [d](const IntegerVectorSet& m, bool negate) {
        IntegerVectorSet out(m.rows(), d * d);
        for (Index r = 0; r < m.rows(); ++r) {
            for (Index i = 0; i < d; ++i) {
                for (Index j = 0; j < d; ++j) {
                    BigInt v = m(r, i) * m(r, j);
                    out(r, i * d + j) = negate ? BigInt(-v) : v;
                }
            }
        }
        return out;
    };
    return {square(inst.a, false), square(inst.b, true)};
}

BigInt SqrtExtPoint::norm_sq() const {
    BigInt acc = tail_a_sq + tail_b_sq;
    for (Index k = 0; k < head.size(); ++k) acc += head(k) * head(k);
    return acc;
}

SqrtExtPoint GeometryInstance::point_a(Index i) const {
    return {head_a.row(i).transpose(), tail_a[static_cast<std::size_t>(i)], BigInt(0)};
}

SqrtExtPoint GeometryInstance::point_b(Index j) const {
    return {head_b.row(j).transpose(), BigInt(0), tail_b[static_cast<std::size_t>(j)]};
}

Index bit_length_parameter(const IntegerInstance& inst) {
    const BigInt m = std::max<Index>({Index{2}, inst.a.rows(), inst.b.rows()});
    BigInt max_abs = 0;
    for (const auto* side : {&inst.a, &inst.b})
        for (Index i = 0; i < side->rows(); ++i)
            for (Index j = 0; j < side->cols(); ++j) max_abs = std::max<BigInt>(max_abs, abs((*side)(i, j)));
    Index k = 1;
    BigInt mk = m;
    while (!(max_abs < mk && mk * mk * mk > 4 * std::max<Index>(inst.dim(), 1))) {
        ++k;
        mk *= m;
    }
    return k;
}

GeometryInstance zmaxip_to_geometry(const IntegerInstance& inst, GeometryMode mode) {
    validate(inst);
    GeometryInstance g;
    g.mode = mode;
    g.n = std::max<Index>(2, inst.max_n());
    g.k = bit_length_parameter(inst);
    g.W = boost::multiprecision::pow(BigInt(g.n), static_cast<unsigned>(5 * g.k));
    g.head_a = inst.a;
    g.head_b = mode == GeometryMode::Furthest ? IntegerVectorSet(-inst.b) : inst.b;
    auto radicands = [&](const IntegerVectorSet& m) {
        std::vector<BigInt> out;
        for (Index i = 0; i < m.rows(); ++i) {
            out.push_back(g.W - row_norm_sq(m, i));
            if (out.back() < 0) throw std::logic_error("negative radicand: W is too small for this instance");
        }
        return out;
    };
    g.tail_a = radicands(g.head_a);
    g.tail_b = radicands(g.head_b);
    return g;
}

BigInt cross_distance_sq(const GeometryInstance& g, Index i, Index j) {
    BigInt acc = g.tail_a[static_cast<std::size_t>(i)] + g.tail_b[static_cast<std::size_t>(j)];
    for (Index k = 0; k < g.head_a.cols(); ++k) {
        const BigInt diff = g.head_a(i, k) - g.head_b(j, k);
        acc += diff * diff;
    }
    return acc;
}

DistanceInterval within_distance_sq(const SqrtExtPoint& p, const SqrtExtPoint& q) {
    BigInt head = 0;
    for (Index k = 0; k < p.head.size(); ++k) {
        const BigInt diff = p.head(k) - q.head(k);
        head += diff * diff;
    }
    // (sqrt a - sqrt b)^2 = a + b - 2 sqrt(ab) per tail coordinate
    DistanceInterval out{head, head};
    for (const auto& [a, b] : {std::pair{p.tail_a_sq, q.tail_a_sq}, std::pair{p.tail_b_sq, q.tail_b_sq}}) {
        const BigInt prod = a * b;
        const BigInt s = sqrt(prod);
        out.hi += a + b - 2 * s;
        out.lo += s * s == prod ? BigInt(a + b - 2 * s) : BigInt(std::max<BigInt>(0, a + b - 2 * (s + 1)));
    }
    return out;
}

ExtremePair geometry_extreme_pair(const GeometryInstance& g) {
    if (g.head_a.rows() == 0 || g.head_b.rows() == 0) throw std::invalid_argument("empty instance");
    const bool furthest = g.mode == GeometryMode::Furthest;
    // |h_i - h_j|^2 = |h_i|^2 + |h_j|^2 - 2 h_i.h_j; the Gram product carries the O(n^2 d) work
    const Matrix<BigInt> cross = gram(g.head_a, g.head_b);
    std::vector<BigInt> full_a, full_b;
    for (Index i = 0; i < g.head_a.rows(); ++i) full_a.push_back(row_norm_sq(g.head_a, i) + g.tail_a[static_cast<std::size_t>(i)]);
    for (Index j = 0; j < g.head_b.rows(); ++j) full_b.push_back(row_norm_sq(g.head_b, j) + g.tail_b[static_cast<std::size_t>(j)]);

    ExtremePair best;
    bool have = false;
    for (Index i = 0; i < g.head_a.rows(); ++i) {
        for (Index j = 0; j < g.head_b.rows(); ++j) {
            BigInt dist = full_a[static_cast<std::size_t>(i)] + full_b[static_cast<std::size_t>(j)] - 2 * cross(i, j);
            if (!have || (furthest ? dist > best.distance_sq : dist < best.distance_sq)) {
                best.pair = {i, j};
                best.distance_sq = std::move(dist);
                have = true;
            }
        }
    }
    const BigInt twice_w = 2 * g.W;
    best.decoded_opt = furthest ? BigInt((best.distance_sq - twice_w) / 2) : BigInt((twice_w - best.distance_sq) / 2);
    if (!furthest) return best;

    // cheap per-side bound first: max head spread plus the radicand spread
    auto side_hi = [&](const IntegerVectorSet& heads, const std::vector<BigInt>& tails, bool tail_is_a) {
        const Matrix<BigInt> self = gram(heads, heads);
        BigInt spread = 0;
        for (Index i = 0; i < heads.rows(); ++i)
            for (Index j = i + 1; j < heads.rows(); ++j) spread = std::max<BigInt>(spread, self(i, i) + self(j, j) - 2 * self(i, j));
        const auto [lo_it, hi_it] = std::minmax_element(tails.begin(), tails.end());
        BigInt bound = spread + (*hi_it - *lo_it);
        if (bound < best.distance_sq || heads.rows() < 2) return heads.rows() < 2 ? BigInt(0) : bound;
        BigInt refined = 0;
        for (Index i = 0; i < heads.rows(); ++i) {
            for (Index j = i + 1; j < heads.rows(); ++j) {
                const SqrtExtPoint p{heads.row(i).transpose(), tail_is_a ? tails[static_cast<std::size_t>(i)] : BigInt(0),
                                     tail_is_a ? BigInt(0) : tails[static_cast<std::size_t>(i)]};
                const SqrtExtPoint q{heads.row(j).transpose(), tail_is_a ? tails[static_cast<std::size_t>(j)] : BigInt(0),
                                     tail_is_a ? BigInt(0) : tails[static_cast<std::size_t>(j)]};
                refined = std::max<BigInt>(refined, within_distance_sq(p, q).hi);
            }
        }
        return refined;
    };
    best.within_class_hi = std::max<BigInt>(side_hi(g.head_a, g.tail_a, true), side_hi(g.head_b, g.tail_b, false));
    if (best.within_class_hi >= best.distance_sq) {
        throw std::runtime_error("furthest pair is not provably a cross pair");
    }
    return best;
}

GeometryDecision ov_to_geometry_decide(const BooleanInstance& inst, Index ell, GeometryMode mode) {
    const ZovFamily family = ov_to_zov(inst, ell);
    GeometryDecision out;
    for (const auto& zov : family.instances) {
        ++out.instances_checked;
        const auto geom = zmaxip_to_geometry(zov_to_zmaxip_tensor(zov), mode);
        if (geometry_extreme_pair(geom).decoded_opt == 0) {
            out.found = true;
            break;
        }
    }
    return out;
}

}  // namespace ipred
