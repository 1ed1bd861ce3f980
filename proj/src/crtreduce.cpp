#include "ipred/crtreduce.hpp"

#include "ipred/geomreduce.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace ipred {

namespace {

BigInt power_of(Index base, const BigInt& exp) {
    if (exp > 1u << 26) throw std::length_error("bound too large to materialize");
    return boost::multiprecision::pow(BigInt(base), exp.convert_to<unsigned>());
}

BigInt six_pow_log_star(Index b) {
    return boost::multiprecision::pow(BigInt(6), static_cast<unsigned>(log_star(static_cast<double>(b))));
}

std::uint64_t residue(const BigInt& v, std::uint64_t p) { return mod_of(v, p); }
std::uint64_t residue(std::int64_t v, std::uint64_t p) { return static_cast<std::uint64_t>(v) % p; }

bool above_range(const CrtReduction& red, const BigInt& v, RangeBound bound) {
    return bound == RangeBound::Tight ? v > red.tight_bound : v >= red.paper_bound();
}
bool above_range(const CrtReduction& red, std::int64_t v, RangeBound bound) {
    if (bound == RangeBound::Paper) return BigInt(v) >= red.paper_bound();
    return v > red.tight_bound_i64;
}

template <typename V>
std::optional<Index> level_impl(const CrtReduction& red, const V& v, RangeBound bound) {
    if (v < 0 || above_range(red, v, bound)) return std::nullopt;
    Index total = 0;
    for (std::uint64_t p : red.primes) {
        const std::uint64_t r = residue(v, p);
        if (red.arm == CrtReduction::Arm::Base) {
            if (r > static_cast<std::uint64_t>(red.ell)) return std::nullopt;
            total += static_cast<Index>(r);
        } else {
            const auto inner = level_impl(*red.inner, static_cast<std::int64_t>(r), bound);
            if (!inner) return std::nullopt;
            total += *inner;
        }
    }
    return total;
}

template <typename V>
Index decode_impl(const CrtReduction& red, const V& v) {
    Index total = 0;
    for (std::uint64_t p : red.primes) {
        const std::uint64_t r = residue(v, p);
        total += red.arm == CrtReduction::Arm::Base ? static_cast<Index>(r)
                                                    : decode_impl(*red.inner, static_cast<std::int64_t>(r));
    }
    return total;
}

void charge(std::size_t& used, const BigInt& amount, std::size_t budget) {
    if (BigInt(used) + amount > budget) {
        throw std::length_error("explicit enumeration exceeds its budget; use level_of for implicit membership");
    }
    used += amount.convert_to<std::size_t>();
}

/// Values in [0, L) whose residues are consistent with level k.
std::vector<BigInt> level_residues(const CrtReduction& red, Index k, std::size_t budget) {
    const std::size_t m = red.primes.size();
    std::vector<BigInt> out;
    std::size_t used = 0;
    if (red.arm == CrtReduction::Arm::Base) {
        std::vector<std::uint64_t> r(m, 0);
        auto rec = [&](auto&& self, std::size_t pos, Index left) -> void {
            if (pos == m) {
                if (left == 0) {
                    charge(used, 1, budget);
                    out.push_back(red.crt.combine(r));
                }
                return;
            }
            for (Index v = 0; v <= std::min(left, red.ell); ++v) {
                r[pos] = static_cast<std::uint64_t>(v);
                self(self, pos + 1, left - v);
            }
        };
        rec(rec, 0, k);
        return out;
    }
    const Index inner_max = red.inner->input_length();
    std::vector<std::vector<BigInt>> inner_levels;
    for (Index kk = 0; kk <= std::min(k, inner_max); ++kk) inner_levels.push_back(level_set(*red.inner, kk, budget));
    std::vector<const std::vector<BigInt>*> choice(m);
    std::vector<BigInt> r(m);
    auto emit = [&](auto&& self, std::size_t pos) -> void {
        if (pos == m) {
            out.push_back(red.crt.combine(r));
            return;
        }
        for (const auto& v : *choice[pos]) {
            r[pos] = v;
            self(self, pos + 1);
        }
    };
    auto compose = [&](auto&& self, std::size_t pos, Index left) -> void {
        if (pos == m) {
            if (left != 0) return;
            BigInt count = 1;
            for (const auto* c : choice) count *= c->size();
            charge(used, count, budget);
            emit(emit, 0);
            return;
        }
        for (Index v = 0; v <= std::min(left, inner_max); ++v) {
            choice[pos] = &inner_levels[static_cast<std::size_t>(v)];
            self(self, pos + 1, left - v);
        }
    };
    compose(compose, 0, k);
    return out;
}

}  // namespace

BigInt CrtReduction::paper_bound() const {
    return power_of(ell, six_pow_log_star(b) * 2 * b + 1);
}

BigInt CrtReduction::coordinate_bound() const {
    return power_of(ell, six_pow_log_star(b) * b);
}

Index micro_block_length(Index b, Index ell) {
    if (b < 1 || ell < 2) throw std::invalid_argument("micro blocks need b >= 1 and ell >= 2");
    Index best = 1;
    for (Index m = 1; m <= b; ++m) {
        // ell^e <= b with e >= m needs m <= log2(b)
        const BigInt e = six_pow_log_star(m) * m;
        if (e > 64) break;
        if (boost::multiprecision::pow(BigInt(ell), e.convert_to<unsigned>()) <= b) best = m;
    }
    return best;
}

CrtReduction build_reduction(Index b, Index ell) {
    if (b < 1 || ell < 2) throw std::invalid_argument("reduction needs b >= 1 and ell >= 2");
    CrtReduction red;
    red.b = b;
    red.ell = ell;
    if (b < ell) {
        red.arm = CrtReduction::Arm::Base;
        const auto l = static_cast<std::uint64_t>(ell);
        red.primes = smallest_primes_in(l + 1, l * l, static_cast<std::size_t>(b));
    } else {
        red.arm = CrtReduction::Arm::Recursive;
        red.b_micro = micro_block_length(b, ell);
        red.inner = std::make_shared<const CrtReduction>(build_reduction(red.b_micro, ell));
        const std::size_t k = static_cast<std::size_t>((b + red.b_micro - 1) / red.b_micro);
        const auto lo = static_cast<std::uint64_t>(b) * static_cast<std::uint64_t>(b) * static_cast<std::uint64_t>(ell);
        red.primes = smallest_primes_in(lo, lo * lo, k);
        if (red.primes.size() == k && BigInt(red.primes.front()) <= red.inner->tight_bound) {
            throw std::runtime_error("insufficient primes: inner dot products could wrap modulo p_1");
        }
    }
    const std::size_t want = red.arm == CrtReduction::Arm::Base ? static_cast<std::size_t>(b)
                                                                : static_cast<std::size_t>((b + red.b_micro - 1) / red.b_micro);
    if (red.primes.size() < want) {
        throw std::runtime_error("insufficient primes for b=" + std::to_string(b) + ", ell=" + std::to_string(ell));
    }
    red.crt = CrtBasis(red.primes);
    red.tight_bound = BigInt(ell) * (red.L() - 1) * (red.L() - 1);
    constexpr auto i64_max = std::numeric_limits<std::int64_t>::max();
    red.tight_bound_i64 = red.tight_bound < i64_max ? red.tight_bound.convert_to<std::int64_t>() : i64_max;
    return red;
}

Vector<BigInt> encode(const CrtReduction& red, const Vector<Bit>& x) {
    if (x.size() > red.input_length()) throw std::invalid_argument("input longer than b * ell");
    auto bit = [&](Index pos) -> Bit { return pos < x.size() ? x(pos) : Bit{0}; };
    Vector<BigInt> out(red.ell);
    if (red.arm == CrtReduction::Arm::Base) {
        std::vector<std::uint64_t> r(static_cast<std::size_t>(red.b));
        for (Index i = 0; i < red.ell; ++i) {
            for (Index j = 0; j < red.b; ++j) r[static_cast<std::size_t>(j)] = bit(i * red.b + j);
            out(i) = red.crt.combine(r);
        }
        return out;
    }
    const Index bm = red.b_micro;
    const std::size_t k = red.primes.size();
    // column j holds inner(x^[j]), where x^[j] joins micro-block j of every group
    Matrix<BigInt> s(red.ell, static_cast<Index>(k));
    Vector<Bit> micro(bm * red.ell);
    for (std::size_t j = 0; j < k; ++j) {
        for (Index i = 0; i < red.ell; ++i) {
            for (Index t = 0; t < bm; ++t) {
                const Index within = static_cast<Index>(j) * bm + t;
                micro(i * bm + t) = within < red.b ? bit(i * red.b + within) : Bit{0};
            }
        }
        s.col(static_cast<Index>(j)) = encode(*red.inner, micro);
    }
    std::vector<BigInt> r(k);
    for (Index i = 0; i < red.ell; ++i) {
        for (std::size_t j = 0; j < k; ++j) r[j] = s(i, static_cast<Index>(j));
        out(i) = red.crt.combine(r);
    }
    return out;
}

IntegerVectorSet encode_rows(const CrtReduction& red, const BooleanVectorSet& rows) {
    IntegerVectorSet out(rows.rows(), red.ell);
    for (Index i = 0; i < rows.rows(); ++i) out.row(i) = encode(red, rows.row(i).transpose()).transpose();
    return out;
}

std::optional<Index> level_of(const CrtReduction& red, const BigInt& v, RangeBound bound) {
    return level_impl(red, v, bound);
}
std::optional<Index> level_of(const CrtReduction& red, std::int64_t v, RangeBound bound) {
    return level_impl(red, v, bound);
}

bool is_certificate(const CrtReduction& red, const BigInt& v, RangeBound bound) {
    return level_of(red, v, bound) == Index{0};
}
bool is_certificate(const CrtReduction& red, std::int64_t v, RangeBound bound) {
    return level_of(red, v, bound) == Index{0};
}

Index decode_ip(const CrtReduction& red, const BigInt& v) { return decode_impl(red, v); }
Index decode_ip(const CrtReduction& red, std::int64_t v) { return decode_impl(red, v); }

std::vector<BigInt> level_set(const CrtReduction& red, Index k, std::size_t budget) {
    if (k < 0 || k > red.input_length()) return {};
    const auto base = level_residues(red, k, budget);
    std::size_t used = 0;
    for (const auto& c : base) {
        if (c <= red.tight_bound) charge(used, (red.tight_bound - c) / red.L() + 1, budget);
    }
    std::vector<BigInt> out;
    out.reserve(used);
    for (const auto& c : base) {
        for (BigInt v = c; v <= red.tight_bound; v += red.L()) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<BigInt> certificate_set(const CrtReduction& red, std::size_t budget) { return level_set(red, 0, budget); }

IntegerInstance zov_instance(const IntegerVectorSet& encoded_a, const IntegerVectorSet& encoded_b, const BigInt& t) {
    const Index e = encoded_a.cols();
    IntegerInstance out{IntegerVectorSet(encoded_a.rows(), e + 1), IntegerVectorSet(encoded_b.rows(), e + 1)};
    out.a.leftCols(e) = encoded_a;
    out.a.col(e).setConstant(BigInt(1));
    out.b.leftCols(e) = encoded_b;
    out.b.col(e).setConstant(BigInt(-t));
    return out;
}

namespace {

CrtReduction reduction_for(const BooleanInstance& inst, Index ell) {
    validate(inst);
    const Index d = inst.dim();
    if (ell < 2 || ell > d) throw std::invalid_argument("group count ell must satisfy 2 <= ell <= d");
    return build_reduction((d + ell - 1) / ell, ell);
}

}  // namespace

ZovFamily ov_to_zov(const BooleanInstance& inst, Index ell, std::size_t budget) {
    ZovFamily out{reduction_for(inst, ell), {}, {}};
    out.thresholds = certificate_set(out.red, budget);
    const IntegerVectorSet ea = encode_rows(out.red, inst.a);
    const IntegerVectorSet eb = encode_rows(out.red, inst.b);
    out.instances.reserve(out.thresholds.size());
    for (const auto& t : out.thresholds) out.instances.push_back(zov_instance(ea, eb, t));
    return out;
}

Index maxip_via_crt_queries(const BooleanInstance& inst, Index ell, const ZeroOptTest& solver, std::size_t budget) {
    const CrtReduction red = reduction_for(inst, ell);
    if (inst.a.rows() == 0 || inst.b.rows() == 0) throw std::invalid_argument("empty instance");
    const IntegerVectorSet ea = encode_rows(red, inst.a);
    const IntegerVectorSet eb = encode_rows(red, inst.b);
    for (Index k = inst.dim(); k >= 1; --k) {
        for (const auto& t : level_set(red, k, budget)) {
            if (solver(zov_to_zmaxip_tensor(zov_instance(ea, eb, t)))) return k;
        }
    }
    return 0;
}

ReductionTable table_of(const CrtReduction& red) {
    const Index len = red.input_length();
    if (len > 20) throw std::length_error("table too large");
    ReductionTable table{red.b, red.ell, {}};
    Vector<Bit> x(len);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
        for (Index i = 0; i < len; ++i) x(i) = (mask >> i) & 1u;
        const Vector<BigInt> img = encode(red, x);
        Vector<std::int64_t> small(red.ell);
        for (Index i = 0; i < red.ell; ++i) small(i) = img(i).convert_to<std::int64_t>();
        table.images.push_back(small);
    }
    return table;
}

std::optional<std::vector<std::int64_t>> validate_candidate_reduction(const ReductionTable& table) {
    const std::size_t count = table.images.size();
    std::set<std::int64_t> d0, d1;
    for (std::size_t x = 0; x < count; ++x) {
        for (std::size_t y = 0; y < count; ++y) {
            const std::int64_t v = table.images[x].dot(table.images[y]);
            ((x & y) == 0 ? d0 : d1).insert(v);
        }
    }
    for (auto v : d0) {
        if (d1.count(v)) return std::nullopt;
    }
    return std::vector<std::int64_t>(d0.begin(), d0.end());
}

std::optional<FoundReduction> brute_force_search_reduction(Index b, Index ell, std::int64_t L, std::uint64_t budget) {
    if (b < 1 || ell < 1 || L < 1) throw std::invalid_argument("search needs b, ell, L >= 1");
    const Index len = b * ell;
    if (len > 16) throw std::length_error("search space exceeds its budget");
    const std::size_t inputs = std::size_t{1} << len;
    const std::size_t cells = inputs * static_cast<std::size_t>(ell);
    BigInt tables = boost::multiprecision::pow(BigInt(L), static_cast<unsigned>(cells));
    if (tables > budget) throw std::length_error("search space exceeds its budget");

    std::vector<std::int64_t> digits(cells, 0);
    ReductionTable table{b, ell, std::vector<Vector<std::int64_t>>(inputs, Vector<std::int64_t>::Zero(ell))};
    while (true) {
        for (std::size_t x = 0; x < inputs; ++x)
            for (Index i = 0; i < ell; ++i) table.images[x](i) = digits[x * static_cast<std::size_t>(ell) + static_cast<std::size_t>(i)];
        if (auto v = validate_candidate_reduction(table)) return FoundReduction{table, *v};
        std::size_t pos = 0;
        while (pos < cells && ++digits[pos] == L) digits[pos++] = 0;
        if (pos == cells) return std::nullopt;
    }
}

}  // namespace ipred
