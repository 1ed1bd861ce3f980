#include "ipred/sample_additive.hpp"

#include "ipred/parallel.hpp"

#include <cmath>
#include <random>

namespace ipred {

namespace {

void check_budget(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("additive error t must be non-negative");
}

double max_popcount(const BooleanVectorSet& m) {
    Index best = 0;
    for (Index i = 0; i < m.rows(); ++i) best = std::max<Index>(best, m.row(i).cast<Index>().sum());
    return static_cast<double>(best);
}

}  // namespace

Index sampled_dimension(Index n, Index d, double t) {
    check_budget(t);
    if (d < 1 || t == 0.0) return d;
    const double eps1 = t / static_cast<double>(d) / 2.0;
    const double log_n = std::log(static_cast<double>(std::max<Index>(n, 2)));
    const double d1 = std::ceil(2.0 * log_n / (eps1 * eps1));
    return d1 > 1e15 ? Index{1} << 50 : std::max<Index>(1, static_cast<Index>(d1));
}

SamplePlan make_sample_plan(Index n, Index d, double t, std::uint64_t seed, const AdditiveOptions& opts) {
    check_budget(t);
    SamplePlan plan;
    plan.epsilon1 = d > 0 ? t / static_cast<double>(d) / 2.0 : 0.0;
    plan.d1 = opts.d1 ? *opts.d1 : sampled_dimension(n, d, t);
    if (plan.d1 < 1) throw std::invalid_argument("sampled dimension must be at least 1");
    if (d == 0 || t == 0.0 || (opts.allow_exact_fallback && plan.d1 >= d)) {
        plan.exact_fallback = true;
        plan.d1 = d;
        return plan;
    }
    std::mt19937_64 rng(derive_seed(seed, 17));
    std::uniform_int_distribution<Index> pick(0, d - 1);
    plan.indices.resize(static_cast<std::size_t>(plan.d1));
    for (auto& idx : plan.indices) idx = pick(rng);
    return plan;
}

BooleanVectorSet restrict_columns(const BooleanVectorSet& m, const std::vector<Index>& indices) {
    return m(Eigen::all, indices);
}

AdditiveApprox approx_additive(const BooleanInstance& inst, double t, std::uint64_t seed, const AdditiveOptions& opts) {
    check_budget(t);
    validate(inst);
    if (inst.a.rows() == 0 || inst.b.rows() == 0) throw std::invalid_argument("empty instance");
    const Index d = inst.dim();
    AdditiveApprox out;
    if (t >= static_cast<double>(d)) {
        out.trivial = true;
        out.value = std::min(max_popcount(inst.a), max_popcount(inst.b));
        return out;
    }
    out.plan = make_sample_plan(inst.max_n(), d, t, seed, opts);
    if (out.plan.exact_fallback) {
        out.value = static_cast<double>(max_ip_exact(inst).value);
        return out;
    }
    const BooleanInstance sampled{restrict_columns(inst.a, out.plan.indices),
                                  restrict_columns(inst.b, out.plan.indices)};
    out.value = static_cast<double>(max_ip_exact(sampled).value) * static_cast<double>(d) /
                static_cast<double>(out.plan.d1);
    return out;
}

AllPairAdditiveApprox all_pair_additive(const BooleanInstance& inst, double t, std::uint64_t seed,
                                        const AdditiveOptions& opts) {
    check_budget(t);
    validate(inst);
    if (inst.a.rows() == 0 || inst.b.rows() == 0) throw std::invalid_argument("empty instance");
    const Index d = inst.dim();
    AllPairAdditiveApprox out;
    out.values.assign(static_cast<std::size_t>(inst.a.rows()), 0.0);
    if (t >= static_cast<double>(d)) {
        out.trivial = true;
        const double pb = max_popcount(inst.b);
        for (Index i = 0; i < inst.a.rows(); ++i) {
            out.values[static_cast<std::size_t>(i)] =
                std::min(static_cast<double>(inst.a.row(i).cast<Index>().sum()), pb);
        }
        return out;
    }
    out.plan = make_sample_plan(inst.max_n(), d, t, seed, opts);
    const bool exact = out.plan.exact_fallback;
    const BooleanVectorSet sa = exact ? inst.a : restrict_columns(inst.a, out.plan.indices);
    const BooleanVectorSet sb = exact ? inst.b : restrict_columns(inst.b, out.plan.indices);
    const Matrix<std::int64_t> g = gram(sa, sb);
    const double scale = exact ? 1.0 : static_cast<double>(d) / static_cast<double>(out.plan.d1);
    parallel_for(g.rows(), [&](std::ptrdiff_t i) {
        out.values[static_cast<std::size_t>(i)] = static_cast<double>(g.row(i).maxCoeff()) * scale;
    });
    return out;
}

double chernoff_pair_bound(Index d1, double epsilon1) {
    return 2.0 * std::exp(-2.0 * static_cast<double>(d1) * epsilon1 * epsilon1);
}

}  // namespace ipred
