#pragma once

#include "ipred/core.hpp"

#include <optional>
#include <vector>

namespace ipred {

struct SamplePlan {
    Index d1 = 0;
    /// Drawn uniformly with replacement from [0, d).
    std::vector<Index> indices;
    double epsilon1 = 0.0;
    /// Set when sampling would not shrink the instance and the exact answer is used instead.
    bool exact_fallback = false;
};

struct AdditiveOptions {
    bool allow_exact_fallback = true;
    /// Overrides the sampled dimension.
    std::optional<Index> d1;
};

/// d1 = ceil(2 * eps1^-2 * ln n) with eps1 = t / (2d), at least 1.
Index sampled_dimension(Index n, Index d, double t);

SamplePlan make_sample_plan(Index n, Index d, double t, std::uint64_t seed, const AdditiveOptions& opts = {});

/// Keeps the planned columns, in plan order.
BooleanVectorSet restrict_columns(const BooleanVectorSet& m, const std::vector<Index>& indices);

struct AdditiveApprox {
    double value = 0.0;
    SamplePlan plan;
    /// t >= d: answered by the trivial popcount bound without sampling.
    bool trivial = false;
};

/// |value - OPT| <= t with probability at least 1 - 1/n over the seed.
AdditiveApprox approx_additive(const BooleanInstance& inst, double t, std::uint64_t seed,
                               const AdditiveOptions& opts = {});

struct AllPairAdditiveApprox {
    std::vector<double> values;
    SamplePlan plan;
    bool trivial = false;
};

/// One shared sample plan; per row x, |values[x] - OPT(x, B)| <= t.
AllPairAdditiveApprox all_pair_additive(const BooleanInstance& inst, double t, std::uint64_t seed,
                                        const AdditiveOptions& opts = {});

/// 2 exp(-2 d1 eps1^2): the per-pair tail bound on |sampled/d1 - exact/d| >= eps1.
double chernoff_pair_bound(Index d1, double epsilon1);

}  // namespace ipred
