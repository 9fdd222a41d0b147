#include "setbm/distribution.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "setbm/embedding.hpp"
#include "setbm/errors.hpp"

namespace setbm {

SetRandomVariable::SetRandomVariable(int dim, std::uint64_t base_seed,
                                     std::function<ConvexSet(RngStream&)> sampler)
    : dim_(dim), base_seed_(base_seed), sampler_(std::move(sampler)) {}

ConvexSet SetRandomVariable::sample(std::uint64_t run_seed, std::uint64_t index) const {
    RngStream stream = RngStream::from(mix64(base_seed_) ^ run_seed, index);
    ConvexSet c = sampler_(stream);
    if (c.dim() != dim_) throw DimensionMismatch("SetRandomVariable: sampler dimension");
    return c;
}

SetRandomVariable SetRandomVariable::constant(const ConvexSet& c) {
    return SetRandomVariable(c.dim(), 0, [c](RngStream&) { return c; });
}

SetRandomVariable exponential_pair_variable(double lambda, std::uint64_t seed) {
    if (!(lambda > 0.0)) throw NonPositiveLambda("exponential_pair_variable: lambda <= 0");
    return SetRandomVariable(1, seed, [lambda](RngStream& s) {
        double x1 = s.exponential(lambda);
        double z = s.exponential(lambda);
        return ConvexSet::interval(x1, x1 + z);
    });
}

namespace {
// Fixed block decomposition keeps counts independent of the worker count: a
// block's tally depends only on its sample indices.
constexpr std::uint64_t kBlock = 4096;
}  // namespace

DistributionEstimate distribution_function(const SetRandomVariable& g, const ConvexSet& y,
                                           std::uint64_t n, std::uint64_t seed, Exec exec) {
    if (n == 0) throw NSamplesZero("distribution_function: n must be >= 1");
    if (g.dim() != y.dim()) throw DimensionMismatch("distribution_function: dimensions");
    const std::uint64_t blocks = (n + kBlock - 1) / kBlock;
    std::vector<std::uint64_t> counts(blocks, 0);
    parallel_for(static_cast<std::int64_t>(blocks), exec, [&](std::int64_t b) {
        const std::uint64_t lo = static_cast<std::uint64_t>(b) * kBlock;
        const std::uint64_t hi = std::min(n, lo + kBlock);
        std::uint64_t local = 0;
        for (std::uint64_t i = lo; i < hi; ++i)
            if (y.contains_set(g.sample(seed, i))) ++local;
        counts[b] = local;
    });
    std::uint64_t hits = 0;
    for (std::uint64_t c : counts) hits += c;
    DistributionEstimate est;
    est.n_samples = n;
    est.value = static_cast<double>(hits) / static_cast<double>(n);
    est.half_width = 1.96 * std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(n));
    return est;
}

EmbedCheckReport embedded_distribution_check(const SetRandomVariable& g, const ConvexSet& y,
                                             const GridPtr& grid, std::uint64_t n,
                                             std::uint64_t seed, Exec exec) {
    if (n == 0) throw NSamplesZero("embedded_distribution_check: n must be >= 1");
    if (g.dim() != y.dim() || g.dim() != grid->dim())
        throw DimensionMismatch("embedded_distribution_check: dimensions");
    EmbeddedElement jy = embed(y, grid);
    const std::uint64_t blocks = (n + kBlock - 1) / kBlock;
    std::vector<std::array<std::uint64_t, 3>> counts(blocks, {0, 0, 0});
    parallel_for(static_cast<std::int64_t>(blocks), exec, [&](std::int64_t b) {
        const std::uint64_t lo = static_cast<std::uint64_t>(b) * kBlock;
        const std::uint64_t hi = std::min(n, lo + kBlock);
        std::array<std::uint64_t, 3> local{0, 0, 0};
        for (std::uint64_t i = lo; i < hi; ++i) {
            ConvexSet draw = g.sample(seed, i);
            bool geom = y.contains_set(draw);
            EmbeddedElement jd = embed(draw, grid);
            bool le = true;
            for (int k = 0; k < jd.size(); ++k) {
                if (!(jd[k] <= jy[k])) {
                    le = false;
                    break;
                }
            }
            if (geom) ++local[0];
            if (le) ++local[1];
            if (geom != le) ++local[2];
        }
        counts[b] = local;
    });
    EmbedCheckReport rep;
    rep.n = n;
    for (const auto& c : counts) {
        rep.contained += c[0];
        rep.grid_le += c[1];
        rep.disagreements += c[2];
    }
    if (g.dim() == 1 && rep.disagreements != 0)
        throw EquivalenceViolation(
            "embedded_distribution_check: d = 1 events must coincide exactly");
    return rep;
}

double exponential_pair_analytic_F(double lambda, double y1, double y2) {
    if (!(lambda > 0.0)) throw NonPositiveLambda("exponential_pair_analytic_F: lambda <= 0");
    if (!(y1 >= 0.0) || !(y1 <= y2))
        throw InvalidRange("exponential_pair_analytic_F: requires 0 <= y1 <= y2");
    return std::exp(-lambda * y1) - std::exp(-lambda * y2) +
           lambda * (y1 - y2) * std::exp(-lambda * y2);
}

}  // namespace setbm
