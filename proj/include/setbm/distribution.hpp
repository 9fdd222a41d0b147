#pragma once

#include <cstdint>
#include <functional>

#include "setbm/convex_set.hpp"
#include "setbm/direction_grid.hpp"
#include "setbm/parallel.hpp"
#include "setbm/rng.hpp"

namespace setbm {

// Set-valued random variable: a seeded sampler producing one convex set per
// draw. Draw i of a run uses the stream (base_seed ^ run_seed, i), so a fixed
// pair of seeds reproduces the draw sequence under any thread count.
class SetRandomVariable {
public:
    SetRandomVariable(int dim, std::uint64_t base_seed,
                      std::function<ConvexSet(RngStream&)> sampler);

    int dim() const { return dim_; }
    ConvexSet sample(std::uint64_t run_seed, std::uint64_t index) const;

    static SetRandomVariable constant(const ConvexSet& c);

private:
    int dim_;
    std::uint64_t base_seed_;
    std::function<ConvexSet(RngStream&)> sampler_;
};

// Interval [X1, X1 + Z] with X1, Z independent Exponential(lambda).
SetRandomVariable exponential_pair_variable(double lambda, std::uint64_t seed = 0);

struct DistributionEstimate {
    double value = 0.0;
    double half_width = 0.0;  // 95% binomial CI half-width
    std::uint64_t n_samples = 0;
};

// Monte Carlo frequency of the containment event Gamma_i included in Y.
DistributionEstimate distribution_function(const SetRandomVariable& g, const ConvexSet& y,
                                           std::uint64_t n, std::uint64_t seed,
                                           Exec exec = Exec::Parallel);

struct EmbedCheckReport {
    std::uint64_t n = 0;
    std::uint64_t contained = 0;      // exact geometric containment count
    std::uint64_t grid_le = 0;        // componentwise j(Gamma) <= j(Y) count
    std::uint64_t disagreements = 0;  // events where the two tests differ
};

// Per-draw comparison of the geometric event and its embedded form.
// In d = 1 the two events coincide; a disagreement there raises
// EquivalenceViolation.
EmbedCheckReport embedded_distribution_check(const SetRandomVariable& g, const ConvexSet& y,
                                             const GridPtr& grid, std::uint64_t n,
                                             std::uint64_t seed, Exec exec = Exec::Parallel);

// Closed form for the exponential-pair example, 0 <= y1 <= y2:
// exp(-lambda y1) - exp(-lambda y2) + lambda (y1 - y2) exp(-lambda y2).
double exponential_pair_analytic_F(double lambda, double y1, double y2);

}  // namespace setbm
