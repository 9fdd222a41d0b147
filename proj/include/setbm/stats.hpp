#pragma once

#include <span>
#include <string>

namespace setbm {

struct MomentReport {
    std::string statistic;
    double empirical = 0.0;
    double theoretical = 0.0;
    double std_error = 0.0;
    double z_score = 0.0;

    bool pass(double sigma_gate) const { return std::abs(z_score) <= sigma_gate; }
};

MomentReport make_report(std::string statistic, double empirical, double theoretical,
                         double std_error);

// Neumaier-compensated serial sum; reductions stay deterministic regardless of
// how the per-path values were produced.
double compensated_total(std::span<const double> xs);
double mean_of(std::span<const double> xs);
// Central sample moment of order k about the given mean.
double central_moment(std::span<const double> xs, double mean, int k);
// Sample standard deviation (n - 1 denominator).
double sd_of(std::span<const double> xs, double mean);

}  // namespace setbm
