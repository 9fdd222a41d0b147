#include "setbm/stats.hpp"

#include <cmath>
#include <limits>

namespace setbm {

MomentReport make_report(std::string statistic, double empirical, double theoretical,
                         double std_error) {
    MomentReport r;
    r.statistic = std::move(statistic);
    r.empirical = empirical;
    r.theoretical = theoretical;
    r.std_error = std_error;
    if (std_error > 0.0) {
        r.z_score = (empirical - theoretical) / std_error;
    } else {
        r.z_score = (empirical == theoretical)
                        ? 0.0
                        : std::numeric_limits<double>::infinity();
    }
    return r;
}

double compensated_total(std::span<const double> xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

double mean_of(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    return compensated_total(xs) / static_cast<double>(xs.size());
}

double central_moment(std::span<const double> xs, double mean, int k) {
    if (xs.empty()) return 0.0;
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        double d = x - mean;
        double p = 1.0;
        for (int i = 0; i < k; ++i) p *= d;
        double t = sum + p;
        if (std::fabs(sum) >= std::fabs(p))
            comp += (sum - t) + p;
        else
            comp += (p - t) + sum;
        sum = t;
    }
    return (sum + comp) / static_cast<double>(xs.size());
}

double sd_of(std::span<const double> xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double m2 = central_moment(xs, mean, 2);
    double n = static_cast<double>(xs.size());
    return std::sqrt(m2 * n / (n - 1.0));
}

}  // namespace setbm
