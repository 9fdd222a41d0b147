#include "setbm/direction_grid.hpp"

#include <cmath>

#include "setbm/errors.hpp"

namespace setbm {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
// golden angle, 2*pi*(1 - 1/phi)
constexpr double kGoldenAngle = 2.3999632297286533222315555066336;
}  // namespace

std::shared_ptr<const DirectionGrid> DirectionGrid::line() {
    std::vector<Vec> dirs{Vec::of(-1.0), Vec::of(1.0)};
    return std::shared_ptr<const DirectionGrid>(new DirectionGrid(1, std::move(dirs)));
}

std::shared_ptr<const DirectionGrid> DirectionGrid::circle(int m) {
    if (m < 4 || m % 4 != 0) throw InvalidRange("circle grid: m must be a multiple of 4");
    std::vector<Vec> dirs(m, Vec::zero(2));
    for (int k = 0; k < m / 2; ++k) {
        double t = kTwoPi * k / m;
        dirs[k] = Vec::of(std::cos(t), std::sin(t));
        dirs[k + m / 2] = -dirs[k];
    }
    return std::shared_ptr<const DirectionGrid>(new DirectionGrid(2, std::move(dirs)));
}

std::shared_ptr<const DirectionGrid> DirectionGrid::sphere(int m) {
    if (m < 6 || m % 2 != 0) throw InvalidRange("sphere grid: m must be even and >= 6");
    const int n = m / 2;
    std::vector<Vec> dirs(m, Vec::zero(3));
    for (int k = 0; k < n; ++k) {
        double z = 1.0 - (2.0 * k + 1.0) / n;  // spreads over (−1, 1]
        double r = std::sqrt(std::fmax(0.0, 1.0 - z * z));
        double phi = kGoldenAngle * k;
        Vec u = Vec::of(r * std::cos(phi), r * std::sin(phi), z);
        dirs[k] = normalized(u);
        dirs[k + n] = -dirs[k];
    }
    return std::shared_ptr<const DirectionGrid>(new DirectionGrid(3, std::move(dirs)));
}

std::shared_ptr<const DirectionGrid> DirectionGrid::make(int dim, int m) {
    switch (dim) {
        case 1:
            return line();
        case 2:
            return circle(m);
        case 3:
            return sphere(m);
        default:
            throw InvalidRange("DirectionGrid: dimension must be 1..3");
    }
}

int DirectionGrid::opposite(int k) const {
    if (dim_ == 1) return 1 - k;
    const int m = size();
    return (k + m / 2) % m;
}

int DirectionGrid::nearest(const Vec& unit) const {
    if (unit.dim() != dim_) throw DimensionMismatch("nearest: direction dimension");
    if (dim_ == 1) return unit[0] < 0.0 ? 0 : 1;
    if (dim_ == 2) {
        const int m = size();
        double step = kTwoPi / m;
        long k = std::lround(std::atan2(unit[1], unit[0]) / step);
        return static_cast<int>(((k % m) + m) % m);
    }
    int best = 0;
    double best_dot = dot(unit, dirs_[0]);
    for (int k = 1; k < size(); ++k) {
        double d = dot(unit, dirs_[k]);
        if (d > best_dot) {
            best_dot = d;
            best = k;
        }
    }
    return best;
}

bool DirectionGrid::equivalent(const DirectionGrid& other) const {
    if (this == &other) return true;
    if (dim_ != other.dim_ || dirs_.size() != other.dirs_.size()) return false;
    for (std::size_t k = 0; k < dirs_.size(); ++k)
        if (!(dirs_[k] == other.dirs_[k])) return false;
    return true;
}

}  // namespace setbm
