#pragma once

#include <memory>
#include <vector>

#include "setbm/vec.hpp"

namespace setbm {

// Finite symmetric sample of the dual unit sphere. For d = 1 the grid is
// exactly {-1, +1}; for d >= 2 the second half of the list is the exact
// negation of the first half, so u in grid implies -u in grid bit-for-bit.
class DirectionGrid {
public:
    static std::shared_ptr<const DirectionGrid> line();
    static std::shared_ptr<const DirectionGrid> circle(int m = 256);
    static std::shared_ptr<const DirectionGrid> sphere(int m = 512);
    static std::shared_ptr<const DirectionGrid> make(int dim, int m);

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(dirs_.size()); }
    const Vec& direction(int k) const { return dirs_[k]; }
    const std::vector<Vec>& directions() const { return dirs_; }

    int opposite(int k) const;
    // Index of the grid direction closest to the given unit vector.
    int nearest(const Vec& unit) const;

    bool equivalent(const DirectionGrid& other) const;

private:
    DirectionGrid(int dim, std::vector<Vec> dirs) : dim_(dim), dirs_(std::move(dirs)) {}

    int dim_;
    std::vector<Vec> dirs_;
};

using GridPtr = std::shared_ptr<const DirectionGrid>;

}  // namespace setbm
