#pragma once

#include <memory>
#include <span>
#include <vector>

#include "setbm/convex_set.hpp"
#include "setbm/direction_grid.hpp"

namespace setbm {

// Evaluation functional: read one grid component, x -> x(k).
struct Evaluation {
    int k = 0;
};

// Element of the sampled C(K): one real value per grid direction. Images of
// convex sets land here via embed(); the vector space is closed under +,
// scalar multiples, pointwise max and pointwise product, which is where the
// lattice and f-algebra structure lives.
class EmbeddedElement {
public:
    EmbeddedElement(GridPtr grid, std::vector<double> values);

    const DirectionGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    int size() const { return static_cast<int>(values_.size()); }
    double operator[](int k) const { return values_[k]; }
    std::span<const double> values() const { return values_; }

    double evaluate(Evaluation f) const;

    friend EmbeddedElement operator+(const EmbeddedElement& u, const EmbeddedElement& v);
    friend EmbeddedElement operator-(const EmbeddedElement& u, const EmbeddedElement& v);
    friend EmbeddedElement operator-(const EmbeddedElement& u);
    friend EmbeddedElement operator*(double s, const EmbeddedElement& u);

private:
    GridPtr grid_;
    std::vector<double> values_;
};

void require_same_grid(const EmbeddedElement& u, const EmbeddedElement& v, const char* op);

EmbeddedElement embed(const ConvexSet& a, const GridPtr& grid);

// Image of the scaled indicator r*1_B: r*j(B) for any sign of r (for r < 0
// this is -|r|*j(B), an element outside the embedded cone).
EmbeddedElement scaled_embed(double r, const ConvexSet& b, const GridPtr& grid);

// e, the unit function on K (equals j of the unit ball in finite dimension).
EmbeddedElement unit_element(const GridPtr& grid);
EmbeddedElement zero_element(const GridPtr& grid);

double sup_distance(const EmbeddedElement& u, const EmbeddedElement& v);
EmbeddedElement lattice_max(const EmbeddedElement& u, const EmbeddedElement& v);
EmbeddedElement product(const EmbeddedElement& u, const EmbeddedElement& v);

// Sampled test of the support-function characterization: the positively
// homogeneous extension H(x) = |x| u(x/|x|) must be subadditive on grid pairs
// (with nearest-direction quantization slack), and u(k) + u(-k) >= 0.
bool is_support_like(const EmbeddedElement& u, double tol = 1e-7);

// Exact d = 1 inverse of the embedding: (-a, b) -> [a, b].
ConvexSet interval_from_embedding(const EmbeddedElement& u);

}  // namespace setbm
