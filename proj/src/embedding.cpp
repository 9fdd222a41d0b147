#include "setbm/embedding.hpp"

#include <cmath>

#include "setbm/errors.hpp"

namespace setbm {

EmbeddedElement::EmbeddedElement(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_) throw GridMismatch("EmbeddedElement: null grid");
    if (static_cast<int>(values_.size()) != grid_->size())
        throw GridMismatch("EmbeddedElement: value count does not match grid size");
}

double EmbeddedElement::evaluate(Evaluation f) const {
    if (f.k < 0 || f.k >= size()) throw GridMismatch("evaluate: index outside grid");
    return values_[f.k];
}

void require_same_grid(const EmbeddedElement& u, const EmbeddedElement& v, const char* op) {
    if (&u.grid() == &v.grid()) return;
    if (!u.grid().equivalent(v.grid()))
        throw GridMismatch(std::string(op) + ": elements live on different grids");
}

EmbeddedElement operator+(const EmbeddedElement& u, const EmbeddedElement& v) {
    require_same_grid(u, v, "operator+");
    std::vector<double> w(u.values_.size());
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = u.values_[k] + v.values_[k];
    return EmbeddedElement(u.grid_, std::move(w));
}

EmbeddedElement operator-(const EmbeddedElement& u, const EmbeddedElement& v) {
    require_same_grid(u, v, "operator-");
    std::vector<double> w(u.values_.size());
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = u.values_[k] - v.values_[k];
    return EmbeddedElement(u.grid_, std::move(w));
}

EmbeddedElement operator-(const EmbeddedElement& u) {
    std::vector<double> w(u.values_.size());
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = -u.values_[k];
    return EmbeddedElement(u.grid_, std::move(w));
}

EmbeddedElement operator*(double s, const EmbeddedElement& u) {
    std::vector<double> w(u.values_.size());
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = s * u.values_[k];
    return EmbeddedElement(u.grid_, std::move(w));
}

EmbeddedElement embed(const ConvexSet& a, const GridPtr& grid) {
    if (a.dim() != grid->dim())
        throw DimensionMismatch("embed: set and grid dimensions differ");
    std::vector<double> w(grid->size());
    for (int k = 0; k < grid->size(); ++k) w[k] = a.support(grid->direction(k));
    return EmbeddedElement(grid, std::move(w));
}

EmbeddedElement scaled_embed(double r, const ConvexSet& b, const GridPtr& grid) {
    return r * embed(b, grid);
}

EmbeddedElement unit_element(const GridPtr& grid) {
    return EmbeddedElement(grid, std::vector<double>(grid->size(), 1.0));
}

EmbeddedElement zero_element(const GridPtr& grid) {
    return EmbeddedElement(grid, std::vector<double>(grid->size(), 0.0));
}

double sup_distance(const EmbeddedElement& u, const EmbeddedElement& v) {
    require_same_grid(u, v, "sup_distance");
    double best = 0.0;
    for (int k = 0; k < u.size(); ++k) best = std::fmax(best, std::fabs(u[k] - v[k]));
    return best;
}

EmbeddedElement lattice_max(const EmbeddedElement& u, const EmbeddedElement& v) {
    require_same_grid(u, v, "lattice_max");
    std::vector<double> w(u.size());
    for (int k = 0; k < u.size(); ++k) w[k] = std::fmax(u[k], v[k]);
    return EmbeddedElement(u.grid_ptr(), std::move(w));
}

EmbeddedElement product(const EmbeddedElement& u, const EmbeddedElement& v) {
    require_same_grid(u, v, "product");
    std::vector<double> w(u.size());
    for (int k = 0; k < u.size(); ++k) w[k] = u[k] * v[k];
    return EmbeddedElement(u.grid_ptr(), std::move(w));
}

bool is_support_like(const EmbeddedElement& u, double tol) {
    const DirectionGrid& g = u.grid();
    const int m = g.size();
    double maxabs = 0.0;
    for (int k = 0; k < m; ++k) maxabs = std::fmax(maxabs, std::fabs(u[k]));
    for (int k = 0; k < m; ++k) {
        for (int l = k; l < m; ++l) {
            if (l == g.opposite(k)) {
                // a + b = 0: subadditivity reads 0 <= u(a) + u(-a)
                if (u[k] + u[l] < -tol) return false;
                continue;
            }
            Vec s = g.direction(k) + g.direction(l);
            double ns = norm(s);
            if (ns == 0.0) continue;
            Vec c_hat = (1.0 / ns) * s;
            int j = g.nearest(c_hat);
            double chord = norm(c_hat - g.direction(j));
            double slack = 2.0 * ns * maxabs * chord;
            if (ns * u[j] > u[k] + u[l] + tol + slack) return false;
        }
    }
    return true;
}

ConvexSet interval_from_embedding(const EmbeddedElement& u) {
    if (u.grid().dim() != 1)
        throw ReconstructionUnavailable("interval_from_embedding: grid is not 1-D");
    return ConvexSet::interval(-u[0], u[1]);
}

}  // namespace setbm
