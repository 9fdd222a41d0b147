#pragma once

#include <variant>
#include <vector>

#include "setbm/vec.hpp"

namespace setbm {

enum class SetKind { Interval, Ball, Polytope };

// Nonempty compact convex subset of R^d, d in {1,2,3}, held in a canonical
// exact representation:
//   d = 1          -> Interval [lo, hi] (balls and polytopes are folded in),
//   d >= 2, r > 0  -> Ball(center, radius),
//   d >= 2         -> Polytope: extreme points only, sorted lexicographically.
// With these rules two values denote the same set iff their canonical
// representations are equal.
class ConvexSet {
public:
    static ConvexSet interval(double lo, double hi);
    static ConvexSet ball(const Vec& center, double radius);
    static ConvexSet polytope(std::vector<Vec> vertices);
    static ConvexSet point(const Vec& p);
    static ConvexSet unit_ball(int dim);

    int dim() const { return dim_; }
    SetKind kind() const;

    double lo() const;
    double hi() const;
    const Vec& center() const;
    double radius() const;
    const std::vector<Vec>& vertices() const;

    // Exact support function; positively homogeneous in the direction, so it
    // accepts non-unit directions as well.
    double support(const Vec& direction) const;

    double diameter() const;
    double max_point_norm() const;

    // Euclidean distance from p to the set (0 when inside).
    double distance_to(const Vec& p) const;
    bool contains_point(const Vec& p, double tol = 0.0) const;
    // Exact containment test: other included in *this.
    bool contains_set(const ConvexSet& other, double tol = 0.0) const;

private:
    struct IntervalRep {
        double lo, hi;
    };
    struct BallRep {
        Vec center;
        double radius;
    };
    struct PolytopeRep {
        std::vector<Vec> vertices;
    };

    ConvexSet(int dim, std::variant<IntervalRep, BallRep, PolytopeRep> rep)
        : dim_(dim), rep_(std::move(rep)) {}

    int dim_;
    std::variant<IntervalRep, BallRep, PolytopeRep> rep_;
};

ConvexSet minkowski_sum(const ConvexSet& a, const ConvexSet& b);
ConvexSet scalar_mul(double lambda, const ConvexSet& a);
double support(const ConvexSet& a, const Vec& direction);
double excess(const ConvexSet& a, const ConvexSet& b);
double hausdorff(const ConvexSet& a, const ConvexSet& b);
ConvexSet convex_hull_union(const ConvexSet& a, const ConvexSet& b);

// Scale-relative set equality: hausdorff <= tol_scale * (1 + max diameter).
bool set_equal(const ConvexSet& a, const ConvexSet& b, double tol_scale = 1e-9);

// Extreme points of a finite point set (duplicates and non-extreme points
// removed), sorted lexicographically. Exposed for tests.
std::vector<Vec> extreme_points(std::vector<Vec> points);

// Hull of a 2-D polytope in counter-clockwise order (2 points for a segment,
// 1 for a point).
std::vector<Vec> ccw_hull_vertices(const ConvexSet& polytope);

}  // namespace setbm
