#include "setbm/convex_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "setbm/errors.hpp"

namespace setbm {

namespace {

constexpr double kDedupTol = 1e-12;

void require_same_dim(const ConvexSet& a, const ConvexSet& b, const char* op) {
    if (a.dim() != b.dim())
        throw DimensionMismatch(std::string(op) + ": operands have different dimensions");
}

// Andrew's monotone chain; returns the hull counter-clockwise with collinear
// points dropped. Handles n <= 2 (point, segment) gracefully.
std::vector<Vec> hull_ccw(std::vector<Vec> pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const int n = static_cast<int>(pts.size());
    if (n <= 2) return pts;
    std::vector<Vec> h(2 * n);
    int k = 0;
    for (int i = 0; i < n; ++i) {
        while (k >= 2 && cross2(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0.0) --k;
        h[k++] = pts[i];
    }
    for (int i = n - 2, lower = k + 1; i >= 0; --i) {
        while (k >= lower && cross2(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0.0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

double scale_of(const std::vector<Vec>& pts) {
    double s = 0.0;
    for (const Vec& p : pts)
        for (int i = 0; i < p.dim(); ++i) s = std::fmax(s, std::fabs(p[i]));
    return 1.0 + s;
}

std::vector<Vec> dedup(std::vector<Vec> pts, double tol) {
    std::sort(pts.begin(), pts.end(), lex_less);
    std::vector<Vec> out;
    for (const Vec& p : pts) {
        bool dup = false;
        for (auto it = out.rbegin(); it != out.rend(); ++it) {
            if (norm(p - *it) <= tol) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(p);
    }
    return out;
}

// Membership in the convex hull of a 3-D point set. A point is inside iff it
// lies in some nondegenerate vertex tetrahedron (Caratheodory), or within eps
// of the simplex skeleton when the hull is flat.
double dist_to_simplices3(const Vec& p, const std::vector<Vec>& pts);

bool in_hull3(const Vec& p, const std::vector<Vec>& pts, double eps) {
    const int n = static_cast<int>(pts.size());
    constexpr double bary_eps = 1e-9;
    double scale = scale_of(pts);
    double det_eps = 1e-12 * scale * scale * scale;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int l = k + 1; l < n; ++l) {
                    Vec e1 = pts[j] - pts[i], e2 = pts[k] - pts[i], e3 = pts[l] - pts[i];
                    Vec c23 = Vec::of(e2[1] * e3[2] - e2[2] * e3[1],
                                      e2[2] * e3[0] - e2[0] * e3[2],
                                      e2[0] * e3[1] - e2[1] * e3[0]);
                    double det = dot(e1, c23);
                    if (std::fabs(det) <= det_eps) continue;
                    Vec r = p - pts[i];
                    Vec c2r = Vec::of(r[1] * e3[2] - r[2] * e3[1], r[2] * e3[0] - r[0] * e3[2],
                                      r[0] * e3[1] - r[1] * e3[0]);
                    Vec cr3 = Vec::of(e2[1] * r[2] - e2[2] * r[1], e2[2] * r[0] - e2[0] * r[2],
                                      e2[0] * r[1] - e2[1] * r[0]);
                    double l1 = dot(r, c23) / det;
                    double l2 = dot(e1, c2r) / det;
                    double l3 = dot(e1, cr3) / det;
                    if (l1 >= -bary_eps && l2 >= -bary_eps && l3 >= -bary_eps &&
                        l1 + l2 + l3 <= 1.0 + bary_eps)
                        return true;
                }
    return dist_to_simplices3(p, pts) <= eps;
}

double dist_to_simplices3(const Vec& p, const std::vector<Vec>& pts) {
    const int n = static_cast<int>(pts.size());
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) best = std::fmin(best, norm2(p - pts[i]));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            best = std::fmin(best, dist2_point_segment(p, pts[i], pts[j]));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                best = std::fmin(best, dist2_point_triangle(p, pts[i], pts[j], pts[k]));
    return std::sqrt(best);
}

double dist_to_poly2(const Vec& p, const std::vector<Vec>& canonical_vertices) {
    std::vector<Vec> h = hull_ccw(canonical_vertices);
    const int n = static_cast<int>(h.size());
    if (n == 1) return norm(p - h[0]);
    if (n == 2) return std::sqrt(dist2_point_segment(p, h[0], h[1]));
    bool inside = true;
    for (int i = 0; i < n; ++i) {
        if (cross2(h[(i + 1) % n] - h[i], p - h[i]) < 0.0) {
            inside = false;
            break;
        }
    }
    if (inside) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        best = std::fmin(best, dist2_point_segment(p, h[i], h[(i + 1) % n]));
    return std::sqrt(best);
}

// Distance from an interior point to the boundary of a 2-D polytope.
double depth2(const Vec& p, const std::vector<Vec>& canonical_vertices) {
    std::vector<Vec> h = hull_ccw(canonical_vertices);
    const int n = static_cast<int>(h.size());
    if (n <= 2) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        best = std::fmin(best, dist2_point_segment(p, h[i], h[(i + 1) % n]));
    return std::sqrt(best);
}

}  // namespace

std::vector<Vec> extreme_points(std::vector<Vec> points) {
    if (points.empty()) throw InvalidRange("extreme_points: empty point set");
    const int d = points[0].dim();
    for (const Vec& p : points)
        if (p.dim() != d) throw DimensionMismatch("extreme_points: mixed dimensions");
    double tol = kDedupTol * scale_of(points);
    points = dedup(std::move(points), tol);
    if (points.size() == 1) return points;
    if (d == 1) {
        double lo = points.front()[0], hi = points.back()[0];
        if (lo == hi) return {Vec::of(lo)};
        return {Vec::of(lo), Vec::of(hi)};
    }
    if (d == 2) {
        std::vector<Vec> h = hull_ccw(points);
        std::sort(h.begin(), h.end(), lex_less);
        return h;
    }
    std::vector<Vec> kept;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<Vec> others;
        others.reserve(points.size() - 1);
        for (std::size_t j = 0; j < points.size(); ++j)
            if (j != i) others.push_back(points[j]);
        if (!in_hull3(points[i], others, tol)) kept.push_back(points[i]);
    }
    if (kept.empty()) kept.push_back(points.front());  // all coincide within tol
    std::sort(kept.begin(), kept.end(), lex_less);
    return kept;
}

ConvexSet ConvexSet::interval(double lo, double hi) {
    if (!(lo <= hi)) throw InvalidRange("interval: requires lo <= hi");
    return ConvexSet(1, IntervalRep{lo, hi});
}

ConvexSet ConvexSet::ball(const Vec& center, double radius) {
    if (!(radius >= 0.0)) throw InvalidRange("ball: radius must be >= 0");
    if (center.dim() == 1) return interval(center[0] - radius, center[0] + radius);
    if (radius == 0.0) return polytope({center});
    return ConvexSet(center.dim(), BallRep{center, radius});
}

ConvexSet ConvexSet::polytope(std::vector<Vec> verts) {
    std::vector<Vec> ext = extreme_points(std::move(verts));
    const int d = ext[0].dim();
    if (d == 1) {
        double lo = ext.front()[0];
        double hi = ext.back()[0];
        return interval(std::fmin(lo, hi), std::fmax(lo, hi));
    }
    return ConvexSet(d, PolytopeRep{std::move(ext)});
}

ConvexSet ConvexSet::point(const Vec& p) {
    if (p.dim() == 1) return interval(p[0], p[0]);
    return polytope({p});
}

ConvexSet ConvexSet::unit_ball(int dim) {
    if (dim == 1) return interval(-1.0, 1.0);
    return ball(Vec::zero(dim), 1.0);
}

SetKind ConvexSet::kind() const {
    if (std::holds_alternative<IntervalRep>(rep_)) return SetKind::Interval;
    if (std::holds_alternative<BallRep>(rep_)) return SetKind::Ball;
    return SetKind::Polytope;
}

double ConvexSet::lo() const { return std::get<IntervalRep>(rep_).lo; }
double ConvexSet::hi() const { return std::get<IntervalRep>(rep_).hi; }
const Vec& ConvexSet::center() const { return std::get<BallRep>(rep_).center; }
double ConvexSet::radius() const { return std::get<BallRep>(rep_).radius; }
const std::vector<Vec>& ConvexSet::vertices() const {
    return std::get<PolytopeRep>(rep_).vertices;
}

double ConvexSet::support(const Vec& direction) const {
    if (direction.dim() != dim_) throw DimensionMismatch("support: direction dimension");
    switch (kind()) {
        case SetKind::Interval: {
            double d0 = direction[0];
            return std::fmax(d0 * lo(), d0 * hi());
        }
        case SetKind::Ball:
            return dot(direction, center()) + radius() * norm(direction);
        case SetKind::Polytope: {
            double best = -std::numeric_limits<double>::infinity();
            for (const Vec& v : vertices()) best = std::fmax(best, dot(direction, v));
            return best;
        }
    }
    return 0.0;
}

double ConvexSet::diameter() const {
    switch (kind()) {
        case SetKind::Interval:
            return hi() - lo();
        case SetKind::Ball:
            return 2.0 * radius();
        case SetKind::Polytope: {
            double best = 0.0;
            const auto& vs = vertices();
            for (std::size_t i = 0; i < vs.size(); ++i)
                for (std::size_t j = i + 1; j < vs.size(); ++j)
                    best = std::fmax(best, norm(vs[i] - vs[j]));
            return best;
        }
    }
    return 0.0;
}

double ConvexSet::max_point_norm() const {
    switch (kind()) {
        case SetKind::Interval:
            return std::fmax(std::fabs(lo()), std::fabs(hi()));
        case SetKind::Ball:
            return norm(center()) + radius();
        case SetKind::Polytope: {
            double best = 0.0;
            for (const Vec& v : vertices()) best = std::fmax(best, norm(v));
            return best;
        }
    }
    return 0.0;
}

double ConvexSet::distance_to(const Vec& p) const {
    if (p.dim() != dim_) throw DimensionMismatch("distance_to: point dimension");
    switch (kind()) {
        case SetKind::Interval:
            return std::fmax(0.0, std::fmax(lo() - p[0], p[0] - hi()));
        case SetKind::Ball:
            return std::fmax(0.0, norm(p - center()) - radius());
        case SetKind::Polytope:
            if (dim_ == 2) return dist_to_poly2(p, vertices());
            if (in_hull3(p, vertices(), kDedupTol * scale_of(vertices()))) return 0.0;
            return dist_to_simplices3(p, vertices());
    }
    return 0.0;
}

bool ConvexSet::contains_point(const Vec& p, double tol) const {
    return distance_to(p) <= tol;
}

bool ConvexSet::contains_set(const ConvexSet& other, double tol) const {
    require_same_dim(*this, other, "contains_set");
    if (dim_ == 1) return lo() - tol <= other.lo() && other.hi() <= hi() + tol;
    if (other.kind() == SetKind::Polytope) {
        for (const Vec& v : other.vertices())
            if (!contains_point(v, tol)) return false;
        return true;
    }
    // other is a ball with positive radius
    if (kind() == SetKind::Ball)
        return norm(other.center() - center()) + other.radius() <= radius() + tol;
    if (dim_ == 3)
        throw UnsupportedRepresentationPair(
            "contains_set: ball inside 3-D polytope is not supported");
    if (!contains_point(other.center(), tol)) return false;
    return depth2(other.center(), vertices()) + tol >= other.radius();
}

ConvexSet minkowski_sum(const ConvexSet& a, const ConvexSet& b) {
    require_same_dim(a, b, "minkowski_sum");
    if (a.dim() == 1)
        return ConvexSet::interval(a.lo() + b.lo(), a.hi() + b.hi());
    if (a.kind() == SetKind::Ball && b.kind() == SetKind::Ball)
        return ConvexSet::ball(a.center() + b.center(), a.radius() + b.radius());
    if (a.kind() == SetKind::Polytope && b.kind() == SetKind::Polytope) {
        std::vector<Vec> sums;
        sums.reserve(a.vertices().size() * b.vertices().size());
        for (const Vec& va : a.vertices())
            for (const Vec& vb : b.vertices()) sums.push_back(va + vb);
        return ConvexSet::polytope(std::move(sums));
    }
    // ball + singleton translates exactly
    if (a.kind() == SetKind::Ball && b.kind() == SetKind::Polytope && b.vertices().size() == 1)
        return ConvexSet::ball(a.center() + b.vertices()[0], a.radius());
    if (b.kind() == SetKind::Ball && a.kind() == SetKind::Polytope && a.vertices().size() == 1)
        return ConvexSet::ball(b.center() + a.vertices()[0], b.radius());
    throw UnsupportedRepresentationPair(
        "minkowski_sum: ball + polytope has no exact representation here");
}

ConvexSet scalar_mul(double lambda, const ConvexSet& a) {
    switch (a.kind()) {
        case SetKind::Interval: {
            double x = lambda * a.lo(), y = lambda * a.hi();
            return ConvexSet::interval(std::fmin(x, y), std::fmax(x, y));
        }
        case SetKind::Ball:
            return ConvexSet::ball(lambda * a.center(), std::fabs(lambda) * a.radius());
        case SetKind::Polytope: {
            std::vector<Vec> vs;
            vs.reserve(a.vertices().size());
            for (const Vec& v : a.vertices()) vs.push_back(lambda * v);
            return ConvexSet::polytope(std::move(vs));
        }
    }
    throw Error("scalar_mul: unreachable");
}

double support(const ConvexSet& a, const Vec& direction) { return a.support(direction); }

double excess(const ConvexSet& a, const ConvexSet& b) {
    require_same_dim(a, b, "excess");
    if (a.dim() == 1)
        return std::fmax(0.0, std::fmax(b.lo() - a.lo(), a.hi() - b.hi()));
    if (a.kind() == SetKind::Polytope) {
        double best = 0.0;
        for (const Vec& v : a.vertices()) best = std::fmax(best, b.distance_to(v));
        return best;
    }
    // a is a ball
    if (b.kind() == SetKind::Ball)
        return std::fmax(0.0, norm(a.center() - b.center()) + a.radius() - b.radius());
    if (a.dim() == 3)
        throw UnsupportedRepresentationPair(
            "excess: 3-D ball over polytope is not supported");
    // sup over the disk of dist(x, b): r - depth inside, r + dist outside
    if (b.contains_point(a.center()))
        return std::fmax(0.0, a.radius() - depth2(a.center(), b.vertices()));
    return a.radius() + b.distance_to(a.center());
}

double hausdorff(const ConvexSet& a, const ConvexSet& b) {
    return std::fmax(excess(a, b), excess(b, a));
}

ConvexSet convex_hull_union(const ConvexSet& a, const ConvexSet& b) {
    require_same_dim(a, b, "convex_hull_union");
    if (a.dim() == 1)
        return ConvexSet::interval(std::fmin(a.lo(), b.lo()), std::fmax(a.hi(), b.hi()));
    if (a.kind() == SetKind::Polytope && b.kind() == SetKind::Polytope) {
        std::vector<Vec> vs = a.vertices();
        vs.insert(vs.end(), b.vertices().begin(), b.vertices().end());
        return ConvexSet::polytope(std::move(vs));
    }
    if (a.contains_set(b)) return a;
    if (b.contains_set(a)) return b;
    throw UnsupportedRepresentationPair(
        "convex_hull_union: hull of a ball and another set has no exact representation "
        "unless one contains the other");
}

bool set_equal(const ConvexSet& a, const ConvexSet& b, double tol_scale) {
    double scale = 1.0 + std::fmax(a.diameter(), b.diameter());
    return hausdorff(a, b) <= tol_scale * scale;
}

std::vector<Vec> ccw_hull_vertices(const ConvexSet& polytope) {
    if (polytope.dim() != 2 || polytope.kind() != SetKind::Polytope)
        throw UnsupportedRepresentationPair("ccw_hull_vertices: needs a 2-D polytope");
    return hull_ccw(polytope.vertices());
}

}  // namespace setbm
