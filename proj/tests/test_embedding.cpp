#include <doctest.h>

#include <cmath>
#include <vector>

#include "generators.hpp"
#include "setbm/embedding.hpp"
#include "setbm/errors.hpp"

using namespace setbm;
using namespace setbm::testgen;

TEST_CASE("line grid is exactly {-1,+1}") {
    GridPtr g = DirectionGrid::line();
    REQUIRE(g->size() == 2);
    CHECK(g->direction(0)[0] == -1.0);
    CHECK(g->direction(1)[0] == 1.0);
    CHECK(g->opposite(0) == 1);
}

TEST_CASE("circle and sphere grids are symmetric unit direction sets") {
    for (GridPtr g : {DirectionGrid::circle(64), DirectionGrid::sphere(128)}) {
        for (int k = 0; k < g->size(); ++k) {
            CHECK(std::fabs(norm(g->direction(k)) - 1.0) <= 1e-12);
            // exact negation by construction
            CHECK(g->direction(g->opposite(k)) == -g->direction(k));
            CHECK(g->nearest(g->direction(k)) == k);
            for (int l = k + 1; l < g->size(); ++l)
                REQUIRE(!(g->direction(k) == g->direction(l)));
        }
    }
    CHECK_THROWS_AS(DirectionGrid::circle(30), InvalidRange);
}

TEST_CASE("embedding of intervals matches (-a, b)") {
    GridPtr g = DirectionGrid::line();
    EmbeddedElement e = embed(ConvexSet::interval(-1, 1), g);
    CHECK(e[0] == 1.0);
    CHECK(e[1] == 1.0);  // the unit element
    EmbeddedElement ab = embed(ConvexSet::interval(0.25, 2.5), g);
    CHECK(ab[0] == -0.25);
    CHECK(ab[1] == 2.5);
}

TEST_CASE("embedding of a triangle equals the per-direction vertex maximum") {
    GridPtr g = DirectionGrid::circle(8);
    std::vector<Vec> tri{Vec::of(0, 0), Vec::of(1, 0), Vec::of(0, 1)};
    EmbeddedElement u = embed(ConvexSet::polytope(tri), g);
    for (int k = 0; k < g->size(); ++k) {
        double best = -1e300;
        for (const Vec& v : tri) best = std::fmax(best, dot(g->direction(k), v));
        CHECK(u[k] == best);
    }
}

TEST_CASE("sup distance examples and d=1 isometry is exact") {
    GridPtr g = DirectionGrid::line();
    EmbeddedElement u = embed(ConvexSet::interval(0, 1), g);
    EmbeddedElement v = embed(ConvexSet::interval(0, 3), g);
    CHECK(sup_distance(u, v) == 2.0);
    CHECK(sup_distance(u, u) == 0.0);

    RngStream s = RngStream::from(3, 0);
    for (int it = 0; it < 2000; ++it) {
        ConvexSet a = random_interval(s);
        ConvexSet b = random_interval(s);
        CHECK(sup_distance(embed(a, g), embed(b, g)) == hausdorff(a, b));
    }
}

TEST_CASE("grid isometry error bound for random polygons") {
    const int m = 256;
    GridPtr g = DirectionGrid::circle(m);
    RngStream s = RngStream::from(4, 0);
    for (int it = 0; it < 300; ++it) {
        ConvexSet a = random_polytope(s, 2);
        ConvexSet b = random_polytope(s, 2);
        double grid_dist = sup_distance(embed(a, g), embed(b, g));
        double exact = hausdorff(a, b);
        double bound = 2.0 * std::sin(3.14159265358979323846 / m) *
                       (a.max_point_norm() + b.max_point_norm());
        CHECK(grid_dist <= exact + 1e-12);
        CHECK(std::fabs(grid_dist - exact) <= bound);
    }
}

TEST_CASE("lattice max equals the embedded hull union") {
    GridPtr line = DirectionGrid::line();
    EmbeddedElement u = embed(ConvexSet::interval(0, 1), line);
    EmbeddedElement v = embed(ConvexSet::interval(2, 5), line);
    EmbeddedElement mx = lattice_max(u, v);
    CHECK(mx[0] == 0.0);
    CHECK(mx[1] == 5.0);
    CHECK(sup_distance(mx, embed(ConvexSet::interval(0, 5), line)) == 0.0);

    GridPtr g = DirectionGrid::circle(64);
    RngStream s = RngStream::from(5, 0);
    for (int it = 0; it < 300; ++it) {
        ConvexSet a = random_polytope(s, 2);
        ConvexSet b = random_polytope(s, 2);
        EmbeddedElement lhs = lattice_max(embed(a, g), embed(b, g));
        EmbeddedElement rhs = embed(convex_hull_union(a, b), g);
        CHECK(sup_distance(lhs, rhs) <= 1e-9);
        for (int k = 0; k < g->size(); ++k) {
            CHECK(lhs[k] >= embed(a, g)[k]);
            CHECK(lhs[k] >= embed(b, g)[k]);
        }
    }
}

TEST_CASE("f-algebra product: unit law, zero, componentwise example") {
    GridPtr line = DirectionGrid::line();
    EmbeddedElement e = unit_element(line);
    EmbeddedElement b = embed(ConvexSet::interval(-2, 7), line);
    EmbeddedElement eb = product(e, b);
    CHECK(eb[0] == b[0]);
    CHECK(eb[1] == b[1]);
    EmbeddedElement z = zero_element(line);
    EmbeddedElement bz = product(b, z);
    CHECK(bz[0] == 0.0);
    CHECK(bz[1] == 0.0);

    EmbeddedElement p = product(embed(ConvexSet::interval(2, 3), line),
                                embed(ConvexSet::interval(4, 5), line));
    CHECK(p[0] == 8.0);   // (-2)*(-4)
    CHECK(p[1] == 15.0);  // 3*5
}

TEST_CASE("products generally leave the embedded cone") {
    GridPtr line = DirectionGrid::line();
    EmbeddedElement p = product(embed(ConvexSet::interval(1, 2), line),
                                embed(ConvexSet::interval(-2, -1), line));
    // (-1,2)*(2,-1) = (-2,-2) is not the image of any set
    CHECK(p[0] == -2.0);
    CHECK(p[1] == -2.0);
    CHECK_FALSE(is_support_like(p));
}

TEST_CASE("product is commutative, associative, distributive") {
    GridPtr g = DirectionGrid::circle(16);
    RngStream s = RngStream::from(6, 0);
    for (int it = 0; it < 200; ++it) {
        EmbeddedElement u = embed(random_polytope(s, 2), g);
        EmbeddedElement v = embed(random_polytope(s, 2), g);
        EmbeddedElement w = embed(random_polytope(s, 2), g);
        EmbeddedElement uv = product(u, v);
        EmbeddedElement vu = product(v, u);
        EmbeddedElement u_vw = product(u, product(v, w));
        EmbeddedElement uv_w = product(uv, w);
        EmbeddedElement dist_lhs = product(u, v + w);
        EmbeddedElement dist_rhs = product(u, v) + product(u, w);
        for (int k = 0; k < g->size(); ++k) {
            CHECK(uv[k] == vu[k]);
            CHECK(u_vw[k] == doctest::Approx(uv_w[k]).epsilon(1e-12));
            CHECK(dist_lhs[k] == doctest::Approx(dist_rhs[k]).epsilon(1e-12));
        }
    }
}

TEST_CASE("embed is additive and positively homogeneous") {
    GridPtr g = DirectionGrid::circle(64);
    RngStream s = RngStream::from(8, 0);
    for (int it = 0; it < 300; ++it) {
        ConvexSet a = random_polytope(s, 2);
        ConvexSet b = random_polytope(s, 2);
        double alpha = uniform_in(s, 0.0, 2.0), beta = uniform_in(s, 0.0, 2.0);
        ConvexSet combo = minkowski_sum(scalar_mul(alpha, a), scalar_mul(beta, b));
        EmbeddedElement lhs = embed(combo, g);
        EmbeddedElement rhs = alpha * embed(a, g) + beta * embed(b, g);
        CHECK(sup_distance(lhs, rhs) <= 1e-9);
    }
}

TEST_CASE("is_support_like accepts embeddings and rejects non-supports") {
    GridPtr line = DirectionGrid::line();
    GridPtr g = DirectionGrid::circle(64);
    RngStream s = RngStream::from(9, 0);
    for (int it = 0; it < 200; ++it) {
        CHECK(is_support_like(embed(random_interval(s), line)));
        CHECK(is_support_like(embed(random_polytope(s, 2), g)));
        CHECK(is_support_like(embed(random_ball(s, 2), g)));
    }
    CHECK_FALSE(is_support_like(EmbeddedElement(line, {-1.0, -1.0})));
    // j([0,1]) - j([0,3]) = (0,-2): s(-1)+s(+1) = -2 < 0
    EmbeddedElement diff =
        embed(ConvexSet::interval(0, 1), line) - embed(ConvexSet::interval(0, 3), line);
    CHECK(diff[0] == 0.0);
    CHECK(diff[1] == -2.0);
    CHECK_FALSE(is_support_like(diff));
}

TEST_CASE("scaled embeddings: r*1_B maps to r*j(B)") {
    GridPtr g = DirectionGrid::circle(32);
    ConvexSet bx = ConvexSet::unit_ball(2);
    EmbeddedElement e = unit_element(g);
    CHECK(sup_distance(scaled_embed(2.0, bx, g), 2.0 * e) <= 1e-14);
    CHECK(sup_distance(scaled_embed(-1.0, bx, g), -1.0 * e) <= 1e-14);
    EmbeddedElement z = scaled_embed(0.0, ConvexSet::ball(Vec::of(3, 4), 2.0), g);
    for (int k = 0; k < z.size(); ++k) CHECK(z[k] == 0.0);
    // negative scaling is linear, not the embedding of the reflected set
    ConvexSet off_center = ConvexSet::ball(Vec::of(1, 0), 1.0);
    EmbeddedElement lin = scaled_embed(-2.0, off_center, g);
    EmbeddedElement refl = embed(scalar_mul(-2.0, off_center), g);
    CHECK(sup_distance(lin, refl) > 1.0);
}

TEST_CASE("nonemptiness across symmetric direction pairs") {
    GridPtr g = DirectionGrid::circle(64);
    RngStream s = RngStream::from(10, 0);
    for (int it = 0; it < 100; ++it) {
        EmbeddedElement u = embed(random_polytope(s, 2), g);
        for (int k = 0; k < g->size(); ++k) CHECK(u[k] + u[g->opposite(k)] >= 0.0);
    }
}

TEST_CASE("grid mismatch is rejected") {
    EmbeddedElement a = embed(ConvexSet::polytope({Vec::of(0, 0), Vec::of(1, 0)}),
                              DirectionGrid::circle(16));
    EmbeddedElement b = embed(ConvexSet::polytope({Vec::of(0, 0), Vec::of(1, 0)}),
                              DirectionGrid::circle(32));
    CHECK_THROWS_AS(sup_distance(a, b), GridMismatch);
    CHECK_THROWS_AS(lattice_max(a, b), GridMismatch);
    CHECK_THROWS_AS(embed(ConvexSet::interval(0, 1), DirectionGrid::circle(16)),
                    DimensionMismatch);
    // equal-by-value grids interoperate
    EmbeddedElement c = embed(ConvexSet::polytope({Vec::of(0, 0), Vec::of(1, 0)}),
                              DirectionGrid::circle(16));
    CHECK(sup_distance(a, c) == 0.0);
}

TEST_CASE("interval reconstruction inverts the d=1 embedding") {
    GridPtr line = DirectionGrid::line();
    RngStream s = RngStream::from(12, 0);
    for (int it = 0; it < 200; ++it) {
        ConvexSet a = random_interval(s);
        ConvexSet back = interval_from_embedding(embed(a, line));
        CHECK(back.lo() == a.lo());
        CHECK(back.hi() == a.hi());
    }
}

TEST_CASE("3-d embedding sanity on the sphere grid") {
    GridPtr g = DirectionGrid::sphere(128);
    ConvexSet box = ConvexSet::polytope({Vec::of(0, 0, 0), Vec::of(1, 0, 0), Vec::of(0, 1, 0),
                                         Vec::of(0, 0, 1), Vec::of(1, 1, 0), Vec::of(1, 0, 1),
                                         Vec::of(0, 1, 1), Vec::of(1, 1, 1)});
    EmbeddedElement u = embed(box, g);
    CHECK(is_support_like(u));
    for (int k = 0; k < g->size(); ++k) CHECK(u[k] + u[g->opposite(k)] >= 0.0);
}
