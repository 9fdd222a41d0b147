#include <doctest.h>

#include <cmath>
#include <vector>

#include "setbm/brownian.hpp"
#include "setbm/errors.hpp"

using namespace setbm;

namespace {

GridPtr line() { return DirectionGrid::line(); }

PathEnsemble small_ensemble(std::uint64_t seed = 42, int n_paths = 20000) {
    return simulate_bm(TimeGrid::with_origin({1.0, 2.0, 3.0}), line(), n_paths, seed);
}

}  // namespace

TEST_CASE("time grid validation") {
    CHECK_THROWS_AS(TimeGrid(std::vector<double>{}), EmptyTimeGrid);
    CHECK_THROWS_AS(TimeGrid({0.5, 1.0}), InvalidRange);
    CHECK_THROWS_AS(TimeGrid({0.0, 1.0, 1.0}), InvalidRange);
    auto tg = TimeGrid::uniform(4, 1.0);
    CHECK(tg->size() == 5);
    CHECK(tg->time(0) == 0.0);
    CHECK(tg->t_end() == 1.0);
    CHECK(tg->index_of(0.5) == 2);
    CHECK(tg->index_of(0.3) == -1);
}

TEST_CASE("simulated paths start at zero and are seed-deterministic") {
    PathEnsemble a = small_ensemble(7, 2000);
    PathEnsemble b = small_ensemble(7, 2000);
    PathEnsemble c = small_ensemble(8, 2000);
    bool same = true, diff = false;
    for (int p = 0; p < a.n_paths(); ++p) {
        REQUIRE(a.wiener(p, 0) == 0.0);
        for (int i = 0; i < a.n_times(); ++i) {
            same = same && (a.wiener(p, i) == b.wiener(p, i));
            diff = diff || (a.wiener(p, i) != c.wiener(p, i));
        }
    }
    CHECK(same);
    CHECK(diff);
}

TEST_CASE("evaluation is grid-index independent bit for bit") {
    GridPtr g = DirectionGrid::circle(16);
    PathEnsemble ens = simulate_bm(TimeGrid::with_origin({0.5, 1.0}), g, 500, 3);
    for (int p = 0; p < ens.n_paths(); ++p)
        for (int i = 0; i < ens.n_times(); ++i)
            for (int k = 1; k < g->size(); ++k)
                REQUIRE(ens.evaluate(p, i, Evaluation{k}) == ens.evaluate(p, i, Evaluation{0}));
    // materialized element agrees with the scalar route up to the ulp of |u|
    ProcessPath path = ens.path(0);
    EmbeddedElement e1 = path.element(1);
    for (int k = 0; k < g->size(); ++k)
        CHECK(e1[k] == doctest::Approx(path.evaluate(1, Evaluation{k})).epsilon(1e-14));
}

TEST_CASE("variance of the evaluation at t=1") {
    PathEnsemble ens = simulate_bm(TimeGrid::with_origin({1.0}), line(), 100000, 11);
    std::vector<double> x(ens.n_paths());
    for (int p = 0; p < ens.n_paths(); ++p) x[p] = ens.evaluate(p, 1, Evaluation{0});
    double m = mean_of(x);
    double var = central_moment(x, m, 2);
    CHECK(std::fabs(var - 1.0) <= 3.0 * std::sqrt(2.0 / ens.n_paths()));
    // Bochner-integrability surrogate: E|W_t| = sqrt(2t/pi)
    std::vector<double> absx(ens.n_paths());
    for (int p = 0; p < ens.n_paths(); ++p) absx[p] = std::fabs(x[p]);
    double target = std::sqrt(2.0 / 3.14159265358979323846);
    CHECK(std::fabs(mean_of(absx) - target) <= 3.0 * sd_of(absx, mean_of(absx)) / std::sqrt(double(ens.n_paths())));
}

TEST_CASE("increment statistics") {
    PathEnsemble ens = small_ensemble(21, 50000);
    auto reports = increments_test(ens, Evaluation{0});
    REQUIRE(!reports.empty());
    for (const auto& r : reports) {
        INFO(r.statistic);
        CHECK(r.pass(4.5));
    }
    // theoretical entries: mean 0, var = dt
    CHECK(reports[0].theoretical == 0.0);
    CHECK(reports[1].theoretical == 1.0);
    CHECK_THROWS_AS(increments_test(small_ensemble(1, 10), Evaluation{0}), TooFewPaths);
}

TEST_CASE("covariance matrix matches min(t_i,t_j)") {
    PathEnsemble ens = small_ensemble(22, 50000);
    CovarianceReport rep = covariance_test(ens, Evaluation{0});
    REQUIRE(rep.entries.size() == 6);  // upper triangle of a 3x3
    std::vector<double> expected{1.0, 1.0, 1.0, 2.0, 2.0, 3.0};
    for (std::size_t i = 0; i < rep.entries.size(); ++i) {
        INFO(rep.entries[i].statistic);
        CHECK(rep.entries[i].theoretical == expected[i]);
        CHECK(rep.entries[i].pass(4.0));
    }
    CHECK(rep.max_abs_err < 0.1);
}

TEST_CASE("mgf: exact at u=0, matches N(0,1) mgf, and the worked two-time case") {
    PathEnsemble ens = small_ensemble(23, 50000);
    std::vector<double> zeros{0.0, 0.0, 0.0};
    MomentReport zero = mgf_test(ens, Evaluation{0}, zeros);
    CHECK(zero.empirical == 1.0);
    CHECK(zero.theoretical == 1.0);

    PathEnsemble one = simulate_bm(TimeGrid::with_origin({1.0}), line(), 50000, 24);
    std::vector<double> u1{1.0};
    MomentReport m1 = mgf_test(one, Evaluation{0}, u1);
    CHECK(m1.theoretical == doctest::Approx(std::exp(0.5)).epsilon(1e-12));
    CHECK(m1.pass(4.0));

    PathEnsemble two = simulate_bm(TimeGrid::with_origin({1.0, 2.0}), line(), 50000, 25);
    std::vector<double> u2{0.5, 0.5};
    MomentReport m2 = mgf_test(two, Evaluation{0}, u2);
    CHECK(m2.theoretical == doctest::Approx(std::exp(0.625)).epsilon(1e-12));
    CHECK(m2.pass(4.0));

    // the variant without the 1/2 on the t_1 factor is a different, larger
    // number
    std::vector<double> ts{1.0, 2.0};
    CHECK(mgf_theoretical(u2, ts, false) == doctest::Approx(std::exp(1.125)).epsilon(1e-12));
}

TEST_CASE("mgf guards: domain checks and unstable moments") {
    PathEnsemble ens = simulate_bm(TimeGrid::with_origin({1.0, 4.0}), line(), 2000, 1);
    std::vector<double> heavy{1.0, 1.0};
    // Var exp(W_1 + W_4) is ~1e6 at these times; the standard error blows past
    // 25% of the theoretical value
    CHECK_THROWS_AS(mgf_test(ens, Evaluation{0}, heavy), UnstableMoment);
    std::vector<double> too_big{2.0, 0.0};
    CHECK_THROWS_AS(mgf_test(ens, Evaluation{0}, too_big), InvalidRange);
    PathEnsemble late = simulate_bm(TimeGrid::with_origin({5.0}), line(), 2000, 30);
    std::vector<double> u1{0.5};
    CHECK_THROWS_AS(mgf_test(late, Evaluation{0}, u1), InvalidRange);
}

TEST_CASE("martingale orthogonality of B_t^2 - B_s^2 - (t-s)") {
    PathEnsemble ens = small_ensemble(26, 50000);
    auto reports = martingale_sq_test(ens, Evaluation{0}, 1, 2);
    REQUIRE(reports.size() == 4);
    for (const auto& r : reports) {
        INFO(r.statistic);
        CHECK(r.pass(4.0));
    }
    // s = t: statistic is identically zero
    auto same = martingale_sq_test(ens, Evaluation{0}, 2, 2);
    for (const auto& r : same) {
        CHECK(r.empirical == 0.0);
        CHECK(r.std_error == 0.0);
        CHECK(r.z_score == 0.0);
    }

    // custom battery
    static const TestFunction kCos[] = {{"cos(x)", [](double x) { return std::cos(x); }}};
    auto custom = martingale_sq_test(ens, Evaluation{0}, 1, 2, kCos);
    REQUIRE(custom.size() == 1);
    CHECK(custom[0].pass(4.0));
}

TEST_CASE("wiener covariance 2 E[B_t B_s] = 2s") {
    PathEnsemble ens = small_ensemble(27, 50000);
    MomentReport r = wiener_covariance_test(ens, Evaluation{0}, 1, 2);
    CHECK(r.theoretical == 2.0);
    CHECK(r.pass(4.0));
    MomentReport same = wiener_covariance_test(ens, Evaluation{0}, 2, 2);
    CHECK(same.theoretical == 4.0);  // 2 E[B_t^2] = 2t
    CHECK(same.pass(4.0));
}

TEST_CASE("quadratic variation of single paths") {
    auto tg = TimeGrid::uniform(100, 1.0);
    ProcessPath flat(line(), tg, std::vector<double>(101, 0.0));
    CHECK(quadratic_variation(flat, Evaluation{0}, *tg) == 0.0);

    ProcessPath path = simulate_single_path(tg, line(), 5, 0);
    double qv = quadratic_variation(path, Evaluation{0}, *tg);
    CHECK(qv > 0.0);
    // a coarser sub-partition gives a different but finite value
    auto coarse = TimeGrid::uniform(10, 1.0);
    CHECK(quadratic_variation(path, Evaluation{0}, *coarse) > 0.0);
    auto bad = TimeGrid::of({0.0, 0.123});
    CHECK_THROWS_AS(quadratic_variation(path, Evaluation{0}, *bad), PartitionOutOfRange);
    auto past = TimeGrid::of({0.0, 2.0});
    CHECK_THROWS_AS(quadratic_variation(path, Evaluation{0}, *past), PartitionOutOfRange);
}

TEST_CASE("quadratic variation: mean T and chi-square variance") {
    auto tg = TimeGrid::uniform(100, 1.0);
    PathEnsemble ens = simulate_bm(tg, line(), 20000, 31);
    std::vector<double> qv(ens.n_paths());
    for (int p = 0; p < ens.n_paths(); ++p)
        qv[p] = quadratic_variation(ens.path(p), Evaluation{0}, *tg);
    double m = mean_of(qv);
    double var = central_moment(qv, m, 2);
    double se_mean = sd_of(qv, m) / std::sqrt(double(ens.n_paths()));
    CHECK(std::fabs(m - 1.0) <= 4.0 * se_mean);
    // Var[QV] = 2 sum dt^2 = 2/100
    CHECK(var == doctest::Approx(0.02).epsilon(0.15));
}

TEST_CASE("qv convergence across refinements") {
    std::vector<TimeGridPtr> parts{TimeGrid::uniform(10, 1.0), TimeGrid::uniform(100, 1.0),
                                   TimeGrid::uniform(1000, 1.0)};
    auto reports = qv_convergence_test(parts, line(), 20000, Evaluation{0}, 33);
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].theoretical == doctest::Approx(std::sqrt(0.2)).epsilon(1e-12));
    CHECK(reports[1].theoretical == doctest::Approx(std::sqrt(0.02)).epsilon(1e-12));
    CHECK(reports[2].theoretical == doctest::Approx(std::sqrt(0.002)).epsilon(1e-12));
    for (const auto& r : reports) {
        INFO(r.statistic);
        CHECK(std::fabs(r.empirical - r.theoretical) / r.theoretical < 0.1);
        CHECK(r.pass(4.0));
    }
    CHECK(reports[0].empirical > reports[1].empirical);
    CHECK(reports[1].empirical > reports[2].empirical);
}

TEST_CASE("ito integral: basic integrands and adaptedness") {
    auto tg = TimeGrid::uniform(50, 1.0);
    ProcessPath path = simulate_single_path(tg, line(), 41, 0);

    std::vector<IntegrandSample> zero(50);
    for (int j = 0; j < 50; ++j) zero[j] = {0.0, j};
    CHECK(ito_integral(path, Evaluation{0}, zero) == 0.0);

    std::vector<IntegrandSample> one(50);
    for (int j = 0; j < 50; ++j) one[j] = {1.0, j};
    double telescoped = ito_integral(path, Evaluation{0}, one);
    CHECK(telescoped == doctest::Approx(path.evaluate(50, Evaluation{0})).epsilon(1e-12));

    std::vector<IntegrandSample> peeking(50);
    for (int j = 0; j < 50; ++j) peeking[j] = {path.wiener(j + 1), j + 1};
    CHECK_THROWS_AS(ito_integral(path, Evaluation{0}, peeking), NonAdaptedIntegrand);
}

TEST_CASE("ito consistency: sum 2 W dW -> W_T^2 - T in L2") {
    std::vector<int> meshes{10, 100};
    auto reports = ito_consistency_test(meshes, 1.0, line(), 20000, Evaluation{0}, 43);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].theoretical == doctest::Approx(std::sqrt(0.2)).epsilon(1e-12));
    CHECK(reports[1].theoretical == doctest::Approx(std::sqrt(0.02)).epsilon(1e-12));
    for (const auto& r : reports) {
        INFO(r.statistic);
        CHECK(r.empirical <= 1.25 * r.theoretical);
        CHECK(std::fabs(r.empirical - r.theoretical) / r.theoretical < 0.1);
    }
}

TEST_CASE("ito integral is a martingale against the battery") {
    auto reports = ito_martingale_test(line(), 200, 1.0, 2.0, 30000, Evaluation{0}, 44);
    REQUIRE(reports.size() == 4);
    for (const auto& r : reports) {
        INFO(r.statistic);
        CHECK(r.pass(4.0));
    }
}

TEST_CASE("riesz moment conditions") {
    PathEnsemble ens = small_ensemble(51, 50000);
    auto reports = riesz_moment_test(ens, Evaluation{0}, 0, 1);
    REQUIRE(reports.size() >= 3);
    CHECK(reports[0].theoretical == 0.0);
    CHECK(reports[1].theoretical == 1.0);
    CHECK(reports[2].theoretical == 3.0);
    for (const auto& r : reports) {
        INFO(r.statistic);
        CHECK(r.pass(4.0));
    }
    // (s,t) = (1,3): second moment 2
    auto wide = riesz_moment_test(ens, Evaluation{0}, 1, 3);
    CHECK(wide[1].theoretical == 2.0);
    CHECK(wide[1].pass(4.0));
    CHECK_THROWS_AS(riesz_moment_test(small_ensemble(1, 2000), Evaluation{0}, 0, 1),
                    TooFewPaths);
}
