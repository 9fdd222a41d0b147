#include "setbm/brownian.hpp"

#include <algorithm>
#include <cmath>

#include "setbm/errors.hpp"
#include "setbm/rng.hpp"

namespace setbm {

namespace {

constexpr int kMinPaths = 1000;
constexpr int kMinPathsRiesz = 10000;

void require_evaluation(const GridPtr& grid, Evaluation f, const char* op) {
    if (f.k < 0 || f.k >= grid->size())
        throw GridMismatch(std::string(op) + ": evaluation index outside grid");
}

void require_paths(const PathEnsemble& ens, int min_paths, const char* op) {
    if (ens.n_paths() < min_paths)
        throw TooFewPaths(std::string(op) + ": needs at least " + std::to_string(min_paths) +
                          " paths");
}

std::string time_pair(double a, double b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

double fn_one(double) { return 1.0; }
double fn_id(double x) { return x; }
double fn_sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }
double fn_clipped_sq(double x) { return std::fmin(x * x, 10.0); }

const TestFunction kBattery[] = {
    {"1", fn_one},
    {"x", fn_id},
    {"sign(x)", fn_sign},
    {"min(x^2,10)", fn_clipped_sq},
};

// Mean-of-array statistic with its standard error.
MomentReport mean_report(std::string name, std::span<const double> y, double theoretical) {
    double m = mean_of(y);
    double se = sd_of(y, m) / std::sqrt(static_cast<double>(y.size()));
    return make_report(std::move(name), m, theoretical, se);
}

}  // namespace

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
    if (times_.empty()) throw EmptyTimeGrid("TimeGrid: no time points");
    if (times_.front() != 0.0) throw InvalidRange("TimeGrid: first time must be 0");
    for (std::size_t i = 1; i < times_.size(); ++i)
        if (!(times_[i] > times_[i - 1]))
            throw InvalidRange("TimeGrid: times must be strictly increasing");
}

std::shared_ptr<const TimeGrid> TimeGrid::of(std::vector<double> times) {
    return std::make_shared<const TimeGrid>(std::move(times));
}

std::shared_ptr<const TimeGrid> TimeGrid::uniform(int steps, double t_end) {
    if (steps < 1 || !(t_end > 0.0)) throw InvalidRange("TimeGrid::uniform");
    std::vector<double> ts(steps + 1);
    for (int i = 0; i <= steps; ++i) ts[i] = t_end * i / steps;
    ts[0] = 0.0;
    return of(std::move(ts));
}

std::shared_ptr<const TimeGrid> TimeGrid::with_origin(std::vector<double> positive_times) {
    std::vector<double> ts;
    ts.reserve(positive_times.size() + 1);
    ts.push_back(0.0);
    ts.insert(ts.end(), positive_times.begin(), positive_times.end());
    return of(std::move(ts));
}

int TimeGrid::index_of(double t) const {
    auto it = std::lower_bound(times_.begin(), times_.end(), t);
    if (it == times_.end()) return -1;
    if (*it == t) return static_cast<int>(it - times_.begin());
    return -1;
}

ProcessPath::ProcessPath(GridPtr grid, TimeGridPtr times, std::vector<double> w)
    : grid_(std::move(grid)), times_(std::move(times)), w_(std::move(w)) {
    if (static_cast<int>(w_.size()) != times_->size())
        throw InvalidRange("ProcessPath: value count does not match time grid");
}

double ProcessPath::evaluate(int i, Evaluation f) const {
    if (f.k < 0 || f.k >= grid_->size()) throw GridMismatch("evaluate: index outside grid");
    return w_[i];  // e(k) == 1 for every k
}

EmbeddedElement ProcessPath::element(int i) const {
    return scaled_embed(w_[i], ConvexSet::unit_ball(grid_->dim()), grid_);
}

PathEnsemble::PathEnsemble(GridPtr grid, TimeGridPtr times, int n_paths)
    : grid_(std::move(grid)),
      times_(std::move(times)),
      n_paths_(n_paths),
      n_times_(times_->size()),
      w_(static_cast<std::size_t>(n_paths) * times_->size(), 0.0) {}

double PathEnsemble::evaluate(int p, int i, Evaluation f) const {
    if (f.k < 0 || f.k >= grid_->size()) throw GridMismatch("evaluate: index outside grid");
    return wiener(p, i);
}

ProcessPath PathEnsemble::path(int p) const {
    std::vector<double> w(n_times_);
    for (int i = 0; i < n_times_; ++i) w[i] = wiener(p, i);
    return ProcessPath(grid_, times_, std::move(w));
}

PathEnsemble simulate_bm(const TimeGridPtr& times, const GridPtr& grid, int n_paths,
                         std::uint64_t seed, Exec exec) {
    if (!times || times->size() == 0) throw EmptyTimeGrid("simulate_bm: empty time grid");
    if (n_paths < 1) throw InvalidRange("simulate_bm: n_paths must be >= 1");
    PathEnsemble ens(grid, times, n_paths);
    const int nt = times->size();
    const std::vector<double>& ts = times->times();
    parallel_for(n_paths, exec, [&](std::int64_t p) {
        RngStream s = RngStream::from(seed, static_cast<std::uint64_t>(p));
        double w = 0.0;
        ens.wiener(static_cast<int>(p), 0) = 0.0;
        for (int i = 1; i < nt; ++i) {
            w += std::sqrt(ts[i] - ts[i - 1]) * s.normal();
            ens.wiener(static_cast<int>(p), i) = w;
        }
    });
    return ens;
}

ProcessPath simulate_single_path(const TimeGridPtr& times, const GridPtr& grid,
                                 std::uint64_t seed, std::uint64_t path_index) {
    if (!times || times->size() == 0) throw EmptyTimeGrid("simulate_single_path");
    const std::vector<double>& ts = times->times();
    std::vector<double> w(ts.size(), 0.0);
    RngStream s = RngStream::from(seed, path_index);
    for (std::size_t i = 1; i < ts.size(); ++i)
        w[i] = w[i - 1] + std::sqrt(ts[i] - ts[i - 1]) * s.normal();
    return ProcessPath(grid, times, std::move(w));
}

std::span<const TestFunction> default_test_battery() { return kBattery; }

std::vector<MomentReport> increments_test(const PathEnsemble& ens, Evaluation f) {
    require_paths(ens, kMinPaths, "increments_test");
    const int n = ens.n_paths();
    const int nt = ens.n_times();
    const auto& ts = ens.timegrid().times();
    std::vector<MomentReport> out;
    std::vector<std::vector<double>> incr(nt - 1, std::vector<double>(n));
    for (int i = 0; i + 1 < nt; ++i)
        for (int p = 0; p < n; ++p)
            incr[i][p] = ens.evaluate(p, i + 1, f) - ens.evaluate(p, i, f);

    for (int i = 0; i + 1 < nt; ++i) {
        const double dt = ts[i + 1] - ts[i];
        const std::string tag = time_pair(ts[i], ts[i + 1]);
        double m = mean_of(incr[i]);
        double sd = sd_of(incr[i], m);
        out.push_back(make_report("increment_mean" + tag, m, 0.0,
                                  sd / std::sqrt(static_cast<double>(n))));
        std::vector<double> sq(n);
        for (int p = 0; p < n; ++p) {
            double d = incr[i][p] - m;
            sq[p] = d * d;
        }
        double var = mean_of(sq) * n / (n - 1.0);
        double se_var = sd_of(sq, mean_of(sq)) / std::sqrt(static_cast<double>(n));
        out.push_back(make_report("increment_var" + tag, var, dt, se_var));
        double m2 = central_moment(incr[i], m, 2);
        double m4 = central_moment(incr[i], m, 4);
        double kurt = m4 / (m2 * m2) - 3.0;
        out.push_back(make_report("increment_excess_kurtosis" + tag, kurt, 0.0,
                                  std::sqrt(24.0 / n)));
    }
    for (int i = 0; i + 1 < nt; ++i) {
        for (int j = i + 1; j + 1 < nt; ++j) {
            double mi = mean_of(incr[i]), mj = mean_of(incr[j]);
            double si = sd_of(incr[i], mi), sj = sd_of(incr[j], mj);
            std::vector<double> prod(n);
            for (int p = 0; p < n; ++p) prod[p] = (incr[i][p] - mi) * (incr[j][p] - mj);
            double corr = mean_of(prod) / (si * sj);
            out.push_back(make_report(
                "increment_corr[" + std::to_string(i) + "," + std::to_string(j) + "]", corr,
                0.0, 1.0 / std::sqrt(static_cast<double>(n))));
        }
    }
    return out;
}

CovarianceReport covariance_test(const PathEnsemble& ens, Evaluation f) {
    require_paths(ens, kMinPaths, "covariance_test");
    const int n = ens.n_paths();
    const int nt = ens.n_times();
    CovarianceReport rep;
    for (int i = 1; i < nt; ++i) rep.obs_times.push_back(ens.timegrid().time(i));
    std::vector<double> prod(n);
    for (int i = 1; i < nt; ++i) {
        for (int j = i; j < nt; ++j) {
            for (int p = 0; p < n; ++p) prod[p] = ens.evaluate(p, i, f) * ens.evaluate(p, j, f);
            double theo = std::fmin(ens.timegrid().time(i), ens.timegrid().time(j));
            MomentReport r = mean_report(
                "cov" + time_pair(ens.timegrid().time(i), ens.timegrid().time(j)), prod, theo);
            rep.max_abs_err = std::fmax(rep.max_abs_err, std::fabs(r.empirical - r.theoretical));
            rep.entries.push_back(std::move(r));
        }
    }
    return rep;
}

double mgf_theoretical(std::span<const double> u, std::span<const double> obs_times,
                       bool half_consistent) {
    if (u.size() != obs_times.size())
        throw InvalidRange("mgf_theoretical: u and observation times must align");
    const int m = static_cast<int>(u.size());
    double log_phi = 0.0;
    for (int i = 0; i < m; ++i) {
        double tail = 0.0;
        for (int j = i; j < m; ++j) tail += u[j];
        double t_prev = (i == 0) ? 0.0 : obs_times[i - 1];
        double c = half_consistent ? 0.5 : (i == 0 ? 1.0 : 0.5);
        log_phi += c * tail * tail * (obs_times[i] - t_prev);
    }
    return std::exp(log_phi);
}

MomentReport mgf_test(const PathEnsemble& ens, Evaluation f, std::span<const double> u) {
    require_paths(ens, kMinPaths, "mgf_test");
    const int n = ens.n_paths();
    const int m = ens.n_times() - 1;
    if (static_cast<int>(u.size()) != m)
        throw InvalidRange("mgf_test: u must have one entry per observation time");
    for (double ui : u)
        if (std::fabs(ui) > 1.0) throw InvalidRange("mgf_test: |u_i| <= 1 required");
    if (ens.timegrid().t_end() > 4.0) throw InvalidRange("mgf_test: t_m <= 4 required");

    std::vector<double> y(n);
    for (int p = 0; p < n; ++p) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += u[i] * ens.evaluate(p, i + 1, f);
        y[p] = std::exp(s);
    }
    double theo = mgf_theoretical(u, std::span<const double>(ens.timegrid().times()).subspan(1));
    MomentReport r = mean_report("mgf", y, theo);
    if (r.std_error > 0.25 * theo)
        throw UnstableMoment("mgf_test: standard error exceeds 25% of the theoretical value");
    return r;
}

std::vector<MomentReport> martingale_sq_test(const PathEnsemble& ens, Evaluation f,
                                             int s_index, int t_index) {
    return martingale_sq_test(ens, f, s_index, t_index, default_test_battery());
}

std::vector<MomentReport> martingale_sq_test(const PathEnsemble& ens, Evaluation f, int s_index,
                                             int t_index,
                                             std::span<const TestFunction> test_fns) {
    require_paths(ens, kMinPaths, "martingale_sq_test");
    if (s_index > t_index) throw InvalidRange("martingale_sq_test: requires s <= t");
    const int n = ens.n_paths();
    const double s_time = ens.timegrid().time(s_index);
    const double t_time = ens.timegrid().time(t_index);
    std::vector<MomentReport> out;
    std::vector<double> y(n);
    for (const TestFunction& g : test_fns) {
        for (int p = 0; p < n; ++p) {
            double xs = ens.evaluate(p, s_index, f);
            double xt = ens.evaluate(p, t_index, f);
            y[p] = (xt * xt - xs * xs - (t_time - s_time)) * g.fn(xs);
        }
        out.push_back(mean_report(
            "martingale_sq" + time_pair(s_time, t_time) + "[g=" + g.name + "]", y, 0.0));
    }
    return out;
}

MomentReport wiener_covariance_test(const PathEnsemble& ens, Evaluation f, int s_index,
                                    int t_index) {
    require_paths(ens, kMinPaths, "wiener_covariance_test");
    if (s_index > t_index) throw InvalidRange("wiener_covariance_test: requires s <= t");
    const int n = ens.n_paths();
    const double s_time = ens.timegrid().time(s_index);
    const double t_time = ens.timegrid().time(t_index);
    std::vector<double> y(n);
    for (int p = 0; p < n; ++p)
        y[p] = 2.0 * ens.evaluate(p, t_index, f) * ens.evaluate(p, s_index, f);
    return mean_report("wiener_covariance" + time_pair(s_time, t_time), y, 2.0 * s_time);
}

double quadratic_variation(const ProcessPath& path, Evaluation f, const TimeGrid& partition) {
    const TimeGrid& tg = path.timegrid();
    if (partition.t_end() > tg.t_end())
        throw PartitionOutOfRange("quadratic_variation: partition extends past the path");
    double qv = 0.0;
    int prev = tg.index_of(partition.time(0));
    if (prev < 0) throw PartitionOutOfRange("quadratic_variation: time not sampled");
    for (int j = 1; j < partition.size(); ++j) {
        int idx = tg.index_of(partition.time(j));
        if (idx < 0) throw PartitionOutOfRange("quadratic_variation: time not sampled");
        double d = path.evaluate(idx, f) - path.evaluate(prev, f);
        qv += d * d;
        prev = idx;
    }
    return qv;
}

std::vector<MomentReport> qv_convergence_test(std::span<const TimeGridPtr> partitions,
                                              const GridPtr& grid, int n_paths, Evaluation f,
                                              std::uint64_t seed, Exec exec) {
    if (n_paths < kMinPaths) throw TooFewPaths("qv_convergence_test: needs >= 1000 paths");
    require_evaluation(grid, f, "qv_convergence_test");
    std::vector<MomentReport> out;
    for (std::size_t level = 0; level < partitions.size(); ++level) {
        const TimeGrid& tg = *partitions[level];
        const std::vector<double>& ts = tg.times();
        const double t_end = tg.t_end();
        const std::uint64_t level_seed = derive_seed(seed, level);
        std::vector<double> y(n_paths);
        parallel_for(n_paths, exec, [&](std::int64_t p) {
            RngStream s = RngStream::from(level_seed, static_cast<std::uint64_t>(p));
            double qv = 0.0;
            for (std::size_t i = 1; i < ts.size(); ++i) {
                double dw = std::sqrt(ts[i] - ts[i - 1]) * s.normal();
                qv += dw * dw;
            }
            double r = qv - t_end;
            y[p] = r * r;
        });
        double mean_y = mean_of(y);
        double l2 = std::sqrt(mean_y);
        double sum_dt2 = 0.0;
        for (std::size_t i = 1; i < ts.size(); ++i) {
            double dt = ts[i] - ts[i - 1];
            sum_dt2 += dt * dt;
        }
        double theo = std::sqrt(2.0 * sum_dt2);
        double se_mean = sd_of(y, mean_y) / std::sqrt(static_cast<double>(n_paths));
        double se_l2 = l2 > 0.0 ? se_mean / (2.0 * l2) : 0.0;
        out.push_back(make_report("qv_l2[steps=" + std::to_string(tg.size() - 1) + "]", l2,
                                  theo, se_l2));
    }
    return out;
}

double ito_integral(const ProcessPath& path, Evaluation f,
                    std::span<const IntegrandSample> integrand) {
    const int nt = path.n_times();
    if (static_cast<int>(integrand.size()) < nt - 1)
        throw InvalidRange("ito_integral: integrand too short");
    double sum = 0.0;
    for (int j = 0; j + 1 < nt; ++j) {
        if (integrand[j].time_index_used > j)
            throw NonAdaptedIntegrand("ito_integral: integrand value at t_" +
                                      std::to_string(j) + " uses a future time");
        sum += integrand[j].value * (path.evaluate(j + 1, f) - path.evaluate(j, f));
    }
    return sum;
}

std::vector<MomentReport> ito_consistency_test(std::span<const int> steps_per_mesh,
                                               double t_end, const GridPtr& grid, int n_paths,
                                               Evaluation f, std::uint64_t seed, Exec exec) {
    if (n_paths < kMinPaths) throw TooFewPaths("ito_consistency_test: needs >= 1000 paths");
    require_evaluation(grid, f, "ito_consistency_test");
    std::vector<MomentReport> out;
    for (std::size_t level = 0; level < steps_per_mesh.size(); ++level) {
        const int steps = steps_per_mesh[level];
        const double dt = t_end / steps;
        const std::uint64_t level_seed = derive_seed(seed, 0xA50000 + level);
        std::vector<double> y(n_paths);
        parallel_for(n_paths, exec, [&](std::int64_t p) {
            RngStream s = RngStream::from(level_seed, static_cast<std::uint64_t>(p));
            double w = 0.0, integral = 0.0;
            for (int i = 0; i < steps; ++i) {
                double dw = std::sqrt(dt) * s.normal();
                integral += 2.0 * w * dw;
                w += dw;
            }
            double r = integral - (w * w - t_end);
            y[p] = r * r;
        });
        double mean_y = mean_of(y);
        double l2 = std::sqrt(mean_y);
        double theo = std::sqrt(2.0 * steps * dt * dt);
        double se_mean = sd_of(y, mean_y) / std::sqrt(static_cast<double>(n_paths));
        double se_l2 = l2 > 0.0 ? se_mean / (2.0 * l2) : 0.0;
        out.push_back(
            make_report("ito_l2[steps=" + std::to_string(steps) + "]", l2, theo, se_l2));
    }
    return out;
}

std::vector<MomentReport> ito_martingale_test(const GridPtr& grid, int n_steps, double t1,
                                              double t2, int n_paths, Evaluation f,
                                              std::uint64_t seed, Exec exec) {
    if (n_paths < kMinPaths) throw TooFewPaths("ito_martingale_test: needs >= 1000 paths");
    require_evaluation(grid, f, "ito_martingale_test");
    if (!(0.0 < t1 && t1 < t2)) throw InvalidRange("ito_martingale_test: requires 0 < t1 < t2");
    const double dt = t2 / n_steps;
    const int i1 = static_cast<int>(std::llround(t1 / dt));
    std::vector<double> w1(n_paths), di(n_paths);
    parallel_for(n_paths, exec, [&](std::int64_t p) {
        RngStream s = RngStream::from(seed, static_cast<std::uint64_t>(p));
        double w = 0.0, integral = 0.0, integral_t1 = 0.0, w_t1 = 0.0;
        for (int i = 0; i < n_steps; ++i) {
            double dw = std::sqrt(dt) * s.normal();
            integral += 2.0 * w * dw;
            w += dw;
            if (i + 1 == i1) {
                integral_t1 = integral;
                w_t1 = w;
            }
        }
        w1[p] = w_t1;
        di[p] = integral - integral_t1;
    });
    std::vector<MomentReport> out;
    std::vector<double> y(n_paths);
    for (const TestFunction& g : default_test_battery()) {
        for (int p = 0; p < n_paths; ++p) y[p] = di[p] * g.fn(w1[p]);
        out.push_back(mean_report("ito_martingale" + time_pair(t1, t2) + "[g=" + g.name + "]",
                                  y, 0.0));
    }
    return out;
}

std::vector<MomentReport> riesz_moment_test(const PathEnsemble& ens, Evaluation f, int s_index,
                                            int t_index) {
    require_paths(ens, kMinPathsRiesz, "riesz_moment_test");
    if (s_index >= t_index) throw InvalidRange("riesz_moment_test: requires s < t");
    const int n = ens.n_paths();
    const double s_time = ens.timegrid().time(s_index);
    const double t_time = ens.timegrid().time(t_index);
    const double dt = t_time - s_time;
    const std::string tag = time_pair(s_time, t_time);

    std::vector<double> d(n);
    for (int p = 0; p < n; ++p)
        d[p] = ens.evaluate(p, t_index, f) - ens.evaluate(p, s_index, f);

    std::vector<MomentReport> out;
    out.push_back(mean_report("riesz_first_moment" + tag, d, 0.0));
    std::vector<double> y(n);
    for (int p = 0; p < n; ++p) y[p] = d[p] * d[p];
    out.push_back(mean_report("riesz_second_moment" + tag, y, dt));
    for (int p = 0; p < n; ++p) y[p] = y[p] * y[p];
    out.push_back(mean_report("riesz_fourth_moment" + tag, y, 3.0 * dt * dt));
    for (const TestFunction& g : default_test_battery()) {
        for (int p = 0; p < n; ++p) y[p] = d[p] * g.fn(ens.evaluate(p, s_index, f));
        out.push_back(mean_report("riesz_orth" + tag + "[g=" + g.name + "]", y, 0.0));
    }
    return out;
}

}  // namespace setbm
