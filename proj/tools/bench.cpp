// Benchmark: OpenMP kernels against the serial reference, with a bitwise
// equality check on every compared output.

#include <chrono>
#include <cstdio>
#include <vector>

#include "setbm/brownian.hpp"
#include "setbm/distribution.hpp"
#include "setbm/parallel.hpp"

using namespace setbm;

namespace {

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

template <typename Fn>
double timed(Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return seconds(t0, std::chrono::steady_clock::now());
}

void row(const char* name, double serial, double parallel, bool identical) {
    std::printf("%-26s %10.3fs %10.3fs %8.2fx   %s\n", name, serial, parallel,
                serial / parallel, identical ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main() {
    std::printf("workers: %d\n", worker_count());
    std::printf("%-26s %11s %11s %9s\n", "kernel", "serial", "openmp", "speedup");

    {
        auto tg = TimeGrid::uniform(64, 2.0);
        GridPtr g = DirectionGrid::line();
        PathEnsemble ser = simulate_bm(tg, g, 1, 1, Exec::Serial);
        PathEnsemble par = simulate_bm(tg, g, 1, 1, Exec::Parallel);
        double ts = timed([&] { ser = simulate_bm(tg, g, 200000, 12345, Exec::Serial); });
        double tp = timed([&] { par = simulate_bm(tg, g, 200000, 12345, Exec::Parallel); });
        bool same = ser.raw().size() == par.raw().size();
        for (std::size_t i = 0; same && i < ser.raw().size(); ++i)
            same = ser.raw()[i] == par.raw()[i];
        row("simulate_bm 2e5x64", ts, tp, same);
    }

    {
        std::vector<TimeGridPtr> parts{TimeGrid::uniform(1000, 1.0)};
        std::vector<MomentReport> rs, rp;
        double ts = timed([&] {
            rs = qv_convergence_test(parts, DirectionGrid::line(), 100000, Evaluation{0}, 7,
                                     Exec::Serial);
        });
        double tp = timed([&] {
            rp = qv_convergence_test(parts, DirectionGrid::line(), 100000, Evaluation{0}, 7,
                                     Exec::Parallel);
        });
        row("qv 1e5 paths x 1000", ts, tp, rs[0].empirical == rp[0].empirical);
    }

    {
        SetRandomVariable g = exponential_pair_variable(1.0, 3);
        ConvexSet y = ConvexSet::interval(0.2, 1.9);
        DistributionEstimate es, ep;
        double ts = timed([&] { es = distribution_function(g, y, 2000000, 11, Exec::Serial); });
        double tp = timed([&] { ep = distribution_function(g, y, 2000000, 11, Exec::Parallel); });
        row("distfn 2e6 samples", ts, tp, es.value == ep.value);
    }

    return 0;
}
