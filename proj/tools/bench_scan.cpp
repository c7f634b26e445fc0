#include <chrono>
#include <cstdio>

#include "mptt/break_scan.hpp"
#include "mptt/synth.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

// Wall-time comparison of the serial reference scan against the parallel
// scan on a large planted panel, with an equality check on the result table.
int main(int argc, char** argv) {
    int years = argc > 1 ? std::atoi(argv[1]) : 4000;
    int repeats = argc > 2 ? std::atoi(argv[2]) : 3;

    mptt::SyntheticSpec spec = mptt::paper_like_spec();
    spec.start_year = 0;
    spec.end_year = years - 1;
    spec.tau = years / 2;
    spec.noise_sigma = 0.02;
    const auto panel = mptt::generate(spec);
    const auto logpanel = mptt::to_log(panel);
    const mptt::Window window{spec.start_year, spec.end_year};

    auto time_it = [&](auto&& fn) {
        double best = 1e300;
        mptt::BreakScanResult result;
        for (int r = 0; r < repeats; ++r) {
            const auto t0 = std::chrono::steady_clock::now();
            result = fn();
            const auto t1 = std::chrono::steady_clock::now();
            best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
        }
        return std::pair{best, result};
    };

    auto [t_serial, serial] = time_it([&] {
        return mptt::scan_serial(logpanel, window, 10, mptt::Criterion::bic,
                                 mptt::PhaseForm::step_in_time);
    });
    auto [t_parallel, parallel] = time_it([&] {
        return mptt::scan(logpanel, window, 10, mptt::Criterion::bic,
                          mptt::PhaseForm::step_in_time);
    });

    bool identical = serial.rows.size() == parallel.rows.size() &&
                     serial.best_tau == parallel.best_tau;
    for (std::size_t i = 0; identical && i < serial.rows.size(); ++i) {
        identical = serial.rows[i].tau == parallel.rows[i].tau &&
                    serial.rows[i].bic == parallel.rows[i].bic &&
                    serial.rows[i].beta1 == parallel.rows[i].beta1;
    }

#ifdef _OPENMP
    std::printf("threads:       %d\n", omp_get_max_threads());
#else
    std::printf("threads:       1 (built without OpenMP)\n");
#endif
    std::printf("panel years:   %d  candidates: %zu\n", years, serial.rows.size());
    std::printf("serial scan:   %.4f s\n", t_serial);
    std::printf("parallel scan: %.4f s  (speedup %.2fx)\n", t_parallel,
                t_serial / t_parallel);
    std::printf("results identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
