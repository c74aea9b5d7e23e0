// Times the OpenMP kernels against their serial references and checks that
// both produce the same answers.
//
//   bench_sweep [--family cycle] [--n 5] [--repeats 3]

#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "compident/ident.hpp"
#include "compident/sweep.hpp"

using namespace compident;

namespace {

template <class F>
double best_of(int repeats, F&& f) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void report(const char* what, double serial, double parallel, bool same) {
    std::printf("%-28s serial %8.3f s  parallel %8.3f s  speedup %5.2fx  %s\n", what, serial, parallel,
                serial / parallel, same ? "same result" : "RESULTS DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Serial vs OpenMP timing for the sweep and rank kernels"};
    std::string family = "cycle";
    int n = 5, repeats = 3;
    app.add_option("--family", family)->check(CLI::IsMember({"cycle", "catenary", "tree"}));
    app.add_option("--n", n);
    app.add_option("--repeats", repeats)->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    std::printf("threads: %d\n", omp_get_max_threads());
    SweepOptions opts;
    opts.family = parse_family(family);
    opts.n = n;
    opts.single_in_out = opts.family == Family::Tree;

    SweepReport s, p;
    const double ts = best_of(repeats, [&] { s = run_sweep_serial(opts); });
    const double tp = best_of(repeats, [&] { p = run_sweep(opts); });
    const std::string label = family + " sweep n=" + std::to_string(n) + " (" + std::to_string(s.rows.size()) + " rows)";
    report(label.c_str(), ts, tp, report_csv(s) == report_csv(p));

    // A Jacobian large enough for the trial loop to matter.
    const auto m = make_cycle(8, {1}, {5}, {1, 4});
    const auto J = jacobian(coefficient_map(m), m.parameters());
    RankOptions ro;
    ro.trials = 64;
    std::size_t rs = 0, rp = 0;
    const double rts = best_of(repeats, [&] { rs = generic_rank_serial(J, ro); });
    const double rtp = best_of(repeats, [&] { rp = generic_rank(J, ro); });
    report("generic rank, 8-cycle x64", rts, rtp, rs == rp);
    return report_csv(s) == report_csv(p) && rs == rp ? 0 : 1;
}
