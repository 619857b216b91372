// Benchmark comparing the serial reference kernels against their OpenMP
// counterparts on representative workloads. Prints timings only; result
// agreement is checked and reported, wall-clock ratios are informational.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"

#include "gqlab/constructions.hpp"
#include "gqlab/geometry.hpp"
#include "gqlab/group.hpp"
#include "gqlab/search.hpp"

using namespace gqlab;
using clock_type = std::chrono::steady_clock;

namespace {

double ms_of(const std::function<void()>& body) {
    auto t0 = clock_type::now();
    body();
    auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const std::string& kernel, const std::string& workload, double serial_ms,
         double parallel_ms, bool agree) {
    std::printf("%-22s %-24s %10.2f %10.2f %8.2fx  %s\n", kernel.c_str(), workload.c_str(),
                serial_ms, parallel_ms, parallel_ms > 0 ? serial_ms / parallel_ms : 0.0,
                agree ? "ok" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP kernel timings"};
    int jobs = 0;
    int reps = 50;
    app.add_option("--jobs", jobs, "worker threads for the parallel side (0 = all)");
    app.add_option("--reps", reps, "repetitions for the short geometry scans");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    int effective = jobs > 0 ? jobs : omp_get_max_threads();
#else
    int effective = 1;
#endif
    std::printf("parallel side uses %d worker(s); serial side is the reference implementation\n\n",
                effective);
    std::printf("%-22s %-24s %10s %10s %9s\n", "kernel", "workload", "serial/ms", "parallel/ms",
                "ratio");

    // Associativity scan over full multiplication tables.
    for (auto [n, q] : {std::pair{2, 3}, std::pair{4, 2}}) {
        group_table g = heisenberg(n, q);
        std::optional<std::array<int, 3>> ws, wp;
        double s = ms_of([&] { ws = associativity_witness_serial(g.mul_tab, g.n); });
        double p = ms_of([&] { wp = associativity_witness_parallel(g.mul_tab, g.n, jobs); });
        row("associativity-scan", "triple group |G|=" + std::to_string(g.n), s, p, ws == wp);
    }

    // Projection-property scan across every non-incident point-line pair.
    for (int q : {3, 4}) {
        incidence_geometry geo = symplectic_quadrangle(q);
        auto coll = collinearity_map(geo);
        bool agree = true;
        double s = ms_of([&] {
            for (int i = 0; i < reps; ++i) agree &= !projection_scan_serial(geo, coll);
        });
        double p = ms_of([&] {
            for (int i = 0; i < reps; ++i) agree &= !projection_scan_parallel(geo, coll, jobs);
        });
        row("projection-scan", "symplectic q=" + std::to_string(q) + " x" + std::to_string(reps),
            s, p, agree);
    }

    // Exhaustive family search.
    struct job {
        int n, q, s, t;
    };
    for (job j : {job{1, 3, 3, 3}, job{2, 2, 4, 2}}) {
        group_table g = heisenberg(j.n, j.q);
        search_budget serial_budget;
        serial_budget.jobs = 1;
        search_budget parallel_budget;
        parallel_budget.jobs = jobs;
        kantor_search_result rs, rp;
        double s =
            ms_of([&] { rs = search_kantor_families_serial(g, j.s, j.t, serial_budget); });
        double p =
            ms_of([&] { rp = search_kantor_families_parallel(g, j.s, j.t, parallel_budget); });
        bool agree = rs.complete && rp.complete && rs.families.size() == rp.families.size();
        for (std::size_t i = 0; agree && i < rs.families.size(); ++i)
            agree = rs.families[i].members == rp.families[i].members;
        row("kantor-search",
            "|G|=" + std::to_string(g.n) + " type (" + std::to_string(j.s) + "," +
                std::to_string(j.t) + ")",
            s, p, agree);
    }

    return 0;
}
