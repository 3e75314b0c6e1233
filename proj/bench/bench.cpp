// Serial reference vs OpenMP kernels on desk-scale instances.
//   listrec_bench [threads]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "listrec/codes.hpp"
#include "listrec/designs.hpp"
#include "listrec/search.hpp"

using namespace listrec;

namespace {

double seconds(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-34s %10.4f %10.4f %8.2fx\n", name, serial, parallel, parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
    const int threads = argc > 1 ? std::atoi(argv[1]) : 0;
    const ExecOptions par{kDefaultEnumerationBudget, threads};
    std::printf("threads: %d\n", resolve_threads(threads));
    std::printf("%-34s %10s %10s %9s\n", "kernel", "serial", "openmp", "speedup");

    {
        const auto spec = make_frs(13, 3, 4, 4, 2);
        const auto kernels = coordinate_kernels(spec);
        std::size_t a = 0, b = 0;
        const double ts = seconds([&] { a = reference::verify_design(kernels, 2, spec.s).max_sum; });
        const double tp = seconds([&] { b = verify_design(kernels, 2, spec.s, par).max_sum; });
        if (a != b) std::fprintf(stderr, "mismatch in verify_design\n");
        row("verify_design FRS(13,3,4,4) d=2", ts, tp);
    }
    {
        const auto spec = make_frs(7, 2, 3, 2, 3);
        const Rational rho(1, 3);
        bool a = false, b = false;
        const double ts = seconds([&] {
            a = reference::average_radius_bad_list_search(spec, 1, 2, rho, AdversaryMode::kListDecoding).found;
        });
        AverageRadiusOptions opts;
        opts.exec = par;
        const double tp = seconds([&] {
            b = average_radius_bad_list_search(spec, 1, 2, rho, AdversaryMode::kListDecoding, opts).found;
        });
        if (a != b) std::fprintf(stderr, "mismatch in average_radius_bad_list_search\n");
        row("avg-radius FRS(7,2,3,2) L=2", ts, tp);
    }
    {
        const auto spec = sample_code(Family::kRlc, 5, 2, 4, 5, 7);
        ListTable table;
        for (std::size_t i = 0; i < spec.n; ++i) table.sets.push_back({{0, 0}, {1, 2}});
        std::size_t a = 0, b = 0;
        const double ts = seconds([&] { a = reference::brute_list_recover(spec, table, Rational(1, 2)).size(); });
        const double tp = seconds([&] { b = brute_list_recover(spec, table, Rational(1, 2), par).size(); });
        if (a != b) std::fprintf(stderr, "mismatch in brute_list_recover\n");
        row("recover RLC(5,2,4,5)", ts, tp);
    }
    return 0;
}
