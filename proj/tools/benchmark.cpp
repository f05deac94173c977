// Compares the serial reference implementations against the OpenMP variants
// on representative workloads and reports wall-clock times.
#include <chrono>
#include <iostream>

#include "k3lat/lattice.hpp"
#include "k3lat/lefschetz.hpp"

using namespace k3lat;
using clock_type = std::chrono::steady_clock;

namespace {

double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

void bench_isometry() {
    auto e8 = standard_lattice("E8");
    IMat p(8, IVec(8, Int(0)));
    // permuted, re-mixed copy of E8 to make the search nontrivial
    const int perm[8] = {3, 1, 4, 0, 7, 5, 2, 6};
    for (int i = 0; i < 8; ++i) p[perm[i]][i] = 1;
    IMat g2 = imat_mul(imat_mul(imat_transpose(p), e8.gram()), p);
    IntegerLattice b(g2, "E8-permuted");

    auto t0 = clock_type::now();
    auto serial = is_isometric_definite_serial(e8, b, 50'000'000);
    double t_serial = ms_since(t0);

    t0 = clock_type::now();
    auto parallel = is_isometric_definite(e8, b, 50'000'000);
    double t_parallel = ms_since(t0);

    std::cout << "isometry search (E8 vs permuted E8):\n";
    std::cout << "  serial   " << t_serial << " ms, verdict "
              << (serial.verdict == Verdict::Yes ? "yes" : "no") << "\n";
    std::cout << "  parallel " << t_parallel << " ms, verdict "
              << (parallel.verdict == Verdict::Yes ? "yes" : "no") << "\n";
}

void bench_solver() {
    for (long n : {5L, 7L, 8L}) {
        auto t0 = clock_type::now();
        auto serial = search_point_configs_serial(n, 0, 24);
        double t_serial = ms_since(t0);

        t0 = clock_type::now();
        auto parallel = search_point_configs(n, 0, 24);
        double t_parallel = ms_since(t0);

        std::cout << "fixed point solver N=" << n << ":\n";
        std::cout << "  serial   " << t_serial << " ms, " << serial.size() << " solutions\n";
        std::cout << "  parallel " << t_parallel << " ms, " << parallel.size()
                  << " solutions\n";
    }
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::cout << "OpenMP enabled\n";
#else
    std::cout << "OpenMP not enabled; both variants run serially\n";
#endif
    bench_isometry();
    bench_solver();
    return 0;
}
