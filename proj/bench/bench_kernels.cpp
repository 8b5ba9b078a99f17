// Timing comparison of the parallel production kernels against their
// serial reference implementations, plus the compressed intertwiner
// solver against the dense one. Prints one line per case.

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "support/gen.hpp"
#include "tupdec/commutant.hpp"
#include "tupdec/eig.hpp"
#include "tupdec/matrix.hpp"

using namespace tupdec;

namespace {

double time_best_ms(const std::function<void()>& fn, int reps) {
    fn(); // warm up
    double best = 1e100;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void row(const char* name, int size, double fast_ms, double ref_ms) {
    std::printf("%-28s n=%-4d %10.3f ms   reference %10.3f ms   speedup %.2fx\n", name, size,
                fast_ms, ref_ms, ref_ms / fast_ms);
}

} // namespace

int main() {
    Rng rng(1);

    for (int n : {64, 128, 192}) {
        CMatrix a = gen::random_matrix(n, n, rng);
        CMatrix b = gen::random_matrix(n, n, rng);
        volatile double sink = 0.0;
        double fast = time_best_ms([&] { sink = sink + matmul(a, b)(0, 0).real(); }, 5);
        double ref = time_best_ms([&] { sink = sink + matmul_serial(a, b)(0, 0).real(); }, 5);
        row("matmul", n, fast, ref);
    }

    for (int n : {24, 48, 72}) {
        CMatrix h = hermitize(gen::random_matrix(n, n, rng));
        volatile double sink = 0.0;
        double fast = time_best_ms([&] { sink = sink + hermitian_eig(h, 1e-9).values[0]; }, 3);
        double ref = time_best_ms([&] { sink = sink + hermitian_eig_serial(h, 1e-9).values[0]; }, 3);
        row("hermitian_eig", n, fast, ref);
    }

    for (int m : {2, 4, 6}) {
        MatrixTuple base = gen::random_irreducible(2, 3, rng);
        MatrixTuple t = conjugate_tuple(gen::random_unitary(3 * m, rng), inflate(base, m));
        volatile int sink = 0;
        double fast =
            time_best_ms([&] { sink = sink + int(intertwiner_basis(t, t, 1e-9).basis.size()); }, 3);
        double ref = time_best_ms(
            [&] { sink = sink + int(intertwiner_basis_dense(t, t, 1e-9).basis.size()); }, 3);
        row("intertwiner (compressed)", 3 * m, fast, ref);
    }

    return 0;
}
