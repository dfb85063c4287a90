// bench_kernels — wall-time comparison of the OpenMP kernels against their
// serial references: photonic unitary construction and the tuple-sum
// invariants

#include "qlo/invariants.hpp"
#include "qlo/lie_optics.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

namespace {

double time_seconds(const std::function<void()>& body, int repetitions) {
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < repetitions; ++i) body();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count() / repetitions;
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-38s serial %9.4f ms   parallel %9.4f ms   speedup %5.2fx\n", name,
                serial * 1e3, parallel * 1e3, serial / parallel);
}

}  // namespace

int main() {
    using namespace qlo;

    {
        const ScatteringMatrix s = haar_unitary(5, 7);
        const int n = 6;  // M = 210
        volatile double sink = 0.0;
        const double serial_time =
            time_seconds([&] { sink = serial::photonic_unitary(s, n).norm(); }, 3);
        const double parallel_time =
            time_seconds([&] { sink = photonic_unitary(s, n).norm(); }, 3);
        (void)sink;
        report("photonic_unitary m=5 n=6", serial_time, parallel_time);
    }

    {
        PhotonicState state = make_pure({{1.0, {2, 1, 1}}}, 3);
        state = evolve(state, haar_unitary(3, 11));
        const SectorBlock& block = state.blocks.at(4);
        volatile double sink = 0.0;
        const double serial_p =
            time_seconds([&] { sink = serial::higher_projection(block, 3).matrix.norm(); }, 3);
        const double parallel_p =
            time_seconds([&] { sink = higher_projection(block, 3).matrix.norm(); }, 3);
        report("higher_projection m=3 n=4 k=3", serial_p, parallel_p);

        const double serial_n =
            time_seconds([&] { sink = serial::nested_commutator(block, 3).matrix.norm(); }, 3);
        const double parallel_n =
            time_seconds([&] { sink = nested_commutator(block, 3).matrix.norm(); }, 3);
        report("nested_commutator m=3 n=4 k=3", serial_n, parallel_n);

        const double serial_h =
            time_seconds([&] { sink = serial::higher_preimage(state, 3).norm(); }, 3);
        const double parallel_h =
            time_seconds([&] { sink = higher_preimage(state, 3).norm(); }, 3);
        (void)sink;
        report("higher_preimage m=3 n=4 k=3", serial_h, parallel_h);
    }

    return 0;
}
