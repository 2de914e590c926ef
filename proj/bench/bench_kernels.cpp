// Times the OpenMP kernels against their serial reference implementations
// and checks that both sides produce identical results. Thread count comes
// from OpenMP, overridable with DIAGCOUNT_THREADS.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "diagcount/bigint.hpp"
#include "diagcount/matrix_ring.hpp"
#include "diagcount/oracle.hpp"
#include "diagcount/threading.hpp"

using namespace diagcount;

namespace {

using Clock = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn) {
    auto start = Clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-34s %10.1f ms %10.1f ms %7.2fx  %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, equal ? "results equal" : "MISMATCH");
}

}  // namespace

int main() {
    std::printf("threads: %d\n", configured_threads());
    std::printf("%-34s %13s %13s %8s\n", "kernel", "serial", "parallel", "speedup");

    {
        Modulus z4 = prime_power_modulus(2, 2);
        uint64_t serial_count = 0, parallel_count = 0;
        double s = time_ms([&] { serial_count = count_gl_serial(3, z4); });
        double p = time_ms([&] { parallel_count = count_gl(3, z4); });
        report("count GL_3(Z_4)", s, p, serial_count == parallel_count);
    }
    {
        Modulus z9 = prime_power_modulus(3, 2);
        BigCount serial_count, parallel_count;
        double s = time_ms([&] {
            serial_count = diag_count_brute_serial(2, z9, OrbitStrategy::FullGroup);
        });
        double p = time_ms([&] {
            parallel_count = diag_count_brute(2, z9, OrbitStrategy::FullGroup);
        });
        report("orbit union n=2 Z_9 (full GL)", s, p, serial_count == parallel_count);
    }
    {
        Modulus z4 = prime_power_modulus(2, 2);
        BigCount serial_count, parallel_count;
        double s = time_ms([&] {
            serial_count = diag_count_brute_serial(3, z4, OrbitStrategy::FullGroup);
        });
        double p = time_ms([&] {
            parallel_count = diag_count_brute(3, z4, OrbitStrategy::FullGroup);
        });
        report("orbit union n=3 Z_4 (full GL)", s, p, serial_count == parallel_count);
    }
    {
        Modulus z4 = prime_power_modulus(2, 2);
        BigCount serial_count, parallel_count;
        double s = time_ms([&] {
            serial_count = diag_count_brute_serial(3, z4, OrbitStrategy::GeneratorClosure);
        });
        double p = time_ms([&] {
            parallel_count = diag_count_brute(3, z4, OrbitStrategy::GeneratorClosure);
        });
        report("orbit union n=3 Z_4 (closure)", s, p, serial_count == parallel_count);
    }
    {
        Modulus z3 = prime_power_modulus(3, 1);
        BigCount serial_count, parallel_count;
        double s = time_ms([&] {
            serial_count = diag_count_brute_serial(4, z3, OrbitStrategy::GeneratorClosure);
        });
        double p = time_ms([&] {
            parallel_count = diag_count_brute(4, z3, OrbitStrategy::GeneratorClosure);
        });
        report("orbit union n=4 Z_3 (closure)", s, p, serial_count == parallel_count);
    }
    {
        Modulus z4 = prime_power_modulus(2, 2);
        auto specs = all_diagonal_specs(3, z4);
        std::vector<uint64_t> parallel_counts;
        double p = time_ms([&] { parallel_counts = commutant_counts(specs); });
        std::vector<uint64_t> serial_counts;
        double s = time_ms([&] {
            serial_counts.clear();
            for (const auto& spec : specs) {
                serial_counts.push_back(centralizer_brute(spec));
            }
        });
        // the batch also amortizes the GL enumeration across specs, so this
        // row measures the batch API against per-spec calls, not pure threading
        report("commutant n=3 Z_4 (batch/per-spec)", s, p, serial_counts == parallel_counts);
    }
    return 0;
}
