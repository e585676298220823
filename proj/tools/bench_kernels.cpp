// Compares the serial reference kernels with the OpenMP variants and checks
// that both produce identical bits while at it.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "embens/kernels.hpp"
#include "embens/parallel.hpp"
#include "embens/rng.hpp"

using namespace embens;

namespace {

using Clock = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn, int reps) {
    fn(); // warm-up
    const auto start = Clock::now();
    for (int i = 0; i < reps; ++i) fn();
    const double total = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return total / reps;
}

void report(const std::string& name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-22s %10.2f ms %10.2f ms %8.2fx   %s\n", name.c_str(), serial_ms, parallel_ms,
                serial_ms / parallel_ms, identical ? "bit-identical" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    Index n = 20000, d = 100;
    int reps = 3;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        const long value = std::strtol(argv[i + 1], nullptr, 10);
        if (flag == "--n") n = value;
        else if (flag == "--d") d = value;
        else if (flag == "--reps") reps = static_cast<int>(value);
    }

    std::printf("kernel benchmark: n=%lld d=%lld reps=%d threads=%d\n", static_cast<long long>(n),
                static_cast<long long>(d), reps, max_threads());
    std::printf("%-22s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

    Rng rng(7);
    const Matrix a = gaussian_matrix(rng, n, d);
    const Matrix b = gaussian_matrix(rng, n, d);
    const Matrix p = gaussian_matrix(rng, d, d);
    std::vector<double> q(static_cast<std::size_t>(d));
    for (double& v : q) v = rng.normal();
    const std::vector<Matrix> three{a, b, a};

    {
        Matrix rs, rp;
        const double ts = time_ms([&] { rs = kernels::serial::matmul(a, p); }, reps);
        const double tp = time_ms([&] { rp = kernels::matmul(a, p); }, reps);
        report("matmul (n x d x d)", ts, tp, rs == rp);
    }
    {
        Matrix rs, rp;
        const double ts = time_ms([&] { rs = kernels::serial::crossprod(a, b); }, reps);
        const double tp = time_ms([&] { rp = kernels::crossprod(a, b); }, reps);
        report("crossprod (d x d)", ts, tp, rs == rp);
    }
    {
        Matrix rs, rp;
        const double ts = time_ms([&] { rs = kernels::serial::mean_of(three); }, reps);
        const double tp = time_ms([&] { rp = kernels::mean_of(three); }, reps);
        report("mean_of (r=3)", ts, tp, rs == rp);
    }
    {
        double rs = 0, rp = 0;
        const double ts = time_ms([&] { rs = kernels::serial::frobenius_sq_diff(a, b); }, reps);
        const double tp = time_ms([&] { rp = kernels::frobenius_sq_diff(a, b); }, reps);
        report("frobenius_sq_diff", ts, tp, rs == rp);
    }
    {
        std::vector<double> rs, rp;
        const double ts = time_ms([&] { rs = kernels::serial::cosine_scan(a, q); }, reps);
        const double tp = time_ms([&] { rp = kernels::cosine_scan(a, q); }, reps);
        report("cosine_scan", ts, tp, rs == rp);
    }
    {
        std::vector<double> rs, rp;
        const double ts = time_ms([&] { rs = kernels::serial::column_stddev(a); }, reps);
        const double tp = time_ms([&] { rp = kernels::column_stddev(a); }, reps);
        report("column_stddev", ts, tp, rs == rp);
    }
    return 0;
}
