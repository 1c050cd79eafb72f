// Simulates the mean and variance of the ADF tau under a driftless random walk
// for the IPS W-t-bar standardization, and writes them as a C++ table.
//
//   gen_ips_moments [replications] > include/pegls/unitroot/ips_moments_table.hpp

#include <cstdio>
#include <cstdlib>
#include <random>
#include <thread>
#include <vector>

#include "pegls/unitroot/adf.hpp"

namespace {

constexpr int kLengths[] = {6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 20, 25, 30, 40, 50, 60, 70, 80, 90, 100};
constexpr int kMaxLag = 8;
constexpr int kMinResidualDof = 3;

struct Cell {
    pegls::DeterministicSpec spec;
    int length;
    int lag;
    double mean = 0.0;
    double var = 0.0;
    bool valid = false;
};

void simulate(Cell& cell, int reps) {
    const int d = pegls::deterministic_terms(cell.spec);
    const int rows = cell.length - 1 - cell.lag;
    if (rows - (1 + cell.lag + d) < kMinResidualDof) return;
    std::mt19937_64 rng(0x1b5u + 1009u * static_cast<unsigned>(cell.length) + 17u * static_cast<unsigned>(cell.lag) +
                        (cell.spec == pegls::DeterministicSpec::trend_and_constant ? 7u : 0u));
    std::normal_distribution<double> eps(0.0, 1.0);
    std::vector<double> y(static_cast<std::size_t>(cell.length));
    double sum = 0.0, sumsq = 0.0;
    int used = 0;
    while (used < reps) {
        double level = 0.0;
        for (auto& v : y) {
            level += eps(rng);
            v = level;
        }
        try {
            const double tau = pegls::adf_regression(std::span<const double>(y), cell.lag, cell.spec).tau;
            sum += tau;
            sumsq += tau * tau;
            ++used;
        } catch (const pegls::Error&) {
            // measure-zero exact fits; draw again
        }
    }
    cell.mean = sum / used;
    cell.var = (sumsq - used * cell.mean * cell.mean) / (used - 1);
    cell.valid = true;
}

} // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::atoi(argv[1]) : 50000;
    std::vector<Cell> cells;
    for (auto spec : {pegls::DeterministicSpec::constant_only, pegls::DeterministicSpec::trend_and_constant})
        for (int T : kLengths)
            for (int p = 0; p <= kMaxLag; ++p) cells.push_back({spec, T, p});

    std::vector<std::thread> pool;
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < cells.size(); i += workers) simulate(cells[i], reps);
        });
    for (auto& t : pool) t.join();

    std::printf("#pragma once\n\n");
    std::printf("// Generated by tools/gen_ips_moments with %d replications per cell. Do not edit.\n", reps);
    std::printf("// Mean and variance of the ADF tau for a Gaussian random walk of length T with\n");
    std::printf("// p augmentation lags; cells with fewer than %d residual degrees of freedom are absent.\n\n",
                kMinResidualDof);
    std::printf("namespace pegls::detail {\n\n");
    std::printf("struct IpsMomentCell {\n    int trend;\n    int length;\n    int lag;\n    double mean;\n"
                "    double variance;\n};\n\n");
    std::printf("inline constexpr IpsMomentCell kIpsMoments[] = {\n");
    for (const auto& c : cells) {
        if (!c.valid) continue;
        std::printf("    {%d, %d, %d, %.4f, %.4f},\n",
                    c.spec == pegls::DeterministicSpec::trend_and_constant ? 1 : 0, c.length, c.lag, c.mean,
                    c.var);
    }
    std::printf("};\n\n} // namespace pegls::detail\n");
    return 0;
}
