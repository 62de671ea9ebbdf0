// Randomized search for a periodic link-drop schedule that destabilizes the
// optimal single-memory tuning of a consensus graph. Writes the gains and the
// schedule next to each other so the pair can be frozen as a test fixture.

#include "memaccel/accel.hpp"
#include "memaccel/dynamics.hpp"
#include "memaccel/io.hpp"
#include "memaccel/spectral.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numeric>
#include <random>

using namespace memaccel;

int main(int argc, char** argv) {
    CLI::App app{"Search for destabilizing link-drop schedules"};
    std::string graph_path, out_prefix = "fragile";
    int trials = 2000, max_period = 8, steps = 3000;
    std::uint64_t seed = 1;
    double drop_probability = 0.5;
    app.add_option("--graph", graph_path, "Edge list file")->required();
    app.add_option("--out", out_prefix, "Writes PREFIX_gains.json and PREFIX_drops.txt");
    app.add_option("--trials", trials);
    app.add_option("--max-period", max_period)->check(CLI::Range(1, 1000));
    app.add_option("--steps", steps)->check(CLI::PositiveNumber);
    app.add_option("--seed", seed);
    app.add_option("--drop-probability", drop_probability)->check(CLI::Range(0.0, 1.0));
    CLI11_PARSE(app, argc, argv);

    const auto graph = load_edge_list_file(graph_path);
    const auto eigs = symmetric_eigenvalues(laplacian(graph));
    const auto iv = nonzero_spectral_interval(eigs, default_zero_tol(eigs));
    const auto gains = printed(tune_single_memory(iv).gains);
    std::vector<double> x0(graph.node_count());
    std::iota(x0.begin(), x0.end(), 0.0);
    const auto problem = IterationProblem::consensus(graph, x0);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> period(1, max_period);
    std::bernoulli_distribution dropped(drop_probability);
    for (int trial = 0; trial < trials; ++trial) {
        DropSchedule schedule;
        const int p = period(rng);
        schedule.set_period(p);
        for (int t = 0; t < p; ++t)
            for (const auto& e : graph.edges())
                if (dropped(rng)) schedule.drop(t, e.i, e.j);
        if (schedule.empty()) continue;

        const auto trace = simulate(problem, gains, steps, &schedule);
        if (!trace.diverged) continue;

        std::ofstream(out_prefix + "_gains.json") << to_json(gains).dump(2) << "\n";
        std::ofstream drops(out_prefix + "_drops.txt");
        drops << "# interval [" << format_number(iv.lo) << ", " << format_number(iv.hi) << "], search seed " << seed
              << ", trial " << trial << "\n";
        schedule.write(drops);
        std::cout << "diverged after " << trace.steps() << " steps (trial " << trial << ", period " << p << ")\n";
        return 0;
    }
    std::cout << "no destabilizing schedule in " << trials << " trials\n";
    return 1;
}
