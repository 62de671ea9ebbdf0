#include "memaccel/cli.hpp"

#include "memaccel/accel.hpp"
#include "memaccel/certify.hpp"
#include "memaccel/dynamics.hpp"
#include "memaccel/error.hpp"
#include "memaccel/io.hpp"
#include "memaccel/spectral.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>

namespace memaccel::cli {

namespace {

using nlohmann::json;

std::vector<double> parse_numbers(const std::string& text, std::size_t count, const std::string& what) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::ParseError, what + ": '" + item + "' is not a number");
        }
    }
    if (count != 0 && out.size() != count)
        throw Error(ErrorKind::ParseError, what + " needs " + std::to_string(count) + " comma-separated numbers");
    return out;
}

SpectralInterval parse_interval(const std::string& text) {
    const auto v = parse_numbers(text, 2, "--interval");
    return SpectralInterval::make(v[0], v[1]);
}

struct Options {
    std::string output;
    // tune / certify
    std::string interval;
    int memory_order = 2;
    // guarantee / search
    std::string set;
    std::string gains_path;
    int grid = GuaranteeOptions{}.grid;
    double refine_tol = GuaranteeOptions{}.refine_tol;
    std::string csv_path;
    int budget = SearchOptions{}.budget;
    std::uint64_t rng_seed = 0;
    std::string seed_gains_path;
    // simulate / spectrum
    std::string graph_path;
    int steps = 100;
    std::string drops_path;
    std::string x0;
    double zero_tol = -1.0;
    // certify
    int theta_samples = WitnessOptions{}.theta_samples;
    std::optional<double> field_theta;
    std::string window = "-2,2,-2,2";
    int resolution = 256;
};

void emit(const Options& o, std::ostream& out, const std::string& text) {
    if (o.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(o.output);
    if (!file) throw Error(ErrorKind::ParseError, "cannot write " + o.output);
    file << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

GuaranteeOptions guarantee_options(const Options& o) { return {o.grid, o.refine_tol}; }

void run_tune(const Options& o, std::ostream& out) {
    const auto iv = parse_interval(o.interval);
    json j;
    if (o.memory_order == 1) {
        const auto m = tune_memoryless(iv);
        j = to_json(Gains::make(m.alpha));
        j["mu"] = printed(m.mu);
        j["nu_star"] = printed(m.mu);
        j["degenerate"] = iv.degenerate();
    } else {
        j = to_json(tune_single_memory(iv, o.memory_order));
    }
    // The guarantee of the gains exactly as printed, so re-reading them reproduces it.
    const auto report = guarantee(gains_from_json(j), SpectralSet::interval(iv.lo, iv.hi), guarantee_options(o));
    j["nu"] = printed(report.nu);
    emit(o, out, dump(j));
}

void run_guarantee(const Options& o, std::ostream& out) {
    const auto g = load_gains_file(o.gains_path);
    const auto report = guarantee(g, SpectralSet::parse(o.set), guarantee_options(o));
    if (!o.csv_path.empty()) {
        std::ofstream csv(o.csv_path);
        if (!csv) throw Error(ErrorKind::ParseError, "cannot write " + o.csv_path);
        csv << samples_csv(report);
    }
    json j = to_json(report);
    j["gains"] = to_json(g);
    emit(o, out, dump(j));
}

void run_search(const Options& o, std::ostream& out) {
    const auto s = SpectralSet::parse(o.set);
    SearchOptions opts;
    opts.budget = o.budget;
    opts.rng_seed = o.rng_seed;
    opts.final_options = guarantee_options(o);
    std::optional<Gains> seed;
    if (!o.seed_gains_path.empty()) seed = load_gains_file(o.seed_gains_path);
    auto result = search_gains(s, o.memory_order, seed, opts);
    // Report on the printed gains so the file round-trips exactly.
    result.gains = printed(result.gains);
    result.report = guarantee(result.gains, s, opts.final_options);
    emit(o, out, dump(to_json(result)));
}

void run_simulate(const Options& o, std::ostream& out, std::ostream& err) {
    const auto graph = load_edge_list_file(o.graph_path);
    const auto g = load_gains_file(o.gains_path);
    std::vector<double> x0;
    if (o.x0.empty()) {
        x0.resize(graph.node_count());
        std::iota(x0.begin(), x0.end(), 0.0);
    } else {
        x0 = parse_numbers(o.x0, graph.node_count(), "--x0");
    }
    const auto problem = IterationProblem::consensus(graph, std::move(x0));
    std::optional<DropSchedule> drops;
    if (!o.drops_path.empty()) drops = DropSchedule::load_file(o.drops_path);
    const auto trace = simulate(problem, g, o.steps, drops ? &*drops : nullptr);
    std::ostringstream csv;
    write_trace_csv(csv, trace);
    emit(o, out, csv.str());
    if (trace.diverged) err << "diverged: state norm exceeded the guard at step " << trace.steps() << "\n";
}

void run_certify(const Options& o, std::ostream& out) {
    const auto g = load_gains_file(o.gains_path);
    const auto iv = parse_interval(o.interval);
    const auto c = gains_to_claim_coeffs(g, iv);
    WitnessOptions wopts;
    wopts.theta_samples = o.theta_samples;
    json j = {{"claim_coeffs", to_json(c)},
              {"special_case", to_json(special_case_check(c))},
              {"witness", to_json(find_witness(c, wopts))}};
    if (o.field_theta) {
        const auto w = parse_numbers(o.window, 4, "--window");
        const FieldWindow window{w[0], w[1], w[2], w[3], o.resolution, o.resolution};
        j["field"] = to_json(partition_field(c, *o.field_theta, window));
    }
    emit(o, out, dump(j));
}

void run_spectrum(const Options& o, std::ostream& out) {
    const auto graph = load_edge_list_file(o.graph_path);
    const auto eigs = symmetric_eigenvalues(laplacian(graph));
    const double tol = o.zero_tol >= 0.0 ? o.zero_tol : default_zero_tol(eigs);
    json values = json::array();
    for (double v : eigs) values.push_back(printed(v));
    const auto iv = nonzero_spectral_interval(eigs, tol);
    const auto zeros = std::count_if(eigs.begin(), eigs.end(), [&](double v) { return std::abs(v) <= tol; });
    emit(o, out,
         dump({{"eigenvalues", values},
               {"zero_count", zeros},
               {"nonzero_interval", {{"lo", printed(iv.lo)}, {"hi", printed(iv.hi)}}}}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tune, certify and simulate memory-accelerated symmetric linear iterations", "memaccel"};
    app.require_subcommand(1);
    Options o;

    auto* tune = app.add_subcommand("tune", "Closed-form optimal gains for an eigenvalue interval");
    tune->add_option("--interval", o.interval, "LO,HI")->required();
    tune->add_option("--M", o.memory_order, "Memory order (1 = memoryless)")->check(CLI::PositiveNumber);

    auto* guar = app.add_subcommand("guarantee", "Worst root modulus of gains over an eigenvalue set");
    guar->add_option("--gains", o.gains_path, "Gains JSON file")->required();
    guar->add_option("--set", o.set, "Eigenvalue set, e.g. 0.0122:0.0182,0.9878")->required();
    guar->add_option("--csv", o.csv_path, "Write lambda,max_root_modulus samples here");

    auto* search = app.add_subcommand("search", "Local gain search for an eigenvalue set");
    search->add_option("--set", o.set, "Eigenvalue set")->required();
    search->add_option("--M", o.memory_order, "Memory order")->required()->check(CLI::PositiveNumber);
    search->add_option("--budget", o.budget, "Guarantee evaluations")->check(CLI::PositiveNumber);
    search->add_option("--seed-rng", o.rng_seed, "Random seed for restarts");
    search->add_option("--seed-gains", o.seed_gains_path, "Starting gains JSON file");

    for (auto* sub : {tune, guar, search}) {
        sub->add_option("--grid", o.grid, "Samples per interval")->check(CLI::Range(2, 10'000'000));
        sub->add_option("--refine-tol", o.refine_tol, "Refinement bracket width (<= 0 disables)");
    }

    auto* sim = app.add_subcommand("simulate", "Consensus run on a graph, CSV trace");
    sim->add_option("--graph", o.graph_path, "Edge list file")->required();
    sim->add_option("--gains", o.gains_path, "Gains JSON file")->required();
    sim->add_option("--steps", o.steps, "Number of steps")->required()->check(CLI::PositiveNumber);
    sim->add_option("--drops", o.drops_path, "Link drop schedule");
    sim->add_option("--x0", o.x0, "Comma-separated initial state (default 0,1,...,n-1)");

    auto* cert = app.add_subcommand("certify", "Coefficient map, special cases and witness search");
    cert->add_option("--gains", o.gains_path, "Gains JSON file")->required();
    cert->add_option("--interval", o.interval, "LO,HI")->required();
    cert->add_option("--theta-samples", o.theta_samples, "Witness scan resolution")->check(CLI::Range(2, 100'000'000));
    cert->add_option("--field", o.field_theta, "Also emit the |P1| vs |P2| field at this angle");
    cert->add_option("--window", o.window, "RE_MIN,RE_MAX,IM_MIN,IM_MAX");
    cert->add_option("--resolution", o.resolution, "Field cells per side")->check(CLI::Range(32, 8192));

    auto* spec = app.add_subcommand("spectrum", "Laplacian eigenvalues of a graph");
    spec->add_option("--graph", o.graph_path, "Edge list file")->required();
    spec->add_option("--zero-tol", o.zero_tol, "Eigenvalues at or below this count as zero");

    for (auto* sub : app.get_subcommands({}))
        sub->add_option("--output", o.output, "Write the result here instead of standard output");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (tune->parsed()) run_tune(o, out);
        else if (guar->parsed()) run_guarantee(o, out);
        else if (search->parsed()) run_search(o, out);
        else if (sim->parsed()) run_simulate(o, out, err);
        else if (cert->parsed()) run_certify(o, out);
        else if (spec->parsed()) run_spectrum(o, out);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return e.kind() == ErrorKind::ParseError ? kExitUsage : kExitDomain;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitDomain;
    }
    return kExitOk;
}

}  // namespace memaccel::cli
