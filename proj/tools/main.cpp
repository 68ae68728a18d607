#include "qsampler/baseline.hpp"
#include "qsampler/protocol.hpp"
#include "qsampler/reports.hpp"
#include "qsampler/spectral.hpp"
#include "qsampler/truncation.hpp"
#include "qsampler/verify.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using qsampler::reports::json;

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

/// Emit to --out when given, stdout otherwise.
void deliver(const std::optional<std::string>& out_path, const std::string& text) {
    if (out_path.has_value()) {
        write_text(*out_path, text);
    } else {
        std::cout << text;
    }
}

std::string render(const json& report) { return report.dump(2) + "\n"; }

struct InstanceArg {
    int n = 0;
    int k = 0;
};

InstanceArg parse_instance(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= text.size()) {
        throw CLI::ValidationError("--instance", "expected n:k, got '" + text + "'");
    }
    InstanceArg arg;
    arg.n = std::stoi(text.substr(0, colon));
    arg.k = std::stoi(text.substr(colon + 1));
    return arg;
}

int cmd_spectrum(int n, int k, const std::string& format,
                 const std::optional<std::string>& out_path,
                 const std::optional<std::string>& matrix_dump_path) {
    const auto inst = qsampler::make_instance(n, k);
    const auto system = qsampler::closed_form_spectrum(inst);

    if (matrix_dump_path.has_value()) {
        write_text(*matrix_dump_path,
                   qsampler::reports::matrix_csv(
                       qsampler::build_chi_matrix(inst, false).entries));
    }
    if (format == "csv") {
        deliver(out_path, qsampler::reports::spectrum_csv(inst, system));
        return 0;
    }
    std::optional<double> oracle_residual;
    if (!system.degenerate && inst.subset_count <= 1024 &&
        inst.subset_count <= qsampler::matrix_guard_limit()) {
        const auto numeric =
            qsampler::numeric_eigendecomposition(qsampler::build_chi_matrix(inst, false));
        oracle_residual = qsampler::multiset_residual(
            qsampler::closed_form_eigenvalue_multiset(system, false, 1.0), numeric);
    }
    deliver(out_path, render(qsampler::reports::spectrum_report(inst, system, oracle_residual)));
    return 0;
}

int cmd_truncate(int n, int k, double epsilon, const std::string& format,
                 const std::optional<std::string>& out_path) {
    const auto inst = qsampler::make_instance(n, k);
    const auto plan = qsampler::plan_truncation(inst, epsilon);

    std::optional<double> residual;
    if (inst.subset_count <= 1024 && inst.subset_count <= qsampler::matrix_guard_limit()) {
        const auto basis = qsampler::orthonormal_eigenbasis(inst);
        const auto chi = qsampler::build_chi_matrix(inst, true);
        const auto psi = qsampler::truncate_state(chi, plan, basis, true);
        residual = qsampler::verify_fidelity_identity(psi, chi).identity_residual;
    }
    if (format == "csv") {
        deliver(out_path, qsampler::reports::truncation_csv(plan, residual));
    } else {
        deliver(out_path, render(qsampler::reports::truncation_report(plan, residual)));
    }
    return 0;
}

std::string summary_path_for(const std::string& csv_path) {
    const auto dot = csv_path.find_last_of('.');
    const auto slash = csv_path.find_last_of('/');
    const bool has_extension = dot != std::string::npos &&
                               (slash == std::string::npos || dot > slash);
    return (has_extension ? csv_path.substr(0, dot) : csv_path) + ".summary.json";
}

int cmd_simulate(int n, int k, double epsilon, std::uint64_t seed, std::size_t samples,
                 const std::string& out_path,
                 const std::optional<std::string>& distribution_dump_path) {
    const auto inst = qsampler::make_instance(n, k);
    const auto plan = qsampler::plan_truncation(inst, epsilon);
    const auto basis = qsampler::orthonormal_eigenbasis(inst);
    const auto chi = qsampler::build_chi_matrix(inst, true);
    const auto psi = qsampler::truncate_state(chi, plan, basis, true);

    const auto exact_dist = qsampler::induced_distribution(chi);
    const auto truncated_dist = qsampler::induced_distribution(psi);
    if (distribution_dump_path.has_value()) {
        write_text(*distribution_dump_path,
                   render(qsampler::reports::distribution_report(truncated_dist)));
    }
    const auto draws = qsampler::sample(truncated_dist, seed, samples);

    qsampler::reports::SimulationSummary summary;
    summary.plan = plan;
    summary.seed = seed;
    summary.samples = samples;
    summary.analytic_tvd = qsampler::tvd(exact_dist, truncated_dist);
    summary.violation_mass = qsampler::disjointness_violation_mass(truncated_dist);
    summary.support_size = truncated_dist.support_size;

    std::vector<double> frequency(truncated_dist.probs.size(), 0.0);
    const double weight = 1.0 / static_cast<double>(samples);
    for (const auto& [s, t] : draws) {
        frequency[static_cast<std::size_t>(s.rank) * truncated_dist.side +
                  static_cast<std::size_t>(t.rank)] += weight;
    }
    double l1 = 0.0;
    for (std::size_t idx = 0; idx < frequency.size(); ++idx) {
        l1 += std::abs(frequency[idx] - truncated_dist.probs[idx]);
    }
    summary.empirical_tvd = 0.5 * l1;

    write_text(out_path, qsampler::reports::samples_csv(inst, draws));
    const std::string summary_text = render(qsampler::reports::simulation_summary_report(summary));
    write_text(summary_path_for(out_path), summary_text);
    std::cout << summary_text;
    return 0;
}

int cmd_compare(const std::vector<std::string>& instance_args, double epsilon, unsigned jobs,
                const std::string& format, const std::optional<std::string>& out_path) {
    std::vector<InstanceArg> instances;
    instances.reserve(instance_args.size());
    for (const auto& text : instance_args) instances.push_back(parse_instance(text));

    std::vector<qsampler::GapRow> rows(instances.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < instances.size(); ++i) {
            rows[i] = qsampler::gap_report(
                qsampler::make_instance(instances[i].n, instances[i].k), epsilon);
        }
    } else {
        // Waves of at most `jobs` concurrent instances; results land in input order.
        std::size_t next = 0;
        while (next < instances.size()) {
            const std::size_t wave_end = std::min(instances.size(), next + jobs);
            std::vector<std::future<qsampler::GapRow>> wave;
            for (std::size_t i = next; i < wave_end; ++i) {
                wave.push_back(std::async(std::launch::async, [&instances, i, epsilon] {
                    return qsampler::gap_report(
                        qsampler::make_instance(instances[i].n, instances[i].k), epsilon);
                }));
            }
            for (std::size_t i = next; i < wave_end; ++i) rows[i] = wave[i - next].get();
            next = wave_end;
        }
    }

    if (format == "json") {
        deliver(out_path, render(qsampler::reports::gap_table_report(rows)));
    } else {
        deliver(out_path, qsampler::reports::gap_table_csv(rows));
    }
    return 0;
}

int cmd_verify(std::uint64_t seed, std::size_t samples,
               const std::optional<std::string>& out_path) {
    qsampler::verify::Options options;
    options.seed = seed;
    options.sample_count = samples;
    const auto checks = qsampler::verify::run_all(options);
    deliver(out_path, render(qsampler::reports::verification_report(checks)));
    for (const auto& check : checks) {
        if (!check.passed) return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement-assisted sampling of disjoint k-subsets: spectra, low-rank "
                 "truncation plans, measurement simulation, and classical resource baselines"};
    app.require_subcommand(1);

    const auto epsilon_check = [](const std::string& text) -> std::string {
        const double value = std::stod(text);
        if (!(value > 0.0) || !(value < 1.0)) return "epsilon must lie strictly in (0,1)";
        return {};
    };

    int n = 6;
    int k = 2;
    double epsilon = 0.1;
    std::uint64_t seed = 0;
    std::size_t samples = 100000;
    std::string format = "json";
    std::optional<std::string> out_path;
    std::string simulate_out;
    std::vector<std::string> instance_args;
    unsigned jobs = 1;

    auto* spectrum = app.add_subcommand("spectrum", "closed-form eigenspace table, with the "
                                                    "numeric oracle residual when N <= 1024");
    spectrum->add_option("--n", n, "ground-set size")->required()->check(CLI::PositiveNumber);
    spectrum->add_option("--k", k, "subset size")->required()->check(CLI::PositiveNumber);
    spectrum->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    spectrum->add_option("--out", out_path, "output file (stdout otherwise)");
    std::optional<std::string> matrix_dump_path;
    spectrum->add_option("--dump-matrix", matrix_dump_path,
                         "also write the state matrix entries as CSV");

    auto* truncate = app.add_subcommand("truncate", "epsilon-approximation plan: cutoff g, rank "
                                                    "t, exact tails, fidelity");
    truncate->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    truncate->add_option("--k", k)->required()->check(CLI::PositiveNumber);
    truncate->add_option("--epsilon", epsilon, "target error in (0,1)")->check(epsilon_check);
    truncate->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    truncate->add_option("--out", out_path);

    auto* simulate = app.add_subcommand("simulate", "measure the truncated state: seeded sample "
                                                    "CSV plus a summary JSON alongside");
    simulate->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    simulate->add_option("--k", k)->required()->check(CLI::PositiveNumber);
    simulate->add_option("--epsilon", epsilon)->check(epsilon_check);
    simulate->add_option("--seed", seed, "64-bit sampling seed");
    simulate->add_option("--samples", samples, "number of draws");
    simulate->add_option("--out", simulate_out, "samples CSV path; the summary lands next to it")
        ->required();
    std::optional<std::string> distribution_dump_path;
    simulate->add_option("--dump-distribution", distribution_dump_path,
                         "also write the truncated outcome table as JSON pairs");

    auto* compare = app.add_subcommand("compare", "quantum vs classical resource table over a "
                                                  "list of instances");
    compare->add_option("--instance", instance_args, "instance as n:k (repeatable)");
    compare->add_option("--epsilon", epsilon)->check(epsilon_check);
    compare->add_option("--jobs", jobs, "parallelize independent instances")
        ->check(CLI::PositiveNumber);
    compare->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    compare->add_option("--out", out_path);
    std::string compare_format = "csv"; // the gap report's native form is the CSV table

    auto* verify = app.add_subcommand("verify", "run the full desk-scale verification suite; "
                                                "nonzero exit on any failure");
    verify->add_option("--seed", seed);
    verify->add_option("--samples", samples, "draw count for the sampling check");
    verify->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (spectrum->parsed()) {
            return cmd_spectrum(n, k, format, out_path, matrix_dump_path);
        }
        if (truncate->parsed()) return cmd_truncate(n, k, epsilon, format, out_path);
        if (simulate->parsed()) {
            return cmd_simulate(n, k, epsilon, seed, samples, simulate_out,
                                distribution_dump_path);
        }
        if (compare->parsed()) {
            const bool format_given = compare->count("--format") > 0;
            return cmd_compare(instance_args, epsilon, jobs,
                               format_given ? format : compare_format, out_path);
        }
        if (verify->parsed()) return cmd_verify(seed, samples, out_path);
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
    return 0;
}
