#include "qsampler/baseline.hpp"
#include "qsampler/protocol.hpp"
#include "qsampler/reports.hpp"
#include "qsampler/spectral.hpp"
#include "qsampler/truncation.hpp"
#include "qsampler/verify.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

py::object big_to_int(const qsampler::BigInt& value) {
    return py::module_::import("builtins").attr("int")(value.str());
}

/// Route report JSON through the stdlib json module so the python side sees
/// exactly the CLI's schema.
py::object json_to_py(const qsampler::reports::json& report) {
    return py::module_::import("json").attr("loads")(report.dump());
}

py::array_t<double> matrix_to_array(const qsampler::Matrix& m) {
    py::array_t<double> out({static_cast<py::ssize_t>(m.rows()),
                             static_cast<py::ssize_t>(m.cols())});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            view(i, j) = m(i, j);
    return out;
}

qsampler::OutcomeDistribution distribution_from_array(const qsampler::ProblemInstance& inst,
                                                      const py::array_t<double>& probs) {
    const auto side = inst.subset_count.convert_to<std::size_t>();
    if (static_cast<std::size_t>(probs.size()) != side * side) {
        throw py::value_error("probability table must have N*N entries");
    }
    qsampler::OutcomeDistribution dist;
    dist.inst = inst;
    dist.side = side;
    dist.probs.assign(probs.data(), probs.data() + probs.size());
    dist.support_size = 0;
    for (double p : dist.probs) {
        if (p > 0.0) ++dist.support_size;
    }
    return dist;
}

qsampler::TruncationPlan resolve_plan(const qsampler::ProblemInstance& inst,
                                      std::optional<double> epsilon, std::optional<int> cutoff) {
    if (epsilon.has_value() == cutoff.has_value()) {
        throw py::value_error("give exactly one of epsilon or cutoff");
    }
    return epsilon.has_value() ? qsampler::plan_truncation(inst, *epsilon)
                               : qsampler::plan_at_cutoff(inst, *cutoff);
}

} // namespace

PYBIND11_MODULE(_qsampler, m) {
    m.doc() = "Sampling disjoint k-subsets with shared entanglement: exact spectra, "
              "low-rank truncation, measurement simulation, classical baselines";

    m.def("binomial",
          [](long long n, long long k) { return big_to_int(qsampler::binomial(n, k)); },
          "n"_a, "k"_a);

    m.def("unrank_subset",
          [](long long r, int n, int k) { return qsampler::unrank_subset(qsampler::BigInt(r), n, k); },
          "r"_a, "n"_a, "k"_a, "The r-th k-subset of {0..n-1} in colex order.");

    m.def("rank_subset",
          [](const std::vector<int>& subset, int n) {
              return big_to_int(qsampler::rank_subset(subset, n));
          },
          "subset"_a, "n"_a);

    m.def("disjoint",
          [](const std::vector<int>& a, const std::vector<int>& b) {
              return qsampler::disjoint(std::span<const int>(a), std::span<const int>(b));
          },
          "a"_a, "b"_a);

    m.def("count_disjoint_pairs",
          [](int n, int k) {
              return big_to_int(qsampler::count_disjoint_pairs(qsampler::make_instance(n, k)));
          },
          "n"_a, "k"_a);

    m.def("spectrum",
          [](int n, int k) {
              const auto inst = qsampler::make_instance(n, k);
              const auto system = qsampler::closed_form_spectrum(inst);
              return json_to_py(qsampler::reports::spectrum_report(inst, system, std::nullopt));
          },
          "n"_a, "k"_a, "Closed-form eigenspace table (dims, eigenvalues, masses).");

    m.def("chi_matrix",
          [](int n, int k, bool normalized) {
              return matrix_to_array(
                  qsampler::build_chi_matrix(qsampler::make_instance(n, k), normalized).entries);
          },
          "n"_a, "k"_a, "normalized"_a = true);

    m.def("b_matrix",
          [](int n, int k) {
              return matrix_to_array(qsampler::build_b_matrix(qsampler::make_instance(n, k)).entries);
          },
          "n"_a, "k"_a);

    m.def("eigenbasis",
          [](int n, int k) {
              return matrix_to_array(
                  *qsampler::orthonormal_eigenbasis(qsampler::make_instance(n, k)).basis);
          },
          "n"_a, "k"_a, "Orthonormal eigenbasis, columns grouped by eigenspace.");

    m.def("plan",
          [](int n, int k, double epsilon) {
              return json_to_py(qsampler::reports::truncation_report(
                  qsampler::plan_truncation(qsampler::make_instance(n, k), epsilon), std::nullopt));
          },
          "n"_a, "k"_a, "epsilon"_a);

    m.def("truncated_state",
          [](int n, int k, std::optional<double> epsilon, std::optional<int> cutoff,
             bool renormalize) {
              const auto inst = qsampler::make_instance(n, k);
              const auto plan = resolve_plan(inst, epsilon, cutoff);
              const auto basis = qsampler::orthonormal_eigenbasis(inst);
              const auto chi = qsampler::build_chi_matrix(inst, true);
              return matrix_to_array(
                  qsampler::truncate_state(chi, plan, basis, renormalize).entries);
          },
          "n"_a, "k"_a, "epsilon"_a = py::none(), "cutoff"_a = py::none(),
          "renormalize"_a = true);

    m.def("distribution",
          [](int n, int k, std::optional<double> epsilon, std::optional<int> cutoff) {
              const auto inst = qsampler::make_instance(n, k);
              qsampler::StateMatrix state = qsampler::build_chi_matrix(inst, true);
              if (epsilon.has_value() || cutoff.has_value()) {
                  const auto plan = resolve_plan(inst, epsilon, cutoff);
                  state = qsampler::truncate_state(state, plan,
                                                   qsampler::orthonormal_eigenbasis(inst), true);
              }
              const auto dist = qsampler::induced_distribution(state);
              py::array_t<double> out(static_cast<py::ssize_t>(dist.probs.size()));
              auto view = out.mutable_unchecked<1>();
              for (std::size_t idx = 0; idx < dist.probs.size(); ++idx) view(idx) = dist.probs[idx];
              return out;
          },
          "n"_a, "k"_a, "epsilon"_a = py::none(), "cutoff"_a = py::none(),
          "Flat N*N outcome table of the exact (or truncated) state.");

    m.def("tvd",
          [](int n, int k, const py::array_t<double>& p, const py::array_t<double>& q) {
              const auto inst = qsampler::make_instance(n, k);
              return qsampler::tvd(distribution_from_array(inst, p),
                                   distribution_from_array(inst, q));
          },
          "n"_a, "k"_a, "p"_a, "q"_a);

    m.def("violation_mass",
          [](int n, int k, const py::array_t<double>& probs) {
              const auto inst = qsampler::make_instance(n, k);
              return qsampler::disjointness_violation_mass(distribution_from_array(inst, probs));
          },
          "n"_a, "k"_a, "probs"_a, "Probability mass on intersecting pairs.");

    m.def("draw_samples",
          [](int n, int k, const py::array_t<double>& probs, std::uint64_t seed,
             std::size_t count) {
              const auto inst = qsampler::make_instance(n, k);
              const auto draws =
                  qsampler::sample(distribution_from_array(inst, probs), seed, count);
              py::array_t<std::int64_t> out(
                  {static_cast<py::ssize_t>(count), py::ssize_t{2}});
              auto view = out.mutable_unchecked<2>();
              for (std::size_t i = 0; i < draws.size(); ++i) {
                  view(i, 0) = draws[i].first.rank;
                  view(i, 1) = draws[i].second.rank;
              }
              return out;
          },
          "n"_a, "k"_a, "probs"_a, "seed"_a, "count"_a,
          "Seeded inverse-CDF draws; rows are (rank_S, rank_T).");

    m.def("classical_samples",
          [](int n, int k, std::uint64_t seed, std::size_t count) {
              const auto inst = qsampler::make_instance(n, k);
              qsampler::SplitMix64 rng(seed);
              std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
              out.reserve(count);
              for (std::size_t i = 0; i < count; ++i) {
                  auto pair = qsampler::exact_disjoint_sampler(inst, rng);
                  out.emplace_back(std::move(pair.first_subset), std::move(pair.second_subset));
              }
              return out;
          },
          "n"_a, "k"_a, "seed"_a, "count"_a,
          "Uniform disjoint pairs from the exact classical sampler.");

    m.def("gap_row",
          [](int n, int k, double epsilon) {
              const auto row = qsampler::gap_report(qsampler::make_instance(n, k), epsilon);
              py::dict out;
              out["n"] = row.n;
              out["k"] = row.k;
              out["epsilon"] = row.epsilon;
              out["quantum_qubits"] = row.quantum_qubits;
              out["classical_comm_bits"] = row.classical_comm_bits;
              out["classical_shared_bits"] = row.classical_shared_bits;
              return out;
          },
          "n"_a, "k"_a, "epsilon"_a);

    m.def("verify_suite",
          [](std::uint64_t seed, std::size_t samples) {
              qsampler::verify::Options options;
              options.seed = seed;
              options.sample_count = samples;
              return json_to_py(
                  qsampler::reports::verification_report(qsampler::verify::run_all(options)));
          },
          "seed"_a = 0, "samples"_a = 1000000);

#ifdef VERSION_INFO
#define QSAMPLER_STR_IMPL(x) #x
#define QSAMPLER_STR(x) QSAMPLER_STR_IMPL(x)
    m.attr("__version__") = QSAMPLER_STR(VERSION_INFO);
#else
    m.attr("__version__") = "0.1.0";
#endif
}
