// Copyright 2026 The matchgp developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "matchgp/bayesopt.hpp"
#include "matchgp/bell.hpp"
#include "matchgp/datasets.hpp"
#include "matchgp/moments.hpp"

namespace py = pybind11;
using namespace matchgp;

PYBIND11_MODULE(_matchgp, m) {
  m.doc() = "Matchgate quantum Gaussian processes: kernels, GP inference, "
            "Bell estimators, and moment diagnostics.";

  py::class_<PauliString>(m, "PauliString")
      .def(py::init([](const std::string& text) { return PauliString::parse(text); }))
      .def_static("parse", &PauliString::parse)
      .def("__str__", &PauliString::str)
      .def("__repr__", [](const PauliString& p) { return "PauliString('" + p.str() + "')"; })
      .def("__eq__", [](const PauliString& a, const PauliString& b) { return a == b; })
      .def_property_readonly("num_qubits", &PauliString::num_qubits)
      .def_property_readonly("weight", &PauliString::weight)
      .def("is_hermitian", &PauliString::is_hermitian)
      .def("to_matrix", [](const PauliString& p) { return to_matrix(p); });

  m.def("majorana", &majorana, py::arg("mu"), py::arg("n"));
  m.def("majorana_product", &majorana_product, py::arg("nu"), py::arg("n"));
  m.def("pauli_multiply", &pauli_multiply);
  m.def("commutes", &commutes);

  py::class_<ModuleCoefficients>(m, "ModuleCoefficients")
      .def_property_readonly("n", &ModuleCoefficients::n)
      .def_property_readonly("m", &ModuleCoefficients::m)
      .def_property_readonly("values",
                             [](const ModuleCoefficients& c) { return c.values(); })
      .def("value", [](const ModuleCoefficients& c, std::vector<int> subset) {
        return c.value(subset);
      })
      .def("subsets", [](const ModuleCoefficients& c) { return c.index().all(); });

  py::class_<QuantumState>(m, "QuantumState")
      .def_static("pure", &QuantumState::pure)
      .def_static("zero", &QuantumState::zero)
      .def_property_readonly("n", &QuantumState::n)
      .def_property_readonly("amplitudes", &QuantumState::amplitudes)
      .def("expectation", &QuantumState::expectation)
      .def("fidelity_overlap", &QuantumState::fidelity_overlap);

  m.def("synthetic_state", &synthetic_state, py::arg("t"), py::arg("n"), py::arg("seed"),
        py::arg("layers") = 2);
  m.def("synthetic_state_2d", &synthetic_state_2d);
  m.def("gaussian_state", &gaussian_state);
  m.def("magic_extent_state", &magic_extent_state);
  m.def("random_fermionic_state", &random_fermionic_state);
  m.def("probe_state", &probe_state, py::arg("t"), py::arg("n"), py::arg("unitary") = true);

  m.def("project_state", &project_state);
  m.def("project_pauli_observable", &project_pauli_observable);
  m.def("overlap", &overlap);
  m.def("purity", &purity);
  m.def("special_partition_observable", &special_partition_observable);
  m.def("gamma_dual", &gamma_dual);
  m.def("coeffs_as_matrix", &coeffs_as_matrix);
  m.def("zero_state_coeffs", &zero_state_coeffs);

  py::class_<OrthogonalMatrix>(m, "OrthogonalMatrix")
      .def(py::init([](Eigen::MatrixXd q) { return OrthogonalMatrix{std::move(q)}; }))
      .def_readonly("q", &OrthogonalMatrix::q)
      .def_static("identity", &OrthogonalMatrix::identity);

  m.def("haar_so", [](int dim, uint64_t seed) {
    Rng rng = substream(seed, 0);
    return haar_so(dim, rng);
  });
  m.def("transform_coeffs", &transform_coeffs);
  m.def("sample_expectation", &sample_expectation);
  m.def("sample_batch", &sample_batch, py::arg("states"), py::arg("obs"),
        py::arg("num_samples"), py::arg("seed"));

  py::enum_<KernelMode>(m, "KernelMode")
      .value("EXACT", KernelMode::Exact)
      .value("ASYMPTOTIC", KernelMode::Asymptotic)
      .value("INVERSE_DIMENSION", KernelMode::InverseDimension);
  m.def("matchgate_kernel", &matchgate_kernel);
  m.def("matchgate_kernel_prefactor", &matchgate_kernel_prefactor);
  m.def("fidelity_kernel", &fidelity_kernel);

  m.def("noisy_observation", [](double y, int64_t shots, uint64_t seed) {
    Rng rng = substream(seed, 0);
    NoisyValue nv = noisy_observation(y, shots, rng);
    return std::make_pair(nv.value, nv.variance);
  });
  m.def("psd_clip", [](Eigen::MatrixXd k) {
    KernelMatrix km;
    km.values = std::move(k);
    km.noise_variance = Eigen::MatrixXd::Zero(km.values.rows(), km.values.cols());
    km.labels.assign(km.values.rows(), "");
    return psd_clip(km).values;
  });
  m.def("psd_shift_min", [](Eigen::MatrixXd k) {
    KernelMatrix km;
    km.values = std::move(k);
    km.noise_variance = Eigen::MatrixXd::Zero(km.values.rows(), km.values.cols());
    km.labels.assign(km.values.rows(), "");
    auto res = psd_shift_min(km);
    return std::make_pair(res.repaired.values, res.shift);
  });
  m.def("psd_shift_wigner", [](Eigen::MatrixXd k, int64_t n_points, double sigma_kappa) {
    KernelMatrix km;
    km.values = std::move(k);
    km.noise_variance = Eigen::MatrixXd::Zero(km.values.rows(), km.values.cols());
    km.labels.assign(km.values.rows(), "");
    auto res = psd_shift_wigner(km, n_points, sigma_kappa);
    return std::make_pair(res.repaired.values, res.shift);
  });

  py::class_<Posterior>(m, "Posterior")
      .def_readonly("mean", &Posterior::mean)
      .def_readonly("variance", &Posterior::variance);

  py::class_<GPModel>(m, "GPModel")
      .def(py::init([](Eigen::MatrixXd gram, Eigen::VectorXd y, Eigen::VectorXd r) {
        KernelMatrix km;
        km.values = std::move(gram);
        km.noise_variance = Eigen::MatrixXd::Zero(km.values.rows(), km.values.cols());
        km.labels.assign(km.values.rows(), "");
        return GPModel(std::move(km), std::move(y), std::move(r));
      }))
      .def("posterior", &GPModel::posterior)
      .def("log_marginal_likelihood", &GPModel::log_marginal_likelihood)
      .def_property_readonly("jitter_used", &GPModel::jitter_used);

  m.def("expected_improvement", &expected_improvement);
  m.def("ucb", &ucb);
  m.def("chi2_surrogate", &chi2_surrogate);

  m.def("f_m", [](const std::string& word, int mm, int n) {
    return f_m({PauliString::parse(word)}, mm, n);
  });
  m.def("direct_estimate_from_states",
        [](const QuantumState& rho, const QuantumState& rho_prime, int mm, int64_t shots,
           uint64_t seed) {
          Rng rng = substream(seed, 0);
          auto outcomes = bell_sample(rho, rho_prime, shots, rng);
          return direct_estimate(outcomes, mm, rho.n());
        });
  m.def("indirect_estimate",
        [](const QuantumState& rho, const QuantumState& rho_prime, int mm,
           int64_t shots_per_coeff, uint64_t seed) {
          Rng rng = substream(seed, 0);
          return indirect_estimate(rho, rho_prime, mm, shots_per_coeff, rng);
        });

  m.def("isserlis_moment", &isserlis_moment);
  m.def("schatten_ratio", &schatten_ratio);
  m.def("catalan_number", &catalan_number);
  m.def("moment_report", [](const Eigen::MatrixXd& samples, int max_order) {
    MomentReport rep = moment_report(samples, max_order);
    py::list checks;
    for (const auto& c : rep.checks)
      checks.append(py::make_tuple(c.indices, c.empirical, c.isserlis, c.std_error, c.z));
    return py::make_tuple(rep.max_abs_z, checks, rep.skewness, rep.excess_kurtosis);
  });
  m.def("multivariate_b2_bound_check",
        [](const Eigen::MatrixXd& overlaps, int n, double c) {
          auto flags = multivariate_b2_bound_check(overlaps, n, c);
          std::vector<std::vector<bool>> out(flags.rows());
          for (int64_t i = 0; i < flags.rows(); ++i)
            for (int64_t j = 0; j < flags.cols(); ++j) out[i].push_back(flags(i, j));
          return out;
        },
        py::arg("overlaps"), py::arg("n"), py::arg("c") = 1.0);

  m.def("set_worker_threads", &set_worker_threads);
}
