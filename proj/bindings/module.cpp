// Copyright 2026 The entlab developers
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
//
// Python bindings. Exact rationals cross the boundary as fractions.Fraction;
// Eigen matrices cross as numpy arrays (copies, not views).

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "entlab/bhm.hpp"
#include "entlab/entreduce.hpp"
#include "entlab/forrelation.hpp"
#include "entlab/fourier.hpp"
#include "entlab/harness.hpp"
#include "entlab/protocol.hpp"
#include "entlab/qcore.hpp"
#include "entlab/random.hpp"
#include "entlab/rng.hpp"
#include "entlab/serialize.hpp"

namespace py = pybind11;
using namespace entlab;

namespace {

py::object to_fraction(const Rational& r) {
    return py::module_::import("fractions").attr("Fraction")(r.str());
}

template <typename T>
std::string dump_json(const T& v) {
    return to_json(v).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Desk-scale simulators and exact audits for entangled-player "
              "communication protocols";

    // ---- seeded randomness ----------------------------------------------
    py::class_<std::mt19937_64>(m, "Rng", "Mersenne Twister stream; every stochastic routine "
                                          "draws only from an explicitly passed Rng");
    m.def("derive_seed", [](uint64_t master, const std::string& stream, uint64_t counter) {
              return derive_seed(master, stream, counter);
          },
          py::arg("master"), py::arg("stream"), py::arg("counter") = 0,
          "Stable per-stream seed derived from a master seed and a label");
    m.def("make_rng", [](uint64_t master, const std::string& stream, uint64_t counter) {
              return make_rng(master, stream, counter);
          },
          py::arg("master"), py::arg("stream"), py::arg("counter") = 0);

    // ---- states and operators -------------------------------------------
    py::class_<StateVector>(m, "StateVector")
        .def(py::init<int, CVector>(), py::arg("qubits"), py::arg("amps"))
        .def_readonly("qubits", &StateVector::qubits)
        .def_readonly("amps", &StateVector::amps)
        .def("dim", &StateVector::dim)
        .def_static("basis", &StateVector::basis, py::arg("qubits"), py::arg("index"))
        .def_static("max_entangled", &StateVector::max_entangled, py::arg("d"),
                    "Canonical rank-2^d maximally entangled state on 2d qubits");

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init<int, CMatrix>(), py::arg("qubits"), py::arg("mat"))
        .def_readonly("qubits", &DensityMatrix::qubits)
        .def_readonly("mat", &DensityMatrix::mat)
        .def("dim", &DensityMatrix::dim)
        .def_static("pure", &DensityMatrix::pure, py::arg("psi"));

    py::class_<UnitaryOp>(m, "UnitaryOp")
        .def(py::init<int, CMatrix>(), py::arg("qubits"), py::arg("mat"))
        .def_readonly("qubits", &UnitaryOp::qubits)
        .def_readonly("mat", &UnitaryOp::mat)
        .def("dim", &UnitaryOp::dim);

    py::class_<MeasurementFamily>(m, "MeasurementFamily")
        .def(py::init<int, std::vector<int>, std::vector<CMatrix>>(), py::arg("qubits"),
             py::arg("labels"), py::arg("ops"))
        .def_readonly("qubits", &MeasurementFamily::qubits)
        .def_readonly("labels", &MeasurementFamily::labels)
        .def_readonly("ops", &MeasurementFamily::ops);

    py::class_<MeasureOutcome>(m, "MeasureOutcome")
        .def_readonly("label", &MeasureOutcome::label)
        .def_readonly("prob", &MeasureOutcome::prob)
        .def_readonly("post", &MeasureOutcome::post);

    py::class_<PureOutcome>(m, "PureOutcome")
        .def_readonly("label", &PureOutcome::label)
        .def_readonly("prob", &PureOutcome::prob)
        .def_readonly("post", &PureOutcome::post);

    m.def("tensor_product",
          py::overload_cast<const StateVector&, const StateVector&>(&tensor_product));
    m.def("tensor_product",
          py::overload_cast<const DensityMatrix&, const DensityMatrix&>(&tensor_product));
    m.def("tensor_product", py::overload_cast<const UnitaryOp&, const UnitaryOp&>(&tensor_product));
    m.def("apply", py::overload_cast<const UnitaryOp&, const StateVector&>(&apply));
    m.def("apply", py::overload_cast<const UnitaryOp&, const DensityMatrix&>(&apply));
    m.def("apply",
          py::overload_cast<const UnitaryOp&, const StateVector&, const std::vector<int>&>(&apply),
          py::arg("u"), py::arg("psi"), py::arg("targets"));
    m.def("partial_trace", &partial_trace, py::arg("rho"), py::arg("keep"));
    m.def("hadamard_all", &hadamard_all, py::arg("qubits"));
    m.def("measure",
          py::overload_cast<const DensityMatrix&, const MeasurementFamily&>(&measure));
    m.def("measure", py::overload_cast<const StateVector&, const MeasurementFamily&>(&measure));
    m.def("measure",
          py::overload_cast<const StateVector&, const MeasurementFamily&,
                            const std::vector<int>&>(&measure),
          py::arg("psi"), py::arg("fam"), py::arg("targets"));
    m.def("trace_norm", &trace_norm);
    m.def("operator_norm", &operator_norm);
    m.def("trace_distance", &trace_distance);
    m.def("swap_test_prob", &swap_test_prob);

    m.def("random_state_vector", &random_state_vector, py::arg("qubits"), py::arg("rng"));
    m.def("random_real_density", &random_real_density, py::arg("qubits"), py::arg("rng"));
    m.def("random_real_symmetric_contraction", &random_real_symmetric_contraction,
          py::arg("qubits"), py::arg("rng"));

    // ---- cube transforms and level bounds -------------------------------
    py::class_<BooleanFunctionTable>(m, "BooleanFunctionTable")
        .def(py::init<int, std::vector<double>, bool>(), py::arg("n"), py::arg("values"),
             py::arg("bounded") = false)
        .def_readonly("n", &BooleanFunctionTable::n)
        .def_readonly("values", &BooleanFunctionTable::values)
        .def_readonly("bounded", &BooleanFunctionTable::bounded);

    py::class_<FourierSpectrum>(m, "FourierSpectrum")
        .def_readonly("n", &FourierSpectrum::n)
        .def_readonly("coef", &FourierSpectrum::coef);

    m.def("fourier", &fourier);
    m.def("inverse_fourier", &inverse_fourier);
    m.def("level_mass", &level_mass, py::arg("spec"), py::arg("ell"));

    py::class_<LevelAudit>(m, "LevelAudit")
        .def_readonly("ell", &LevelAudit::ell)
        .def_readonly("lhs", &LevelAudit::lhs)
        .def_readonly("rhs", &LevelAudit::rhs)
        .def_readonly("holds", &LevelAudit::holds);
    m.def("level_k_audit", &level_k_audit, py::arg("f"), py::arg("ell"));

    py::class_<MatrixValuedFunction>(m, "MatrixValuedFunction")
        .def(py::init<int, int, std::vector<DensityMatrix>>(), py::arg("n"), py::arg("c"),
             py::arg("values"))
        .def_readonly("n", &MatrixValuedFunction::n)
        .def_readonly("c", &MatrixValuedFunction::c)
        .def_readonly("values", &MatrixValuedFunction::values);

    py::class_<MatrixSpectrum>(m, "MatrixSpectrum")
        .def_readonly("n", &MatrixSpectrum::n)
        .def_readonly("c", &MatrixSpectrum::c)
        .def_readonly("coef", &MatrixSpectrum::coef);

    m.def("matrix_fourier", &matrix_fourier);
    m.def("matrix_inverse_fourier", &matrix_inverse_fourier);

    py::class_<MatrixLevelAudit>(m, "MatrixLevelAudit")
        .def_readonly("ell", &MatrixLevelAudit::ell)
        .def_readonly("lhs", &MatrixLevelAudit::lhs)
        .def_readonly("rhs", &MatrixLevelAudit::rhs)
        .def_readonly("padded_cost", &MatrixLevelAudit::padded_cost)
        .def_readonly("holds", &MatrixLevelAudit::holds);
    m.def("matrix_level_k_audit", &matrix_level_k_audit, py::arg("f"), py::arg("ell"));

    // ---- protocols ------------------------------------------------------
    py::class_<SmpQuantumProtocol>(m, "SmpQuantumProtocol")
        .def(py::init<int, int, std::vector<DensityMatrix>, std::vector<DensityMatrix>,
                      CMatrix>(),
             py::arg("n"), py::arg("c"), py::arg("prep_a"), py::arg("prep_b"),
             py::arg("referee_effect"))
        .def_readonly("n", &SmpQuantumProtocol::n)
        .def_readonly("c", &SmpQuantumProtocol::c)
        .def_readonly("prep_a", &SmpQuantumProtocol::prep_a)
        .def_readonly("prep_b", &SmpQuantumProtocol::prep_b)
        .def_readonly("referee_effect", &SmpQuantumProtocol::referee_effect);
    m.def("eval_smp", &eval_smp, py::arg("p"), py::arg("x"), py::arg("y"));

    py::class_<OneWayEntangledProtocol>(m, "OneWayEntangledProtocol")
        .def(py::init<int, int, int, DensityMatrix, std::vector<MeasurementFamily>,
                      std::vector<std::vector<CMatrix>>>(),
             py::arg("n"), py::arg("c"), py::arg("d"), py::arg("shared"), py::arg("alice"),
             py::arg("bob"))
        .def_readonly("n", &OneWayEntangledProtocol::n)
        .def_readonly("c", &OneWayEntangledProtocol::c)
        .def_readonly("d", &OneWayEntangledProtocol::d)
        .def_readonly("shared", &OneWayEntangledProtocol::shared);
    m.def("eval_one_way", &eval_one_way, py::arg("p"), py::arg("x"), py::arg("y"));

    py::class_<OneWayBranch>(m, "OneWayBranch")
        .def_readonly("prob", &OneWayBranch::prob)
        .def_readonly("state", &OneWayBranch::state);
    m.def("one_way_branches", &one_way_branches, py::arg("p"), py::arg("x"));

    py::class_<TwoOutcomeFamily>(m, "TwoOutcomeFamily")
        .def(py::init<CMatrix, CMatrix>(), py::arg("op0"), py::arg("op1"))
        .def_readonly("op0", &TwoOutcomeFamily::op0)
        .def_readonly("op1", &TwoOutcomeFamily::op1);

    py::class_<TwoWayEntangledProtocol>(m, "TwoWayEntangledProtocol")
        .def(py::init<int, int, int, int, DensityMatrix,
                      std::vector<std::vector<std::vector<TwoOutcomeFamily>>>,
                      std::vector<std::vector<std::vector<TwoOutcomeFamily>>>,
                      std::vector<uint32_t>>(),
             py::arg("n"), py::arg("d"), py::arg("m"), py::arg("rounds"), py::arg("shared"),
             py::arg("alice"), py::arg("bob"), py::arg("accept"))
        .def_readonly("n", &TwoWayEntangledProtocol::n)
        .def_readonly("d", &TwoWayEntangledProtocol::d)
        .def_readonly("m", &TwoWayEntangledProtocol::m)
        .def_readonly("rounds", &TwoWayEntangledProtocol::rounds)
        .def_readonly("shared", &TwoWayEntangledProtocol::shared)
        .def_readonly("accept", &TwoWayEntangledProtocol::accept)
        .def("c", &TwoWayEntangledProtocol::c)
        .def("side_qubits", &TwoWayEntangledProtocol::side_qubits);

    py::class_<CompiledTranscript>(m, "CompiledTranscript")
        .def_readonly("z", &CompiledTranscript::z)
        .def_readonly("e_op", &CompiledTranscript::e_op)
        .def_readonly("f_op", &CompiledTranscript::f_op)
        .def_readonly("sign", &CompiledTranscript::sign);

    py::class_<CompiledTwoWay>(m, "CompiledTwoWay")
        .def_readonly("d", &CompiledTwoWay::d)
        .def_readonly("m", &CompiledTwoWay::m)
        .def_readonly("c", &CompiledTwoWay::c)
        .def_readonly("transcripts", &CompiledTwoWay::transcripts);

    m.def("compile_two_way", &compile_two_way, py::arg("p"), py::arg("x"), py::arg("y"));
    m.def("completeness_residual", &completeness_residual);
    m.def("eval_compiled", &eval_compiled, py::arg("compiled"), py::arg("shared"));
    m.def("transcript_distribution", &transcript_distribution, py::arg("p"), py::arg("x"),
          py::arg("y"));
    m.def("eval_two_way", &eval_two_way, py::arg("p"), py::arg("x"), py::arg("y"));
    m.def("monte_carlo_transcript", &monte_carlo_transcript, py::arg("p"), py::arg("x"),
          py::arg("y"), py::arg("shots"), py::arg("rng"),
          py::call_guard<py::gil_scoped_release>());
    m.def("local_equivalent", &local_equivalent, py::arg("p"), py::arg("u"), py::arg("v"));

    m.def("xor_fiber",
          py::overload_cast<int, const std::function<double(uint32_t, uint32_t)>&>(&xor_fiber),
          py::arg("n"), py::arg("eval"),
          "Diagonal average of any two-player evaluator over pairs (x, x ^ z)");
    m.def("xor_fiber", py::overload_cast<const SmpQuantumProtocol&>(&xor_fiber));
    m.def("xor_fiber", py::overload_cast<const OneWayEntangledProtocol&>(&xor_fiber));
    m.def("xor_fiber", py::overload_cast<const TwoWayEntangledProtocol&>(&xor_fiber));

    py::class_<GrowthRow>(m, "GrowthRow")
        .def_readonly("ell", &GrowthRow::ell)
        .def_readonly("mass", &GrowthRow::mass)
        .def_readonly("product_bound", &GrowthRow::product_bound)
        .def_readonly("cs_bound", &GrowthRow::cs_bound)
        .def_readonly("reference", &GrowthRow::reference)
        .def_readonly("asserted", &GrowthRow::asserted)
        .def_readonly("holds", &GrowthRow::holds);

    py::class_<FourierGrowthReport>(m, "FourierGrowthReport")
        .def_readonly("n", &FourierGrowthReport::n)
        .def_readonly("rows", &FourierGrowthReport::rows);

    m.def("fourier_growth_report",
          py::overload_cast<const SmpQuantumProtocol&, int>(&fourier_growth_report),
          py::arg("p"), py::arg("ell_max"));
    m.def("fourier_growth_report",
          py::overload_cast<const TwoWayEntangledProtocol&, int>(&fourier_growth_report),
          py::arg("p"), py::arg("ell_max"));

    // ---- swap-test decision problems ------------------------------------
    py::class_<ForrInstance>(m, "ForrInstance")
        .def(py::init([](int n, std::vector<int> x, std::vector<int> y, int label) {
                 ForrInstance inst;
                 inst.n = n;
                 inst.x = std::move(x);
                 inst.y = std::move(y);
                 inst.label = label;
                 return inst;
             }),
             py::arg("n"), py::arg("x"), py::arg("y"), py::arg("label") = 0)
        .def_readonly("n", &ForrInstance::n)
        .def_readonly("x", &ForrInstance::x)
        .def_readonly("y", &ForrInstance::y)
        .def_readonly("label", &ForrInstance::label);

    py::class_<ForrXorInstance>(m, "ForrXorInstance")
        .def(py::init<double, std::vector<ForrInstance>>(), py::arg("epsilon"), py::arg("copies"))
        .def_readonly("k", &ForrXorInstance::k)
        .def_readonly("epsilon", &ForrXorInstance::epsilon)
        .def_readonly("copies", &ForrXorInstance::copies)
        .def("xor_label", &ForrXorInstance::xor_label);

    m.def("is_power_of_two", &is_power_of_two);
    m.def("forr_value", &forr_value);
    m.def("classify", &classify, py::arg("x"), py::arg("y"), py::arg("epsilon"));
    m.def("canonical_epsilon", &canonical_epsilon, py::arg("k"), py::arg("n"));

    py::class_<PlantResult>(m, "PlantResult")
        .def_readonly("inst", &PlantResult::inst)
        .def_readonly("attempts", &PlantResult::attempts);
    m.def("plant_with_stats", &plant_with_stats, py::arg("n"), py::arg("epsilon"),
          py::arg("target_label"), py::arg("seed"));
    m.def("plant_instance", &plant_instance, py::arg("n"), py::arg("epsilon"),
          py::arg("target_label"), py::arg("seed"));
    m.def("default_reps", &default_reps, py::arg("epsilon"), py::arg("k"));
    m.def("encode_vector", &encode_vector);
    m.def("hadamard_encode", &hadamard_encode);
    m.def("swap_bias", &swap_bias, py::arg("x"), py::arg("y"));
    m.def("swap_accept_probability", &swap_accept_probability, py::arg("x"), py::arg("y"));
    m.def("decision_threshold", &decision_threshold, py::arg("epsilon"));
    m.def("swap_test_copy", &swap_test_copy, py::arg("copy"), py::arg("epsilon"), py::arg("reps"),
          py::arg("rng"), py::call_guard<py::gil_scoped_release>());
    m.def("swap_test_protocol", &swap_test_protocol, py::arg("inst"), py::arg("reps"),
          py::arg("seed"), py::call_guard<py::gil_scoped_release>());

    // ---- hidden-matching distributions ----------------------------------
    py::class_<Matching>(m, "Matching")
        .def(py::init<int, std::vector<std::pair<int, int>>>(), py::arg("n"), py::arg("edges"))
        .def_readonly("n", &Matching::n)
        .def_readonly("edges", &Matching::edges)
        .def("m", &Matching::m);

    m.def("apply_matching", &apply_matching, py::arg("matching"), py::arg("x"));

    py::class_<BhmInstance>(m, "BhmInstance")
        .def_readonly("x", &BhmInstance::x)
        .def_readonly("matching", &BhmInstance::matching)
        .def_readonly("y", &BhmInstance::y)
        .def_readonly("label", &BhmInstance::label);

    m.def("label_of", &label_of, py::arg("x"), py::arg("matching"), py::arg("y"));

    py::enum_<HardKind>(m, "HardKind")
        .value("N", HardKind::N)
        .value("Y", HardKind::Y)
        .value("MuPlus", HardKind::MuPlus)
        .value("MuMinus", HardKind::MuMinus);

    py::class_<HardDistributionSpec>(m, "HardDistributionSpec")
        .def(py::init([](HardKind kind, int n, int mm, int k) {
                 return HardDistributionSpec{kind, n, mm, k};
             }),
             py::arg("kind"), py::arg("n"), py::arg("m"), py::arg("k") = 1)
        .def_readonly("kind", &HardDistributionSpec::kind)
        .def_readonly("n", &HardDistributionSpec::n)
        .def_readonly("m", &HardDistributionSpec::m)
        .def_readonly("k", &HardDistributionSpec::k);

    m.def("sample", &sample, py::arg("spec"), py::arg("rng"));
    m.def("enumerate_matchings", &enumerate_matchings, py::arg("n"), py::arg("m"));
    m.def("sample_matching", &sample_matching, py::arg("n"), py::arg("m"), py::arg("rng"));
    m.def("moment", [](const HardDistributionSpec& spec, const std::vector<uint32_t>& sx,
                       const std::vector<uint32_t>& sy) { return to_fraction(moment(spec, sx, sy)); },
          py::arg("spec"), py::arg("sx"), py::arg("sy"),
          "Exact joint character moment as a fractions.Fraction");

    py::class_<MomentCounterexample>(m, "MomentCounterexample")
        .def_readonly("total_size", &MomentCounterexample::total_size)
        .def_readonly("sx", &MomentCounterexample::sx)
        .def_readonly("sy", &MomentCounterexample::sy)
        .def_property_readonly("plus_value",
                               [](const MomentCounterexample& c) { return to_fraction(c.plus_value); })
        .def_property_readonly("minus_value", [](const MomentCounterexample& c) {
            return to_fraction(c.minus_value);
        });

    py::class_<MomentReport>(m, "MomentReport")
        .def_readonly("agree", &MomentReport::agree)
        .def_readonly("counterexample", &MomentReport::counterexample);

    m.def("verify_moment_agreement", &verify_moment_agreement, py::arg("n"), py::arg("m"),
          py::arg("k"), py::arg("max_size"), py::call_guard<py::gil_scoped_release>());
    m.def("find_moment_counterexample", &find_moment_counterexample, py::arg("n"), py::arg("m"),
          py::arg("k"), py::arg("start_size"), py::call_guard<py::gil_scoped_release>());
    m.def("matches", &matches, py::arg("matchings"), py::arg("s"));

    py::class_<CorrelationAudit>(m, "CorrelationAudit")
        .def_property_readonly("lhs", [](const CorrelationAudit& a) { return to_fraction(a.lhs); })
        .def_property_readonly("rhs", [](const CorrelationAudit& a) { return to_fraction(a.rhs); })
        .def_readonly("matched", &CorrelationAudit::matched)
        .def_readonly("equal", &CorrelationAudit::equal);

    m.def("correlation_identity_audit", &correlation_identity_audit, py::arg("matching"),
          py::arg("s"), py::arg("w"));
    m.def("match_probability",
          [](int n, int mm, const std::vector<int>& blocks) {
              return to_fraction(match_probability(n, mm, blocks));
          },
          py::arg("n"), py::arg("m"), py::arg("blocks"));
    m.def("match_frequency_enumerated",
          [](int n, int mm, const std::vector<int>& blocks) {
              return to_fraction(match_frequency_enumerated(n, mm, blocks));
          },
          py::arg("n"), py::arg("m"), py::arg("blocks"));
    m.def("match_frequency_sampled", &match_frequency_sampled, py::arg("n"), py::arg("m"),
          py::arg("blocks"), py::arg("samples"), py::arg("rng"),
          py::call_guard<py::gil_scoped_release>());
    m.def("greedy_complete", &greedy_complete);

    py::class_<QuantumRoundResult>(m, "QuantumRoundResult")
        .def_readonly("edge_in_matching", &QuantumRoundResult::edge_in_matching)
        .def_readonly("edge_index", &QuantumRoundResult::edge_index)
        .def_readonly("i", &QuantumRoundResult::i)
        .def_readonly("j", &QuantumRoundResult::j)
        .def_readonly("a", &QuantumRoundResult::a)
        .def_readonly("b", &QuantumRoundResult::b)
        .def_readonly("parity", &QuantumRoundResult::parity);

    m.def("quantum_round", &quantum_round, py::arg("x"), py::arg("matching"), py::arg("rng"));
    m.def("default_reps_per_copy", &default_reps_per_copy, py::arg("alpha"), py::arg("k"));
    m.def("referee_decide", &referee_decide, py::arg("instances"), py::arg("reps_per_copy"),
          py::arg("rng"), py::call_guard<py::gil_scoped_release>());
    m.def("delta_az",
          [](int n, int mm, int k, const std::vector<uint32_t>& a_set) {
              return to_fraction(delta_az(n, mm, k, a_set));
          },
          py::arg("n"), py::arg("m"), py::arg("k"), py::arg("a_set"));

    py::class_<OneWayBruteForce>(m, "OneWayBruteForce")
        .def_property_readonly("advantage",
                               [](const OneWayBruteForce& r) { return to_fraction(r.advantage); })
        .def_readonly("best_part", &OneWayBruteForce::best_part);
    m.def("brute_force_one_way", &brute_force_one_way, py::arg("n"), py::arg("m"), py::arg("c"),
          py::call_guard<py::gil_scoped_release>());

    // ---- shared-state decomposition and stripping ------------------------
    py::enum_<ComponentKind>(m, "ComponentKind")
        .value("Zero", ComponentKind::Zero)
        .value("Epr", ComponentKind::Epr);

    m.def("canonical_state", &canonical_state, py::arg("kind"), py::arg("d"));
    m.def("pair_state", &pair_state, py::arg("d"), py::arg("i"), py::arg("j"),
          py::arg("phase") = false);

    py::class_<SimpleComponent>(m, "SimpleComponent")
        .def_readonly("coefficient", &SimpleComponent::coefficient)
        .def_readonly("kind", &SimpleComponent::kind)
        .def_readonly("witness_a", &SimpleComponent::witness_a)
        .def_readonly("witness_b", &SimpleComponent::witness_b)
        .def_readonly("i", &SimpleComponent::i)
        .def_readonly("j", &SimpleComponent::j)
        .def_readonly("phase", &SimpleComponent::phase);

    py::class_<Decomposition>(m, "Decomposition")
        .def_readonly("d", &Decomposition::d)
        .def_readonly("complex_extension", &Decomposition::complex_extension)
        .def_readonly("components", &Decomposition::components);

    m.def("complete_unitary", &complete_unitary, py::arg("qubits"), py::arg("assigned_columns"));

    py::class_<PairClass>(m, "PairClass")
        .def_readonly("kind", &PairClass::kind)
        .def_readonly("witness_a", &PairClass::witness_a)
        .def_readonly("witness_b", &PairClass::witness_b);

    m.def("classify_pair", &classify_pair, py::arg("i"), py::arg("j"), py::arg("d"),
          py::arg("phase") = false);
    m.def("decompose", &decompose, py::arg("rho"));
    m.def("coefficient_of", &coefficient_of, py::arg("dec"), py::arg("i"), py::arg("j"),
          py::arg("phase") = false);

    py::class_<DecompositionReport>(m, "DecompositionReport")
        .def_readonly("reconstruction_residual", &DecompositionReport::reconstruction_residual)
        .def_readonly("max_coefficient", &DecompositionReport::max_coefficient)
        .def_readonly("coefficient_bound", &DecompositionReport::coefficient_bound)
        .def_readonly("max_witness_residual", &DecompositionReport::max_witness_residual)
        .def_readonly("complex_extension", &DecompositionReport::complex_extension)
        .def_readonly("valid", &DecompositionReport::valid);

    m.def("verify_decomposition", &verify_decomposition, py::arg("rho"), py::arg("dec"));
    m.def("decomposition_linearity_residual", &decomposition_linearity_residual, py::arg("p"),
          py::arg("dec"), py::arg("x"), py::arg("y"));

    py::class_<EntangledSmpProtocol>(m, "EntangledSmpProtocol")
        .def(py::init<int, int, DensityMatrix, std::vector<UnitaryOp>, std::vector<UnitaryOp>,
                      CMatrix>(),
             py::arg("n"), py::arg("d"), py::arg("shared"), py::arg("alice"), py::arg("bob"),
             py::arg("referee_effect"))
        .def_readonly("n", &EntangledSmpProtocol::n)
        .def_readonly("d", &EntangledSmpProtocol::d)
        .def_readonly("shared", &EntangledSmpProtocol::shared)
        .def_readonly("alice", &EntangledSmpProtocol::alice)
        .def_readonly("bob", &EntangledSmpProtocol::bob)
        .def_readonly("referee_effect", &EntangledSmpProtocol::referee_effect);

    m.def("eval_entangled_smp", &eval_entangled_smp, py::arg("p"), py::arg("x"), py::arg("y"));

    py::class_<StrippedSmpAnalysis>(m, "StrippedSmpAnalysis")
        .def_readonly("flag_prob", &StrippedSmpAnalysis::flag_prob)
        .def_readonly("conditional_state", &StrippedSmpAnalysis::conditional_state)
        .def_readonly("conditional_value", &StrippedSmpAnalysis::conditional_value)
        .def_readonly("overall_value", &StrippedSmpAnalysis::overall_value);

    m.def("strip_qsmp_analyze", &strip_qsmp_analyze, py::arg("p"), py::arg("x"), py::arg("y"));

    py::class_<StrippedSmpShots>(m, "StrippedSmpShots")
        .def_readonly("shots", &StrippedSmpShots::shots)
        .def_readonly("flags", &StrippedSmpShots::flags)
        .def_readonly("mean_output", &StrippedSmpShots::mean_output);

    m.def("strip_qsmp_simulate", &strip_qsmp_simulate, py::arg("p"), py::arg("x"), py::arg("y"),
          py::arg("shots"), py::arg("rng"), py::call_guard<py::gil_scoped_release>());
    m.def("quantize_entry", &quantize_entry, py::arg("v"), py::arg("bits"));

    py::class_<StrippedOneWayAnalysis>(m, "StrippedOneWayAnalysis")
        .def_readonly("original_value", &StrippedOneWayAnalysis::original_value)
        .def_readonly("identity_value", &StrippedOneWayAnalysis::identity_value)
        .def_readonly("stripped_value", &StrippedOneWayAnalysis::stripped_value)
        .def_readonly("extra_bits", &StrippedOneWayAnalysis::extra_bits);

    m.def("strip_oneway_analyze", &strip_oneway_analyze, py::arg("p"), py::arg("x"), py::arg("y"));

    py::class_<StrippedOneWayShots>(m, "StrippedOneWayShots")
        .def_readonly("shots", &StrippedOneWayShots::shots)
        .def_readonly("mean_output", &StrippedOneWayShots::mean_output);

    m.def("strip_oneway_simulate", &strip_oneway_simulate, py::arg("p"), py::arg("x"),
          py::arg("y"), py::arg("shots"), py::arg("rng"),
          py::call_guard<py::gil_scoped_release>());
    m.def("expectation_identity_residual", &expectation_identity_residual, py::arg("f_eff"),
          py::arg("sigma"), py::arg("d"));

    // ---- serialization ---------------------------------------------------
    m.def("base64_encode", [](py::bytes data) {
        std::string s = data;
        return base64_encode(reinterpret_cast<const unsigned char*>(s.data()), s.size());
    });
    m.def("base64_decode", [](const std::string& text) {
        auto v = base64_decode(text);
        return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
    });
    m.def("bits_to_string", &bits_to_string, py::arg("bits"), py::arg("n"));
    m.def("bits_from_string", &bits_from_string);
    m.def("signs_to_string", &signs_to_string);
    m.def("signs_from_string", &signs_from_string);

    m.def("dumps", &dump_json<SmpQuantumProtocol>, "Serialize to a JSON document string");
    m.def("dumps", &dump_json<OneWayEntangledProtocol>);
    m.def("dumps", &dump_json<TwoWayEntangledProtocol>);
    m.def("dumps", &dump_json<ForrInstance>);
    m.def("dumps", &dump_json<ForrXorInstance>);
    m.def("dumps", &dump_json<Matching>);
    m.def("dumps", &dump_json<BhmInstance>);
    m.def("dumps", &dump_json<HardDistributionSpec>);
    m.def("dumps", &dump_json<Decomposition>);
    m.def("dumps", &dump_json<DecompositionReport>);
    m.def("smp_from_json", [](const std::string& s) { return smp_from_json(json::parse(s)); });
    m.def("one_way_from_json",
          [](const std::string& s) { return one_way_from_json(json::parse(s)); });
    m.def("two_way_from_json",
          [](const std::string& s) { return two_way_from_json(json::parse(s)); });
    m.def("forr_instance_from_json",
          [](const std::string& s) { return forr_instance_from_json(json::parse(s)); });
    m.def("forr_xor_from_json",
          [](const std::string& s) { return forr_xor_from_json(json::parse(s)); });
    m.def("matching_from_json",
          [](const std::string& s) { return matching_from_json(json::parse(s)); });
    m.def("bhm_instance_from_json",
          [](const std::string& s) { return bhm_instance_from_json(json::parse(s)); });
    m.def("hard_spec_from_json",
          [](const std::string& s) { return hard_spec_from_json(json::parse(s)); });

    // ---- harness ---------------------------------------------------------
    py::class_<ConfigEntry>(m, "ConfigEntry")
        .def_readonly("key", &ConfigEntry::key)
        .def_readonly("value", &ConfigEntry::value)
        .def_readonly("description", &ConfigEntry::description);

    py::class_<Config>(m, "Config")
        .def_readonly("values", &Config::values)
        .def_static("defaults", &Config::defaults)
        .def_static("from_defaults", &Config::from_defaults)
        .def_static("from_string", &Config::from_string, py::arg("text"))
        .def_static("from_file", &Config::from_file, py::arg("path"))
        .def("get_long", &Config::get_long)
        .def("get_double", &Config::get_double)
        .def("get_string", &Config::get_string);

    py::class_<Table>(m, "Table")
        .def_readonly("name", &Table::name)
        .def_readonly("header", &Table::header)
        .def_readonly("rows", &Table::rows);

    py::class_<RunRecord>(m, "RunRecord")
        .def_readonly("schema_version", &RunRecord::schema_version)
        .def_readonly("timestamp", &RunRecord::timestamp)
        .def_readonly("subcommand", &RunRecord::subcommand)
        .def_readonly("seed", &RunRecord::seed)
        .def_readonly("config", &RunRecord::config)
        .def_readonly("metrics", &RunRecord::metrics)
        .def_readonly("notes", &RunRecord::notes)
        .def_readonly("checks", &RunRecord::checks)
        .def_readonly("tables", &RunRecord::tables)
        .def("passed", &RunRecord::passed)
        .def("canonical_json", [](const RunRecord& r) { return r.canonical_json().dump(); },
             "Timestamp-free record as a JSON string; byte-stable across reruns")
        .def("full_json", [](const RunRecord& r) { return r.full_json().dump(); });

    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

    m.def("known_subcommands", &known_subcommands);
    m.def("run", &run, py::arg("subcommand"), py::arg("config"), py::arg("seed"),
          py::arg("jobs") = 1, py::call_guard<py::gil_scoped_release>());
    m.def("append_run_log", &append_run_log, py::arg("path"), py::arg("record"));
    m.def("tables_to_csv", &tables_to_csv, py::arg("record"));
    m.def("format_cell", &format_cell);

    m.def("random_smp_protocol", &random_smp_protocol, py::arg("n"), py::arg("c"), py::arg("rng"));
    m.def("random_two_outcome_family", &random_two_outcome_family, py::arg("qubits"),
          py::arg("rng"));
    m.def("random_two_way_protocol", &random_two_way_protocol, py::arg("n"), py::arg("d"),
          py::arg("m"), py::arg("rounds"), py::arg("rng"));
    m.def("random_entangled_smp", &random_entangled_smp, py::arg("n"), py::arg("d"),
          py::arg("rng"));
    m.def("random_bounded_table", &random_bounded_table, py::arg("n"), py::arg("shape"),
          py::arg("rng"));
    m.def("random_matrix_function", &random_matrix_function, py::arg("n"), py::arg("c"),
          py::arg("rng"));
    m.def("reference_entangled_smp", &reference_entangled_smp);
    m.def("reference_one_way", &reference_one_way);
    m.attr("classical_golden_advantage") = std::string(kClassicalGoldenAdvantage);
}
