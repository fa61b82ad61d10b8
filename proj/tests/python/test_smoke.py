# Copyright 2026 The entlab developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end smoke of the python surface: every block drives a different
module through the bindings and checks values the C++ suite pins exactly."""

import json
from fractions import Fraction

import numpy as np

import entlab as el


def test_reference_protocol_and_stripping():
    p = el.reference_entangled_smp()
    for x in (0, 1):
        for y in (0, 1):
            want = 1.0 / 3.0 if x == y else -1.0 / 3.0
            assert abs(el.eval_entangled_smp(p, x, y) - want) < 1e-12
    a = el.strip_qsmp_analyze(p, 0, 1)
    assert abs(a.flag_prob - 1.0 / 16.0) < 1e-12
    assert abs(a.overall_value + 1.0 / 48.0) < 1e-12


def test_two_way_roundtrip_and_compiled_consistency():
    rng = el.make_rng(5, "py.smoke.twoway")
    p = el.random_two_way_protocol(2, 1, 1, 2, rng)
    value = el.eval_two_way(p, 1, 2)
    assert -1.0 <= value <= 1.0
    q = el.two_way_from_json(el.dumps(p))
    assert abs(el.eval_two_way(q, 1, 2) - value) < 1e-12
    comp = el.compile_two_way(p, 1, 2)
    assert el.completeness_residual(comp) <= 1e-9
    dist = el.transcript_distribution(p, 1, 2)
    assert abs(sum(dist) - 1.0) <= 1e-9
    signed = sum(t.sign * pr for t, pr in zip(comp.transcripts, dist))
    assert abs(signed - value) <= 1e-9


def test_rng_streams_reproduce():
    pa = el.random_smp_protocol(3, 1, el.make_rng(9, "py.smoke.det"))
    pb = el.random_smp_protocol(3, 1, el.make_rng(9, "py.smoke.det"))
    for x in range(8):
        for y in range(8):
            assert el.eval_smp(pa, x, y) == el.eval_smp(pb, x, y)


def test_growth_chain_rows():
    p = el.random_smp_protocol(4, 1, el.make_rng(11, "py.smoke.growth"))
    rep = el.fourier_growth_report(p, 3)
    assert len(rep.rows) == 4
    for row in rep.rows:
        assert row.asserted and row.holds
        assert row.mass <= row.product_bound + 1e-9
        assert row.product_bound <= row.cs_bound + 1e-9


def test_cube_transform_known_spectrum():
    majority = el.BooleanFunctionTable(3, [1, 1, 1, -1, 1, -1, -1, -1], True)
    spec = el.fourier(majority)
    assert abs(el.level_mass(spec, 1) - 1.5) < 1e-12
    assert abs(el.level_mass(spec, 2)) < 1e-12
    assert abs(el.level_mass(spec, 3) - 0.5) < 1e-12
    back = el.inverse_fourier(spec)
    assert max(abs(u - v) for u, v in zip(back.values, majority.values)) < 1e-12
    audit = el.level_k_audit(majority, 1)
    assert audit.holds and audit.lhs <= audit.rhs


def test_matching_exact_fractions():
    assert len(el.enumerate_matchings(6, 2)) == 45
    assert el.match_probability(4, 1, [1]) == Fraction(1, 6)
    assert el.match_probability(4, 1, [1]) == el.match_frequency_enumerated(4, 1, [1])
    cx = el.find_moment_counterexample(4, 1, 1, 2)
    assert cx.total_size == 3
    assert cx.plus_value == Fraction(1, 6) and cx.minus_value == Fraction(-1, 6)
    assert el.verify_moment_agreement(4, 1, 1, 2).agree
    r = el.brute_force_one_way(4, 1, 1)
    assert r.advantage == Fraction(1, 3) == Fraction(el.classical_golden_advantage)


def test_swap_statistic_and_planting():
    x, y = [1, 1, 1, -1], [1, -1, 1, 1]
    bias = el.swap_bias(x, y)
    assert abs(el.swap_accept_probability(x, y) - 0.5 - bias * bias / 2.0) < 1e-15
    inst = el.plant_instance(64, 0.5, -1, 123)
    assert inst.label == -1
    assert el.classify(inst.x, inst.y, 0.5) == -1


def test_density_matrix_numpy_interop():
    rho = el.DensityMatrix.pure(el.StateVector.max_entangled(1))
    assert rho.mat.shape == (4, 4)
    assert abs(np.trace(rho.mat) - 1.0) < 1e-12
    reduced = el.partial_trace(rho, [0])
    assert np.allclose(reduced.mat, np.eye(2) / 2.0)
    dec = el.decompose(rho)
    rep = el.verify_decomposition(rho, dec)
    assert rep.valid
    assert rep.reconstruction_residual <= 1e-10
    assert {c.kind.name for c in dec.components} == {"Epr"}


def test_harness_records_are_canonical():
    cfg = el.Config.from_defaults()
    rec1 = el.run("moment-check", cfg, 7, 1)
    rec4 = el.run("moment-check", cfg, 7, 4)
    assert rec1.passed()
    assert rec1.canonical_json() == rec4.canonical_json()
    doc = json.loads(rec1.full_json())
    assert doc["schema_version"] == 1
    assert "record" in doc and "timestamp" in doc
    try:
        el.run("no-such-subcommand", cfg, 1, 1)
    except ValueError:
        pass
    else:
        raise AssertionError("unknown subcommand must be rejected")


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
                print(f"ok   {name}")
            except AssertionError as exc:
                failures += 1
                print(f"FAIL {name}: {exc}")
    raise SystemExit(failures)
