"""Experiment harness: configuration validation, seeded determinism, CSV
and SVG emission."""

import numpy as np
import pytest

from oaasim import (
    EnsembleRecord,
    ExperimentConfig,
    SplitMix64,
    ValidationError,
    build_estimated_embedding,
    build_row_encoding,
    derive_seed,
    emit_outputs,
    iteration_count,
    mu_normalize,
    oblivious_aa,
    prepare_input,
    random_input,
    random_symmetric,
    run_ensemble,
    run_trace,
)
from oaasim.experiments import (
    ENSEMBLE_CSV_HEADER,
    TRACE_CSV_HEADER,
    _thread_count,
    ensemble_csv_lines,
    trace_csv_lines,
)

SMALL = dict(dims=(8, 16), trials=3, seed=5)


def test_config_validation():
    ExperimentConfig()  # defaults are valid
    with pytest.raises(ValidationError):
        ExperimentConfig(dims=())
    with pytest.raises(ValidationError):
        ExperimentConfig(dims=(6,))  # even but not a power of two
    with pytest.raises(ValidationError):
        ExperimentConfig(dims=(7,))
    with pytest.raises(ValidationError):
        ExperimentConfig(trials=0)
    with pytest.raises(ValidationError):
        ExperimentConfig(variant="reverse")
    with pytest.raises(ValidationError):
        ExperimentConfig(fidelity_mode="exact")
    with pytest.raises(ValidationError):
        ExperimentConfig(experiment="sweep")


def test_random_symmetric_layout_and_bounds():
    gen = SplitMix64(1)
    draws = SplitMix64(1).uniform_signed_array(3)
    a = random_symmetric(2, gen)
    # upper triangle drawn row by row, then mirrored
    assert a[0, 0] == draws[0]
    assert a[0, 1] == draws[1]
    assert a[1, 0] == draws[1]
    assert a[1, 1] == draws[2]
    big = random_symmetric(20, SplitMix64(2))
    assert np.array_equal(big, big.T)
    assert np.abs(big).max() < 1.0
    assert np.array_equal(big, random_symmetric(20, SplitMix64(2)))


def test_random_input_unit_norm():
    vec = random_input(16, SplitMix64(3))
    assert np.linalg.norm(vec) == pytest.approx(1.0, abs=1e-14)
    assert np.array_equal(vec, random_input(16, SplitMix64(3)))


def test_ensemble_records_order_and_determinism(monkeypatch):
    cfg = ExperimentConfig(experiment="ensemble", variant="adjoint", **SMALL)
    monkeypatch.setenv("OAA_THREADS", "1")
    serial = run_ensemble(cfg)
    assert [(r.dim, r.trial) for r in serial] == [
        (d, t) for d in (8, 16) for t in range(3)
    ]
    monkeypatch.setenv("OAA_THREADS", "3")
    threaded = run_ensemble(cfg)
    assert serial == threaded
    for rec in serial:
        assert 0.0 <= rec.final_probability <= 1.0 + 1e-12
        assert 0.0 <= rec.final_fidelity <= 1.0 + 1e-12
        assert rec.ef == pytest.approx((1.0 - rec.c2) ** 2, abs=1e-12)
        assert rec.k_used == (2 if rec.dim == 8 else 3)


def test_ensemble_record_is_trace_peak():
    # re-derive one trial by hand: same derived seeds, same circuit, then
    # pick the highest-probability record from the raw trace
    cfg = ExperimentConfig(dims=(16,), trials=1, seed=5, variant="adjoint")
    rec = run_ensemble(cfg)[0]

    a = random_symmetric(8, SplitMix64(derive_seed(5, 16, 0, 0)))
    normalized, mu = mu_normalize(a)
    emb = build_estimated_embedding(normalized, mu)
    circ = build_row_encoding(emb.u)
    vec = random_input(16, SplitMix64(derive_seed(5, 16, 0, 1)))
    state = prepare_input(circ, vec)
    trace = oblivious_aa(circ, state, iteration_count(16), "adjoint", emb.u @ vec)
    probs = [r.probability for r in trace.records]
    best = trace.records[int(np.argmax(probs))]
    assert rec.final_probability == best.probability
    assert rec.final_fidelity == best.fidelity
    assert rec.k_used == iteration_count(16)


def test_fixed_matrix_shares_closeness_per_dim():
    cfg = ExperimentConfig(experiment="fixed-matrix", variant="adjoint", **SMALL)
    records = run_ensemble(cfg)
    for dim in (8, 16):
        c2s = {r.c2 for r in records if r.dim == dim}
        assert len(c2s) == 1
    # trials still differ through their inputs
    fids = {r.final_fidelity for r in records if r.dim == 8}
    assert len(fids) == 3
    # the ensemble draws a different matrix per trial
    ens = run_ensemble(ExperimentConfig(experiment="ensemble", variant="adjoint", **SMALL))
    assert len({r.c2 for r in ens if r.dim == 8}) == 3
    # trial 0 uses the same derived seeds in both kinds
    assert ens[0].c2 == records[0].c2


def test_trace_runs_two_past_the_marker():
    cfg = ExperimentConfig(experiment="trace", variant="adjoint", **SMALL)
    results = run_trace(cfg)
    assert [r.dim for r in results] == [8, 16]
    for res in results:
        assert res.k_marker == (2 if res.dim == 8 else 3)
        assert res.trace.k_target == res.k_marker + 2
        assert len(res.trace.records) == res.k_marker + 3
        assert res.trace.records[0].fidelity == pytest.approx(1.0, abs=1e-12)


def test_kind_mismatch_rejected():
    with pytest.raises(ValidationError):
        run_trace(ExperimentConfig(experiment="ensemble", **SMALL))
    with pytest.raises(ValidationError):
        run_ensemble(ExperimentConfig(experiment="trace", **SMALL))


def test_csv_lines_round_trip():
    cfg = ExperimentConfig(experiment="ensemble", variant="adjoint", **SMALL)
    records = run_ensemble(cfg)
    lines = ensemble_csv_lines(records)
    assert lines[0] == ENSEMBLE_CSV_HEADER
    assert len(lines) == 1 + len(records)
    first = lines[1].split(",")
    assert int(first[0]) == records[0].trial
    assert int(first[1]) == records[0].dim
    # repr round-trips the floats exactly
    assert float(first[2]) == records[0].c2
    assert float(first[4]) == records[0].final_fidelity

    trace_lines = trace_csv_lines(run_trace(ExperimentConfig(experiment="trace", **SMALL)))
    assert trace_lines[0] == TRACE_CSV_HEADER
    row = trace_lines[1].split(",")
    assert row[0] == "8" and row[1] == "0" and row[4] == "2"


def test_emit_outputs_csv_and_svg(tmp_path):
    cfg = ExperimentConfig(experiment="ensemble", variant="adjoint", **SMALL)
    records = run_ensemble(cfg)
    csv_path = tmp_path / "out" / "ensemble.csv"
    written = emit_outputs(records, "csv", csv_path)
    assert written == [csv_path]
    text = csv_path.read_text()
    assert text.startswith(ENSEMBLE_CSV_HEADER)
    assert len(text.strip().split("\n")) == 7

    svg_written = emit_outputs(records, "svg", tmp_path / "plots")
    assert [p.name for p in svg_written] == ["ensemble_dim8.svg", "ensemble_dim16.svg"]
    first_bytes = svg_written[0].read_text()
    assert first_bytes.startswith("<svg")
    assert "</svg>" in first_bytes
    # byte-identical on rerun
    emit_outputs(records, "svg", tmp_path / "plots")
    assert svg_written[0].read_text() == first_bytes

    traces = run_trace(ExperimentConfig(experiment="trace", **SMALL))
    trace_svgs = emit_outputs(traces, "svg", tmp_path / "plots")
    assert [p.name for p in trace_svgs] == ["trace_dim8.svg", "trace_dim16.svg"]
    assert "stroke-dasharray" in trace_svgs[0].read_text()


def test_emit_rejects_bad_arguments(tmp_path):
    with pytest.raises(ValidationError):
        emit_outputs([], "csv", tmp_path / "x.csv")
    rec = EnsembleRecord(0, 8, 0.1, 0.81, 0.9, 0.7, 2)
    with pytest.raises(ValidationError):
        emit_outputs([rec], "pdf", tmp_path / "x.pdf")


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("OAA_THREADS", "7")
    assert _thread_count() == 7
    monkeypatch.setenv("OAA_THREADS", "zero")
    with pytest.raises(ValidationError):
        _thread_count()
    monkeypatch.setenv("OAA_THREADS", "0")
    with pytest.raises(ValidationError):
        _thread_count()
    monkeypatch.delenv("OAA_THREADS")
    assert _thread_count() >= 1


def test_projected_mode_runs():
    cfg = ExperimentConfig(
        dims=(8,), trials=2, seed=9, variant="adjoint",
        fidelity_mode="projected", experiment="ensemble",
    )
    records = run_ensemble(cfg)
    for rec in records:
        assert 0.0 <= rec.final_probability <= 1.0
        assert 0.0 <= rec.final_fidelity <= 1.0 + 1e-12
