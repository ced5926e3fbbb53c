import json

import numpy as np
import pytest

from qbohr.bohr import BohrParams, CoefficientClass, Monomial, UserSeries
from qbohr.errors import ClassViolation, DomainError
from qbohr.extremals import ExtremalSpec, Family, build
from qbohr.harness import (SCHEMA, Verdict, default_configurations, default_d_ladder,
                           load_config, params_from_config, sweep, verify)
from qbohr.quaternion import I_UNIT, ONE, sample_boundary
from qbohr.radii import L_condition
from qbohr.series import QSeries

REPORT_KEYS = {"schema", "theorem_id", "params", "radius", "grid", "max_value", "tail_bound",
               "witness", "verdict", "message"}


def test_verify_theorem_B():
    rep = verify("B", seed=3)
    assert rep.verdict is Verdict.CERTIFIED
    assert abs(rep.max_value["value"] - 1.0) <= 1e-9
    assert rep.max_value["r"] == pytest.approx(1 / 3, abs=1e-15)
    assert rep.witness["value"] > 1
    assert rep.grid["r_values"][-1] == rep.radius["value"]
    assert len(rep.grid["r_values"]) == 32 and rep.grid["samples"] == 256
    assert rep.grid["order"] == 2048


def test_verify_theorem_12_witness():
    rep = verify("1.2", seed=0)
    assert rep.verdict is Verdict.CERTIFIED
    r = rep.witness["r"]
    assert r == pytest.approx(0.51)
    assert rep.witness["value"] == pytest.approx(r + r * r / (1 - r), abs=1e-15)


def test_verify_theorem_16_inadmissible_is_inconclusive():
    rep = verify("1.6", BohrParams(1.0, (1.0, 0.01)), seed=0)
    assert rep.verdict is Verdict.INCONCLUSIVE
    assert "L(d) > m" in rep.message
    assert rep.max_value is None and rep.witness is None


@pytest.mark.parametrize("tid,m", [("1.1", 1.0), ("1.3", 1.0), ("1.4", 0.25), ("1.4", 2.0),
                                   ("1.5", 0.5), ("1.7", 1.0)])
def test_verify_certifies(tid, m):
    rep = verify(tid, BohrParams(m), seed=11, samples=64)
    assert rep.verdict is Verdict.CERTIFIED, rep.message
    assert rep.max_value["value"] + rep.tail_bound <= 1 + 1e-9


def test_verify_16_on_admissible_ladder():
    for d in default_d_ladder(0.5):
        assert L_condition(d, 0.5).value == pytest.approx(0.5, abs=1e-12)
        rep = verify("1.6", BohrParams(0.5, d), seed=1, samples=64)
        assert rep.verdict is Verdict.CERTIFIED, rep.message


def test_verify_with_user_weight():
    w1 = QSeries.from_quaternions([0, I_UNIT])
    w2 = QSeries.from_quaternions([0, 0, 0.5, 0.5])
    params = BohrParams(1.0, (), UserSeries((w1, w2), n_units=8, n_angles=16))
    rep = verify("1.4", params, seed=2, samples=32, n_radii=8)
    assert rep.verdict is Verdict.CERTIFIED
    assert rep.params["weight"]["family"] == "user_series"
    bad = BohrParams(1.0, (), UserSeries((QSeries.from_quaternions([0, 2.0]),)))
    with pytest.raises(ClassViolation):
        verify("1.4", bad, samples=8)


def test_verify_errors():
    with pytest.raises(DomainError):
        verify("2.0")
    with pytest.raises(DomainError):
        verify("1.5", BohrParams(1.5))


def test_theorem_aliases():
    assert verify("thmb", samples=4, n_radii=4).theorem_id == "B"
    assert verify("BS-Thm-1.3", BohrParams(1.0, (0.5,)), samples=4, n_radii=4).theorem_id == "1.6"


def test_reports_are_byte_identical():
    a = verify("1.5", BohrParams(0.5), seed=42).to_json()
    b = verify("1.5", BohrParams(0.5), seed=42).to_json()
    assert a == b
    c = verify("1.5", BohrParams(0.5), seed=43).to_json()
    assert c != a


def test_report_schema():
    data = json.loads(verify("1.4", BohrParams(0.5), seed=7, samples=16).to_json())
    assert set(data) == REPORT_KEYS
    assert data["schema"] == SCHEMA == 1
    assert data["verdict"] == "certified"
    assert set(data["params"]) >= {"m", "n", "d", "class"}
    assert set(data["grid"]) == {"r_values", "samples", "seed", "order"}


def test_default_configurations_cover_every_theorem():
    ids = {tid for tid, _ in default_configurations()}
    assert ids == {"B", "1.1", "1.2", "1.3", "1.4", "1.5", "1.6", "1.7"}
    for tid, p in default_configurations():
        if tid == "1.6":
            assert 1 <= p.N <= 3 and L_condition(p.d, p.m).admissible


# ---------------------------------------------------------------- sweep

def test_sweep_koebe_margins():
    grid = np.round(np.arange(0.1, 0.381, 0.01), 10)
    table = sweep(ExtremalSpec(Family.STARLIKE_KOEBE), "A", grid)
    margins = [row.margin for row in table.rows]
    assert all(m >= 0 for m in margins)
    assert all(b < a for a, b in zip(margins, margins[1:]))
    assert margins[-1] < 0.02
    last = sweep(ExtremalSpec(Family.STARLIKE_KOEBE), "A", [(3 - 5**0.5) / 2]).rows[0]
    assert abs(last.margin) <= 1e-12
    values = [row.value for row in table.rows]
    assert all(b >= a for a, b in zip(values, values[1:]))


def test_sweep_mobius_beyond_radius():
    table = sweep(ExtremalSpec(Family.MOBIUS_LIKE, 0.999), "K", [0.34], BohrParams(1.0))
    assert table.rows[0].margin < 0


def test_sweep_empty_and_invalid_grids():
    assert sweep(CoefficientClass.BOUNDED, "K", []).rows == []
    with pytest.raises(DomainError):
        sweep(CoefficientClass.BOUNDED, "K", [0.5, 1.0])
    with pytest.raises(DomainError):
        sweep(CoefficientClass.BOUNDED, "K", [0.3, 0.2])
    with pytest.raises(DomainError):
        sweep(CoefficientClass.BOUNDED, "K", [0.2, 0.2])


def test_sweep_class_supremum_matches_theorem():
    table = sweep("bounded", "K", [0.1, 0.2, 1 / 3], order=512)
    assert table.rows[-1].value == pytest.approx(1.0, abs=1e-3)
    assert all(row.value + row.tail <= 1 + 1e-9 for row in table.rows)
    table = sweep(CoefficientClass.STARLIKE, "sum", [0.2, (3 - 5**0.5) / 2], order=512)
    assert table.rows[-1].value == pytest.approx(1.0, abs=1e-12)


def test_sweep_series_target():
    f = build(ExtremalSpec(Family.MOBIUS_LIKE, 0.5, sample_boundary(0), 256))
    table = sweep(f, "sum", [1 / 3])
    assert table.rows[0].value == pytest.approx(0.8, abs=1e-12)


def test_csv_format(tmp_path):
    table = sweep(ExtremalSpec(Family.GEOM_CAYLEY, K=128), "B", [0.1, 0.3])
    out = tmp_path / "t.csv"
    text = table.to_csv(out)
    assert out.read_text() == text
    lines = text.splitlines()
    assert lines[0] == "r,value,tail,margin"
    fields = lines[2].split(",")
    assert fields[0] == "0.29999999999999999"
    assert float(fields[1]) == table.rows[1].value
    assert table.to_csv() == text


# ---------------------------------------------------------------- config

def test_config_roundtrip(tmp_path):
    cfg = {"theorem": "1.6", "m": 0.5, "n": 3, "d": [0.2],
           "weight": {"u": [0, 1, 0, 0]}, "series": [[0.5, 0, 0, 0], [0, 0.5, 0, 0]]}
    path = tmp_path / "c.json"
    path.write_text(json.dumps(cfg))
    data = load_config(path)
    params = params_from_config(data)
    assert params.m == 0.5 and params.d == (0.2, 0.0, 0.0) and params.N == 3
    assert params.weight == Monomial(I_UNIT)


def test_config_weight_forms():
    assert params_from_config({}).weight == Monomial(ONE)
    p = params_from_config({"weight": [[[0, 0, 0, 0], [1, 0, 0, 0]]]})
    assert isinstance(p.weight, UserSeries) and len(p.weight.series) == 1
    with pytest.raises(DomainError):
        params_from_config({"weight": 3})
    with pytest.raises(DomainError):
        params_from_config({"d": [1, 2], "n": 1})


def test_config_rejects_unknown_keys(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"theorm": "B"}))
    with pytest.raises(DomainError):
        load_config(path)
