import json
import subprocess
import os

import pytest

eps0 = pytest.importorskip("eps0")

QUAD = json.dumps({"field": "padic:p=3,f=1", "cond": 1, "unit_exps": [1]})


def test_quadratic_gauss_sum():
    rec = eps0.compute(QUAD)
    assert rec["is_unit"] is True
    assert rec["norm"] == "3"
    # 1 + 2*zeta_3, expressed at level 6 as -1 + 2*zeta_6
    assert rec["value"]["level"] == 6
    assert rec["value"]["coeffs"] == ["-1", "2"]
    assert rec["value_str"] == "-1 + 2*z6"
    assert rec["gamma_valuation"] == 1


def test_engine_matches_oracle():
    rec = eps0.compute(QUAD)
    oracle = eps0.oracle_value(QUAD)
    assert rec["value"] == oracle


def test_trivial_character_value():
    triv = json.dumps({"field": "padic:p=3,f=1", "cond": 0})
    rec = eps0.compute(triv)
    assert rec["value_str"] == "-1"
    coeffs = rec["epsilon_full"]["coeffs"]
    assert coeffs[0] == "1" and all(c == "0" for c in coeffs[1:])


def test_bad_input_raises():
    with pytest.raises(eps0.InputError):
        eps0.compute(json.dumps({"field": "padic:p=4,f=1"}))
    with pytest.raises(eps0.InputError):
        eps0.compute(QUAD, vol_json="6")  # 6 is not a unit of Z[1/3]


def test_virtual_representation():
    vrep = json.dumps(
        [{"coef": 1, "atom": {"f": 2, "char": {"field": "padic:p=3,f=2", "cond": 0}}}]
    )
    rec = eps0.compute_virtual(vrep)
    assert rec["rank"] == 2
    assert rec["is_unit"] is True
    assert rec["value_str"] == "-1"  # eps0(1) * eps0(eta) = (-1) * 1


def test_verify_swan_suite():
    rep = eps0.verify("swan")
    assert rep["failures"] == 0
    assert rep["total"] >= 4


def test_table_row_count():
    csv = eps0.table("padic:p=3,f=1", max_cond=2)
    rows = [line for line in csv.strip().splitlines() if line]
    assert len(rows) == 7  # header + 6 characters of (Z/9)^x


def test_swan_pairings_are_conductors():
    rec = eps0.swan(p=3, n=2)
    assert rec["group_order"] == 6
    pairings = {(c["artin_pairing"], c["swan_pairing"]) for c in rec["characters"]}
    assert ("2", "1") in pairings  # wild characters of conductor 9
    assert ("1", "0") in pairings  # the tame quadratic
    assert ("0", "0") in pairings  # trivial


def test_reduce_commutes():
    rec = eps0.reduce(QUAD, l=7)
    assert rec["agree"] is True


def test_determinism_across_calls():
    a = eps0.compute(QUAD)
    b = eps0.compute(QUAD)
    assert a == b


def test_cli_available_if_exported():
    cli = os.environ.get("EPS0_CLI")
    if not cli:
        pytest.skip("CLI path not exported")
    out = subprocess.run(
        [cli, "compute", "--char", QUAD], capture_output=True, text=True, check=True
    )
    rec = json.loads(out.stdout)
    assert rec["norm"] == "3"
