import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given

from conftest import seeds
from qmawtc.channels import MacLaw, PpLaw, QbcLaw, QbcPairLaw, mawtc_to_ppqwtc, random_mac_law, random_mawtc, random_qbc
from qmawtc.params import SmoothingParams
from qmawtc.specfile import (
    SpecError,
    dumps_spec,
    loads_spec,
    read_spec,
    spec_for,
    spec_to_dict,
    write_spec,
)

SPECS = Path(__file__).resolve().parents[1] / "scripts" / "specs"


def same_spec(a, b):
    assert a.kind == b.kind
    assert np.array_equal(a.channel.outputs, b.channel.outputs)
    assert spec_to_dict(a) == spec_to_dict(b)


@given(seeds)
def test_mac_round_trip(seed):
    rng = np.random.default_rng(seed)
    spec = spec_for(random_mawtc(rng), random_mac_law(rng, nq=2), SmoothingParams(eps=0.1, o1=0.5))
    back = loads_spec(dumps_spec(spec))
    same_spec(spec, back)
    assert np.array_equal(back.law.joint(), spec.law.joint())
    assert back.params == spec.params


@given(seeds)
def test_pp_and_qbc_round_trip(seed):
    rng = np.random.default_rng(seed)
    pp = spec_for(mawtc_to_ppqwtc(random_mawtc(rng)), PpLaw.uniform(2, 2))
    same_spec(pp, loads_spec(dumps_spec(pp)))
    q = spec_for(random_qbc(rng, 4), QbcPairLaw([1.0], [[0.5, 0.5]], [[[0.5, 0.5], [0.1, 0.9]]]))
    same_spec(q, loads_spec(dumps_spec(q)))
    q2 = spec_for(random_qbc(rng, 2), QbcLaw([0.5, 0.5], [[1, 0], [0.3, 0.7]]))
    same_spec(q2, loads_spec(dumps_spec(q2)))


def test_file_round_trip(tmp_path, rng):
    spec = spec_for(random_mawtc(rng), None)
    write_spec(spec, tmp_path / "s.json")
    back = read_spec(tmp_path / "s.json")
    same_spec(spec, back)
    law = back.resolved_law()
    assert isinstance(law, MacLaw) and np.allclose(law.joint(), 0.25)


@pytest.mark.parametrize("path", sorted(SPECS.glob("*.json")), ids=lambda p: p.stem)
def test_bundled_examples_load(path):
    spec = read_spec(path)
    assert spec.kind in ("mawtc", "ppqwtc", "qbc")


def base_dict(rng):
    return spec_to_dict(spec_for(random_mawtc(rng), MacLaw.uniform(2, 2)))


@pytest.mark.parametrize(
    "mutate, where",
    [
        (lambda d: d.pop("kind"), "kind"),
        (lambda d: d.update(kind="mimo"), "kind"),
        (lambda d: d.update(schema_version=7), "schema_version"),
        (lambda d: d.update(extra=1), "<root>"),
        (lambda d: d["outputs"].pop(), "outputs"),
        (lambda d: d.update(encoding=[[0, 1], [2, 3]]), "encoding"),
    ],
)
def test_validation_errors_locate_field(rng, mutate, where):
    d = base_dict(rng)
    mutate(d)
    with pytest.raises(SpecError) as exc:
        loads_spec(json.dumps(d))
    assert exc.value.where == where


def test_bad_matrix_and_law_rejected(rng):
    d = base_dict(rng)
    d["outputs"][0][0] = [5.0, 0.0]
    with pytest.raises((SpecError, ValueError)):
        loads_spec(json.dumps(d))
    d = base_dict(rng)
    d["law"] = {"p_x1": [0.5, 0.6], "p_x2": [0.5, 0.5]}
    with pytest.raises((SpecError, ValueError)):
        loads_spec(json.dumps(d))


def test_json_syntax_error_reports_position():
    with pytest.raises(SpecError) as exc:
        loads_spec('{"kind": "mawtc",\n  oops}')
    assert exc.value.where.startswith("line 2 column")
