import json

import numpy as np
import pytest

from artinpp.algebra import a2, a3, dual_numbers, field_algebra, gf4, monogenic, split_monogenic, truncated_polynomial
from artinpp.dsl import parse_pp
from artinpp.jsonio import (
    FormatError,
    algebra_from_dict,
    algebra_to_dict,
    dumps,
    formula_from_dict,
    formula_to_dict,
    load_algebra,
    load_module,
    map_from_dict,
    map_to_dict,
    module_from_dict,
    module_to_dict,
    save_algebra,
    save_module,
)
from artinpp.modules import RIGHT, dual_module, free_module, hom_space, interval_module


@pytest.mark.parametrize(
    "alg",
    [field_algebra(3), dual_numbers(), gf4(), truncated_polynomial(3), a2(), a3(zero_relation=True), split_monogenic(), monogenic([1, 1, 0])],
    ids=repr,
)
def test_algebra_roundtrip_is_byte_exact(alg, tmp_path):
    path = tmp_path / "alg.json"
    save_algebra(alg, path)
    back = load_algebra(path)
    assert back == alg
    assert back.has_radical == alg.has_radical
    assert dumps(algebra_to_dict(back)) == path.read_text()


def test_module_roundtrip(tmp_path):
    alg = a3()
    m = dual_module(interval_module(alg, 0, 2))
    path = tmp_path / "m.json"
    save_module(m, path)
    back = load_module(path, alg)
    assert back.side == RIGHT and np.array_equal(back.action, m.action)
    assert dumps(module_to_dict(back)) == path.read_text()


def test_map_and_formula_roundtrip(dn):
    r = free_module(dn)
    f = hom_space(r, r).basis[1]
    assert np.array_equal(map_from_dict(map_to_dict(f), r, r).matrix, f.matrix)
    phi = parse_pp("E y. x1 = eps*y", dn)
    data = json.loads(dumps(formula_to_dict(phi)))
    assert formula_from_dict(data, dn).same_matrices(phi)
    assert data["text"] == str(phi)


def test_algebra_errors():
    with pytest.raises(FormatError, match="kind"):
        algebra_from_dict({"p": 2, "kind": "magic"})
    with pytest.raises(FormatError, match="missing field 'structconst'"):
        algebra_from_dict({"p": 2, "kind": "structconst"})
    with pytest.raises(FormatError, match="associative"):
        algebra_from_dict({"p": 2, "kind": "structconst", "structconst": [[[1, 0], [0, 1]], [[0, 0], [1, 0]]]})
    with pytest.raises(FormatError, match="p = 3"):
        algebra_from_dict(algebra_to_dict(a2()), p=3)
    with pytest.raises(FormatError, match="'p'"):
        algebra_from_dict({"kind": "quiver", "vertices": 1})
    with pytest.raises(FormatError, match="shape"):
        algebra_from_dict({"p": 2, "kind": "structconst", "dim": 2, "structconst": [[[1]]]})
    with pytest.raises(FormatError):
        algebra_from_dict([1, 2])


def test_module_errors(dn):
    with pytest.raises(FormatError, match="side"):
        module_from_dict({"side": "up", "dim": 1, "action": [[[1]], [[0]]]}, dn)
    with pytest.raises(FormatError, match="shape"):
        module_from_dict({"dim": 1, "action": [[[1]]]}, dn)
    with pytest.raises(FormatError, match="entries"):
        module_from_dict({"dim": 1, "action": [[[1]], [[2]]]}, dn)
    with pytest.raises(FormatError, match="product"):
        module_from_dict({"dim": 1, "action": [[[1]], [[1]]]}, dn)
    with pytest.raises(FormatError, match="missing field 'dim'"):
        module_from_dict({"action": []}, dn)
    assert module_from_dict({"dim": 0, "action": []}, dn).dim == 0


def test_file_errors_name_the_path(tmp_path, dn):
    bad = tmp_path / "bad.json"
    bad.write_text("{\n  \"p\": 2,\n")
    with pytest.raises(FormatError, match="line") as info:
        load_algebra(bad)
    assert info.value.source == str(bad)
    with pytest.raises(FormatError) as info:
        load_algebra(tmp_path / "missing.json")
    assert "missing.json" in str(info.value)
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"dim": 1, "action": [[[1]], [[1]]]}))
    with pytest.raises(FormatError) as info:
        load_module(wrong, dn)
    assert str(wrong) in str(info.value)
