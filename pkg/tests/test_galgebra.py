import json
from fractions import Fraction

import pytest

from toroidal.galgebra import (AlgebraDescriptorError, GModule, abelian, algebra_from_dict,
                               algebra_to_dict, load_algebra, make_algebra, sl2)


def test_sl2_structure(g_sl2):
    e, f, h = 0, 1, 2
    assert g_sl2.bracket(e, f) == {h: 1}
    assert g_sl2.bracket(h, e) == {e: 2}
    assert g_sl2.bracket(f, e) == {h: -1}
    assert g_sl2.form(h, h) == 2 and g_sl2.form(e, f) == 1
    assert g_sl2.module.dim == 2


def test_abelian_defaults(g_abelian):
    assert g_abelian.dim == 1
    assert g_abelian.form(0, 0) == 1
    assert g_abelian.module.act(0, 0) == {}


def test_descriptor_roundtrip(tmp_path):
    data = algebra_to_dict(sl2())
    path = tmp_path / "sl2.json"
    path.write_text(json.dumps(data))
    loaded = load_algebra(path)
    assert loaded == sl2()
    assert load_algebra("abelian") == abelian()
    assert algebra_from_dict(data).module == sl2().module


def test_noninvariant_form_is_rejected():
    with pytest.raises(AlgebraDescriptorError):
        make_algebra("bad", ["e", "f", "h"], [[0, 1, 2, 1], [2, 0, 0, 2], [2, 1, 1, -2]],
                     [[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_jacobi_violation_is_rejected():
    # [x, y] = x, [x, z] = y: the Jacobi sum on (x, y, z) is -y
    with pytest.raises(AlgebraDescriptorError):
        make_algebra("bad", ["x", "y", "z"], [[0, 1, 0, 1], [0, 2, 1, 1]], [[0] * 3] * 3)


def test_module_must_represent_the_algebra():
    with pytest.raises(AlgebraDescriptorError):
        sl2().with_module(GModule(2, tuple(
            tuple(tuple(Fraction(x) for x in row) for row in m)
            for m in ([[0, 1], [0, 0]], [[0, 0], [1, 0]], [[1, 0], [0, 1]]))))


def test_missing_field_is_reported():
    with pytest.raises(AlgebraDescriptorError):
        algebra_from_dict({"basis": ["u"]})
