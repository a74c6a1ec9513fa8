import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import fixture
from lieq import io
from lieq import constructions as C
from lieq.contact import ContactElement, contact_element_to_pencil
from lieq.exceptions import InputError
from lieq.legendre import SampledHypersurface, legendre_lift_hypersurface
from lieq.spheres import ImproperPoint, LieCoord, Plane, ProperPoint, Sphere, SphericalSphere
from lieq.transforms import random_lie_transform


@given(st.floats(allow_nan=False, allow_infinity=True, width=64))
def test_floats_round_trip_exactly(x):
    back = io.loads(io.dumps({"x": x}))["x"]
    assert back == x


def test_seventeen_significant_digits():
    text = io.dumps({"x": 0.1})
    assert "0.10000000000000001" in text
    assert io.dumps({"x": 2.0}).strip().endswith("2.0\n}")


def test_nonfinite_values():
    doc = io.loads(io.dumps({"a": [np.inf, -np.inf, np.nan]}))
    assert doc["a"][0] == np.inf and doc["a"][1] == -np.inf and np.isnan(doc["a"][2])


def test_dumps_is_deterministic_and_valid_json():
    doc = {"b": np.arange(3.0), "a": {"flag": np.bool_(True), "k": np.int64(3)}, "s": "x"}
    text = io.dumps(doc)
    assert text == io.dumps(doc)
    parsed = json.loads(text)
    assert parsed["a"] == {"flag": True, "k": 3}
    with pytest.raises(InputError):
        io.dumps({"bad": object()})


def test_malformed_input():
    with pytest.raises(InputError):
        io.loads("{not json")
    with pytest.raises(InputError):
        io.sphere_from_dict({"model": "euclidean"})
    with pytest.raises(InputError):
        io.sphere_from_dict({"model": "hyperbolic"})
    with pytest.raises(InputError):
        io.transform_from_dict({"n": 3, "matrix": [1.0, 2.0]})
    with pytest.raises(InputError):
        io.read("/nonexistent/file.json")
    with pytest.raises(InputError):
        io.load_lift({"schema": "pencil"})


@pytest.mark.parametrize("obj", [
    Sphere(np.array([1.0, 2.0, 3.0]), -0.5),
    ProperPoint(np.array([0.25, 0.0, -1.0])),
    Plane(np.array([0.0, 0.6, 0.8]), 1.5),
    ImproperPoint(3),
    SphericalSphere(np.array([0.0, 0.0, 0.6, 0.8]), 0.3),
    LieCoord(np.array([1.0, 0.0, 1.0, 0.0, 0.0, 0.0])),
])
def test_sphere_documents_round_trip(obj):
    doc = io.sphere_to_dict(obj)
    text = io.dumps(doc)
    back = io.sphere_from_dict(io.loads(text))
    assert type(back) is type(obj)
    assert io.dumps(io.sphere_to_dict(back)) == text


def test_spheres_from_items():
    docs = {"items": [io.sphere_to_dict(Sphere(np.zeros(3), 1.0)), io.sphere_to_dict(ImproperPoint(3))]}
    items = io.spheres_from_doc(io.loads(io.dumps(docs)))
    assert isinstance(items[0], Sphere) and isinstance(items[1], ImproperPoint)


def test_pencil_and_transform_round_trip():
    line = contact_element_to_pencil(ContactElement(np.array([1.0, 0, 0, 0]), np.array([0, 1.0, 0, 0])))
    text = io.dumps(io.pencil_to_dict(line))
    assert io.pencil_from_dict(io.loads(text)) == line
    B = random_lie_transform(3, 3)
    text = io.dumps(io.transform_to_dict(B))
    assert np.array_equal(io.transform_from_dict(io.loads(text)).matrix, B.matrix)


def test_hypersurface_with_recipe_round_trip(tmp_path):
    h = fixture("cone").h
    path = tmp_path / "h.json"
    io.write(path, io.hypersurface_to_dict(h))
    doc = io.read(path)
    assert "derivatives" not in doc and doc["construction"]["variant"] == "cone"
    back = io.hypersurface_from_dict(doc)
    assert back.evaluator is not None
    assert np.array_equal(back.f, h.f)
    assert io.dumps(io.hypersurface_to_dict(back)) == path.read_text()


def test_hypersurface_recipe_mismatch_is_rejected():
    doc = io.loads(io.dumps(io.hypersurface_to_dict(C.clifford_torus((8, 5)))))
    doc["f"][0] += 1e-3
    with pytest.raises(InputError):
        io.hypersurface_from_dict(doc)


def test_hypersurface_without_recipe_keeps_derivatives():
    h = C.clifford_torus((8, 5))
    raw = SampledHypersurface(h.grid, h.f, h.xi, h.df, h.dxi, "spherical")
    doc = io.loads(io.dumps(io.hypersurface_to_dict(raw)))
    assert "derivatives" in doc
    back = io.hypersurface_from_dict(doc)
    assert np.array_equal(back.df, h.df)
    assert back.evaluator is None


def test_legendre_history_round_trip():
    lift = fixture("clifford").lift.transformed(random_lie_transform(4, 3).matrix)
    doc = io.legendre_to_dict(lift)
    assert len(doc["history"]) == 1
    text = io.dumps(doc)
    back = io.legendre_from_dict(io.loads(text))
    assert np.array_equal(back.Z1, lift.Z1) and np.array_equal(back.Z2, lift.Z2)
    assert io.dumps(io.legendre_to_dict(back)) == text


def test_legendre_without_recipe():
    lift = legendre_lift_hypersurface(SampledHypersurface(*(lambda h: (h.grid, h.f, h.xi, h.df, h.dxi))(
        C.clifford_torus((8, 5))), "spherical"))
    doc = io.loads(io.dumps(io.legendre_to_dict(lift)))
    back = io.legendre_from_dict(doc)
    assert np.array_equal(back.Z1, lift.Z1) and np.array_equal(back.dZ2, lift.dZ2)


def test_load_lift_accepts_both_schemas():
    h = C.clifford_torus((8, 5))
    a = io.load_lift(io.loads(io.dumps(io.hypersurface_to_dict(h))))
    b = io.load_lift(io.loads(io.dumps(io.legendre_to_dict(legendre_lift_hypersurface(h)))))
    assert np.array_equal(a.Z1, b.Z1)
