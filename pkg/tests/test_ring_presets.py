"""Preset cohomology rings against independently frozen structure tables."""

from fractions import Fraction

import pytest

from ellfib.cohomology.ring import (
    BigradedRing,
    PRESET_NAMES,
    load_preset,
    ring_from_dict,
    ring_to_dict,
    ring_validate,
)
from ellfib.errors import SchemaError
from ellfib.linalg import exact_rank

KODAIRA_BASIS = {
    (0, 0): ("one",),
    (1, 0): ("f1",),
    (0, 1): ("F1", "F2"),
    (2, 0): ("n1",),
    (1, 1): ("A", "B"),
    (0, 2): ("FF",),
    (2, 1): ("G1", "G2"),
    (1, 2): ("H1",),
    (2, 2): ("T",),
}

# every nonzero product among non-unit labels, both orders, frozen by hand
KODAIRA_PRODUCTS = {
    ("f1", "F2"): {"A": 1},
    ("F2", "f1"): {"A": -1},
    ("f1", "B"): {"G1": 1},
    ("B", "f1"): {"G1": 1},
    ("f1", "H1"): {"T": 1},
    ("H1", "f1"): {"T": -1},
    ("F1", "F2"): {"FF": 1},
    ("F2", "F1"): {"FF": -1},
    ("F1", "n1"): {"G1": 1},
    ("n1", "F1"): {"G1": 1},
    ("F2", "n1"): {"G2": 1},
    ("n1", "F2"): {"G2": 1},
    ("F2", "B"): {"H1": 1},
    ("B", "F2"): {"H1": 1},
    ("F1", "G2"): {"T": 1},
    ("G2", "F1"): {"T": -1},
    ("F2", "G1"): {"T": -1},
    ("G1", "F2"): {"T": 1},
    ("n1", "FF"): {"T": 1},
    ("FF", "n1"): {"T": 1},
    ("A", "B"): {"T": 1},
    ("B", "A"): {"T": 1},
}

KODAIRA_CONJ = {
    "one": {"one": 1},
    "f1": {"F1": 1},
    "F1": {"f1": 1},
    "F2": {},
    "n1": {"FF": 1},
    "FF": {"n1": 1},
    "A": {"B": -1},
    "B": {"A": -1},
    "G1": {},
    "G2": {"H1": 1},
    "H1": {"G2": 1},
    "T": {"T": 1},
}

KODAIRA_IDENT = {
    "one": "one",
    "f1": "m1",
    "F1": "m2",
    "F2": "m3",
    "n1": "n1",
    "A": "n2",
    "B": "n3",
    "FF": "n4",
    "G1": "p1",
    "G2": "p2",
    "H1": "p3",
    "T": "v",
}

KODAIRA_DR_BASIS = {
    0: ("one",),
    1: ("m1", "m2", "m3"),
    2: ("n1", "n2", "n3", "n4"),
    3: ("p1", "p2", "p3"),
    4: ("v",),
}

KODAIRA_DR_PRODUCTS = {
    ("m1", "m3"): {"n1": 1, "n2": 1},
    ("m3", "m1"): {"n1": -1, "n2": -1},
    ("m2", "m3"): {"n3": -1, "n4": 1},
    ("m3", "m2"): {"n3": 1, "n4": -1},
    ("m1", "n3"): {"p1": 1},
    ("n3", "m1"): {"p1": 1},
    ("m1", "n4"): {"p1": 1},
    ("n4", "m1"): {"p1": 1},
    ("m2", "n1"): {"p1": 1},
    ("n1", "m2"): {"p1": 1},
    ("m2", "n2"): {"p1": -1},
    ("n2", "m2"): {"p1": -1},
    ("m3", "n1"): {"p2": 1},
    ("n1", "m3"): {"p2": 1},
    ("m3", "n2"): {"p2": -1},
    ("n2", "m3"): {"p2": -1},
    ("m3", "n3"): {"p3": 1},
    ("n3", "m3"): {"p3": 1},
    ("m3", "n4"): {"p3": 1},
    ("n4", "m3"): {"p3": 1},
    ("m1", "p3"): {"v": 1},
    ("p3", "m1"): {"v": -1},
    ("m2", "p2"): {"v": 1},
    ("p2", "m2"): {"v": -1},
    ("m3", "p1"): {"v": -1},
    ("p1", "m3"): {"v": 1},
    ("n1", "n4"): {"v": 1},
    ("n4", "n1"): {"v": 1},
    ("n2", "n3"): {"v": 1},
    ("n3", "n2"): {"v": 1},
}


def as_fracs(vec) -> dict[str, Fraction]:
    return {k: Fraction(v) for k, v in vec.items()}


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_presets_satisfy_every_ring_law(name):
    assert ring_validate(load_preset(name)) == ()


def test_load_preset_rejects_unknown_names():
    with pytest.raises(SchemaError):
        load_preset("zz")


def test_kodaira_basis_and_dims():
    ring = load_preset("kodaira")
    for pq, labels in KODAIRA_BASIS.items():
        assert ring.labels(*pq) == labels
    assert ring.degree_labels(2) == ["n1", "A", "B", "FF"]
    assert ring.h2_blocks() == [(2, 0), (1, 1), (0, 2)]
    assert [ring.dr_dim(k) for k in range(5)] == [1, 3, 4, 3, 1]
    for k, labels in KODAIRA_DR_BASIS.items():
        assert tuple(ring.dr_basis[k]) == labels


def test_kodaira_full_bigraded_product_table():
    ring = load_preset("kodaira")
    labels = [x for labels in KODAIRA_BASIS.values() for x in labels]
    for x in labels:
        for y in labels:
            if x == "one" or y == "one":
                other = y if x == "one" else x
                expected = {other: Fraction(1)}
            else:
                expected = as_fracs(KODAIRA_PRODUCTS.get((x, y), {}))
            assert ring.cup(x, y) == expected, f"cup({x}, {y})"


def test_kodaira_full_derham_product_table():
    ring = load_preset("kodaira")
    labels = [x for labels in KODAIRA_DR_BASIS.values() for x in labels]
    for x in labels:
        for y in labels:
            if x == "one" or y == "one":
                other = y if x == "one" else x
                expected = {other: Fraction(1)}
            else:
                expected = as_fracs(KODAIRA_DR_PRODUCTS.get((x, y), {}))
            assert ring.dr_cup(x, y) == expected, f"dr_cup({x}, {y})"


def test_kodaira_conjugation_table():
    ring = load_preset("kodaira")
    for x, vec in KODAIRA_CONJ.items():
        assert ring.conj[x] == as_fracs(vec), f"conj({x})"


def test_kodaira_identification_table():
    ring = load_preset("kodaira")
    for x, target in KODAIRA_IDENT.items():
        assert ring.ident[x] == {target: Fraction(1)}, f"ident({x})"


def test_kodaira_to_derham_uses_the_identification():
    ring = load_preset("kodaira")
    vec = ring.to_derham(2, [1, 2, 3, 4])
    assert vec == [Fraction(1), Fraction(2), Fraction(3), Fraction(4)]
    with pytest.raises(SchemaError):
        ring.to_derham(2, [1, 2, 3])


def test_kodaira_conj_matrix_shapes():
    ring = load_preset("kodaira")
    # (1,0) -> (0,1): one column, rows F1, F2
    assert ring.conj_matrix(1, 0) == [[Fraction(1)], [Fraction(0)]]
    # (1,1) -> (1,1): A -> -B, B -> -A
    assert ring.conj_matrix(1, 1) == [
        [Fraction(0), Fraction(-1)],
        [Fraction(-1), Fraction(0)],
    ]


def test_torus4_bidegrees_and_dims():
    ring = load_preset("torus4")
    assert ring.labels(1, 0) == ("e1", "e2")
    assert ring.labels(0, 1) == ("e3", "e4")
    assert ring.labels(2, 0) == ("e12",)
    assert ring.labels(1, 1) == ("e13", "e14", "e23", "e24")
    assert ring.labels(0, 2) == ("e34",)
    assert ring.labels(2, 2) == ("e1234",)
    assert [ring.dr_dim(k) for k in range(5)] == [1, 4, 6, 4, 1]


def test_torus4_wedge_signs():
    ring = load_preset("torus4")
    assert ring.cup("e1", "e2") == {"e12": Fraction(1)}
    assert ring.cup("e2", "e1") == {"e12": Fraction(-1)}
    assert ring.cup("e13", "e24") == {"e1234": Fraction(-1)}
    assert ring.cup("e1", "e1") == {}
    assert ring.cup("e12", "e34") == {"e1234": Fraction(1)}
    assert ring.dr_cup("e1", "e234") == {"e1234": Fraction(1)}
    assert ring.dr_cup("e2", "e134") == {"e1234": Fraction(-1)}


def test_torus4_conjugation_swaps_generator_pairs():
    ring = load_preset("torus4")
    assert ring.conj["e1"] == {"e3": Fraction(1)}
    assert ring.conj["e3"] == {"e1": Fraction(1)}
    assert ring.conj["e13"] == {"e13": Fraction(-1)}
    assert ring.conj["e14"] == {"e23": Fraction(-1)}
    # involution on the (1,1) block
    conj2 = {}
    for x in ring.labels(1, 1):
        acc = {}
        for mid, c in ring.conj[x].items():
            for z, d in ring.conj[mid].items():
                acc[z] = acc.get(z, Fraction(0)) + c * d
        conj2[x] = {z: v for z, v in acc.items() if v}
    assert conj2 == {x: {x: Fraction(1)} for x in ring.labels(1, 1)}


def test_torus4_identification_is_by_name():
    ring = load_preset("torus4")
    for label in ring._degree_of:
        assert ring.ident[label] == {label: Fraction(1)}


def test_k3_shape_and_products():
    ring = load_preset("k3")
    assert ring.labels(2, 0) == ("sg",)
    assert ring.labels(0, 2) == ("sgb",)
    assert ring.dim(1, 1) == 20
    assert ring.dim(1, 0) == 0 and ring.dim(0, 1) == 0
    assert [ring.dr_dim(k) for k in range(5)] == [1, 0, 22, 0, 1]
    assert ring.cup("sg", "sgb") == {"top": Fraction(1)}
    assert ring.cup("sgb", "sg") == {"top": Fraction(1)}
    assert ring.cup("sg", "sg") == {}
    assert ring.cup("w1", "w2") == {"top": Fraction(1)}
    assert ring.cup("w2", "w1") == {"top": Fraction(1)}
    assert ring.cup("w1", "w3") == {}
    assert ring.conj["sg"] == {"sgb": Fraction(1)}
    assert ring.conj["w7"] == {"w7": Fraction(1)}


def test_k3_intersection_pairing_is_nondegenerate():
    ring = load_preset("k3")
    labels = ring.degree_labels(2)
    assert len(labels) == 22
    matrix = [
        [ring.cup(x, y).get("top", Fraction(0)) for y in labels] for x in labels
    ]
    assert exact_rank(matrix) == 22


def test_ring_dict_round_trip():
    for name in PRESET_NAMES:
        ring = load_preset(name)
        clone = ring_from_dict(ring_to_dict(ring))
        assert clone.basis == ring.basis
        assert clone.dr_basis == ring.dr_basis
        assert {k: v for k, v in clone.products.items() if v} == {
            k: v for k, v in ring.products.items() if v
        }
        assert {k: v for k, v in clone.dr_products.items() if v} == {
            k: v for k, v in ring.dr_products.items() if v
        }
        assert clone.conj == ring.conj
        assert clone.ident == ring.ident


def test_ring_from_dict_rejects_missing_sections():
    with pytest.raises(SchemaError):
        ring_from_dict({"name": "x"})


def test_validate_flags_broken_commutativity():
    ring = BigradedRing(
        "broken",
        basis={(0, 0): ["one"], (1, 0): ["x"], (0, 1): ["y"], (1, 1): ["t"], (2, 2): ["top"]},
        products={
            ("one", "one"): {"one": 1},
            ("one", "x"): {"x": 1},
            ("x", "one"): {"x": 1},
            ("one", "y"): {"y": 1},
            ("y", "one"): {"y": 1},
            ("one", "t"): {"t": 1},
            ("t", "one"): {"t": 1},
            ("one", "top"): {"top": 1},
            ("top", "one"): {"top": 1},
            ("x", "y"): {"t": 1},
            ("y", "x"): {"t": 1},
        },
        conj={"one": {"one": 1}, "x": {"y": 1}, "y": {"x": 1}, "t": {"t": 1}, "top": {"top": 1}},
        dr_basis={0: ["o"], 1: ["a", "b"], 2: ["c"], 4: ["z"]},
        dr_products={
            ("o", "o"): {"o": 1},
            ("o", "a"): {"a": 1},
            ("a", "o"): {"a": 1},
            ("o", "b"): {"b": 1},
            ("b", "o"): {"b": 1},
            ("o", "c"): {"c": 1},
            ("c", "o"): {"c": 1},
            ("o", "z"): {"z": 1},
            ("z", "o"): {"z": 1},
            ("a", "b"): {"c": 1},
            ("b", "a"): {"c": -1},
        },
        ident={"one": {"o": 1}, "x": {"a": 1}, "y": {"b": 1}, "t": {"c": 1}, "top": {"z": 1}},
    )
    report = ring_validate(ring)
    assert any("commutativity" in line for line in report)
