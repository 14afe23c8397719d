#!/usr/bin/env python3
"""Build the three base-surface ring presets from first principles.

kodaira and torus4 come from invariant-form models: an exterior algebra
on four 1-form generators with declared structure differentials, from
which both cohomology towers, all products, the conjugation, and the
degreewise identification are computed by exact rational linear algebra
(kernels modulo images, coset representatives, reduction of wedge
products).  k3 is assembled directly from its classical Hodge numbers
and hyperbolic intersection pairing.  Every emitted ring must pass
ring_validate and reproduce the expected dimension tables, or the
script refuses to write it.

Run from the repository root:  python tools/make_presets.py
"""

from __future__ import annotations

import itertools
import os
import sys
from fractions import Fraction
from math import comb

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "src"))

from ellfib.cohomology.ring import ring_from_dict, ring_to_dict, ring_validate
from ellfib.linalg import exact_rank, solve_fractions
from ellfib.serialize import canonical_json

Mono = tuple[int, ...]
Form = dict[Mono, Fraction]


def wedge_mono(a: Mono, b: Mono) -> tuple[int, Mono] | None:
    if set(a) & set(b):
        return None
    lst = list(a + b)
    sign = 1
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(lst)


def acc(out: Form, mono: Mono, c: Fraction) -> None:
    n = out.get(mono, Fraction(0)) + c
    if n:
        out[mono] = n
    else:
        out.pop(mono, None)


def wedge(f: Form, g: Form) -> Form:
    out: Form = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            hit = wedge_mono(m1, m2)
            if hit is None:
                continue
            s, m = hit
            acc(out, m, c1 * c2 * s)
    return out


def unit(mono: Mono) -> Form:
    return {tuple(mono): Fraction(1)}


class ExteriorModel:
    """Exterior algebra on 1-form generators with a declared differential.

    gen_types lists the bidegree of each generator, (1, 0) or (0, 1);
    dgen maps a generator index to the 2-form it differentiates to;
    conj_of pairs each generator with its conjugate partner.
    """

    def __init__(self, gen_types, dgen, conj_of):
        self.types = list(gen_types)
        self.dgen = {i: dict(f) for i, f in dgen.items()}
        self.conj_of = dict(conj_of)
        self.count = len(self.types)

    def bidegree(self, mono: Mono) -> tuple[int, int]:
        p = sum(self.types[i][0] for i in mono)
        q = sum(self.types[i][1] for i in mono)
        return p, q

    def monos_pq(self, p: int, q: int) -> list[Mono]:
        return [
            mono
            for r in range(self.count + 1)
            for mono in itertools.combinations(range(self.count), r)
            if self.bidegree(mono) == (p, q)
        ]

    def monos_k(self, k: int) -> list[Mono]:
        return list(itertools.combinations(range(self.count), k))

    def d_form(self, form: Form) -> Form:
        out: Form = {}
        for mono, coeff in form.items():
            for t, idx in enumerate(mono):
                piece = self.dgen.get(idx)
                if not piece:
                    continue
                sign_t = -1 if t % 2 else 1
                prefix, suffix = mono[:t], mono[t + 1:]
                for dmono, dcoeff in piece.items():
                    first = wedge_mono(prefix, dmono)
                    if first is None:
                        continue
                    s1, m1 = first
                    second = wedge_mono(m1, suffix)
                    if second is None:
                        continue
                    s2, m2 = second
                    acc(out, m2, coeff * dcoeff * sign_t * s1 * s2)
        return out

    def dbar_form(self, form: Form) -> Form:
        """(0,1) part of d on a pure-bidegree form."""
        degrees = {self.bidegree(m) for m in form}
        if not degrees:
            return {}
        if len(degrees) != 1:
            raise AssertionError("dbar needs a pure bidegree")
        p, q = degrees.pop()
        return {
            m: c for m, c in self.d_form(form).items() if self.bidegree(m) == (p, q + 1)
        }

    def conj_form(self, form: Form) -> Form:
        out: Form = {}
        for mono, coeff in form.items():
            swapped = tuple(self.conj_of[i] for i in mono)
            hit = wedge_mono(swapped, ())
            if hit is None:
                raise AssertionError("conjugation collided")
            s, m = hit
            acc(out, m, coeff * s)
        return out


def vec_of(form: Form, monos: list[Mono]) -> list[Fraction]:
    extra = set(form) - set(monos)
    if extra:
        raise AssertionError(f"form leaves the block: {sorted(extra)}")
    return [form.get(m, Fraction(0)) for m in monos]


def class_coords(form: Form, reps: list[Form], images: list[Form], monos: list[Mono]):
    """Coordinates of a closed form in the chosen representative basis."""
    if not monos:
        if form:
            raise AssertionError("nonzero form in an empty block")
        return [Fraction(0)] * len(reps)
    columns = [vec_of(r, monos) for r in reps] + [vec_of(im, monos) for im in images]
    matrix = [[col[i] for col in columns] for i in range(len(monos))]
    b = vec_of(form, monos)
    x = solve_fractions(matrix, b)
    if x is None:
        raise AssertionError("form is not a combination of representatives and exacts")
    return x[: len(reps)]


def check_representatives(reps, images, monos, expected_dim, where):
    closed_rank = len(reps)
    if closed_rank != expected_dim:
        raise AssertionError(f"{where}: {closed_rank} representatives, dim {expected_dim}")
    columns = [vec_of(r, monos) for r in reps] + [vec_of(im, monos) for im in images]
    matrix = [[col[i] for col in columns] for i in range(len(monos))]
    image_rank = exact_rank([[vec_of(im, monos)[i] for im in images] for i in range(len(monos))]) if images and monos else 0
    total = exact_rank(matrix) if monos else 0
    if total != len(reps) + image_rank:
        raise AssertionError(f"{where}: representatives are dependent modulo exact forms")


def sparse(labels, coords) -> dict[str, str]:
    return {z: str(c) for z, c in zip(labels, coords) if c}


def exterior_payload(name, model, dolbeault_reps, derham_reps, ident_patch, expect_h, expect_b):
    """Assemble a full ring payload from an exterior model and chosen bases.

    dolbeault_reps: {(p,q): [(label, Form)]}; derham_reps: {k: [(label, Form)]};
    ident_patch: {dolbeault label: {de Rham label: coeff}} for representatives
    that are not d-closed and need a declared degreewise identification.
    """
    # Dolbeault dimensions from the bicomplex, then validate the chosen bases.
    dims = {}
    for p in range(3):
        for q in range(3):
            monos = model.monos_pq(p, q)
            below = model.monos_pq(p, q - 1) if q else []
            d_here = [
                [vec_of(model.dbar_form(unit(m)), model.monos_pq(p, q + 1))[i] for m in monos]
                for i in range(len(model.monos_pq(p, q + 1)))
            ]
            rank_here = exact_rank(d_here) if monos and model.monos_pq(p, q + 1) else 0
            d_below = [
                [vec_of(model.dbar_form(unit(m)), monos)[i] for m in below]
                for i in range(len(monos))
            ]
            rank_below = exact_rank(d_below) if below and monos else 0
            dims[(p, q)] = len(monos) - rank_here - rank_below
    if dims != expect_h:
        raise AssertionError(f"{name}: Dolbeault dimensions {dims} != {expect_h}")

    dolbeault_images = {
        (p, q): [
            model.dbar_form(unit(m))
            for m in (model.monos_pq(p, q - 1) if q else [])
            if model.dbar_form(unit(m))
        ]
        for p in range(3)
        for q in range(3)
    }
    for (p, q), reps in dolbeault_reps.items():
        monos = model.monos_pq(p, q)
        for label, form in reps:
            if model.dbar_form(form):
                raise AssertionError(f"{name}: representative {label} is not closed")
        check_representatives(
            [f for _, f in reps], dolbeault_images[(p, q)], monos, dims[(p, q)], f"{name} ({p},{q})"
        )

    # de Rham dimensions and bases the same way, over total degree.
    betti = []
    derham_images = {}
    for k in range(5):
        monos = model.monos_k(k)
        below = model.monos_k(k - 1) if k else []
        above = model.monos_k(k + 1)
        d_here = [
            [vec_of(model.d_form(unit(m)), above)[i] for m in monos]
            for i in range(len(above))
        ]
        rank_here = exact_rank(d_here) if monos and above else 0
        d_below = [
            [vec_of(model.d_form(unit(m)), monos)[i] for m in below]
            for i in range(len(monos))
        ]
        rank_below = exact_rank(d_below) if below and monos else 0
        betti.append(len(monos) - rank_here - rank_below)
        derham_images[k] = [
            model.d_form(unit(m)) for m in below if model.d_form(unit(m))
        ]
    if tuple(betti) != expect_b:
        raise AssertionError(f"{name}: Betti numbers {tuple(betti)} != {expect_b}")
    for k, reps in derham_reps.items():
        for label, form in reps:
            if model.d_form(form):
                raise AssertionError(f"{name}: de Rham representative {label} not closed")
        check_representatives(
            [f for _, f in reps], derham_images[k], model.monos_k(k), betti[k], f"{name} deg {k}"
        )

    # Structure constants by wedge-and-reduce, both argument orders.
    products: dict[str, dict[str, dict[str, str]]] = {}
    flat = [(label, form, pq) for pq, reps in sorted(dolbeault_reps.items()) for label, form in reps]
    for xl, xf, (p1, q1) in flat:
        for yl, yf, (p2, q2) in flat:
            p, q = p1 + p2, q1 + q2
            if p > 2 or q > 2:
                continue
            prod = wedge(xf, yf)
            target = dolbeault_reps.get((p, q), [])
            coords = class_coords(
                prod,
                [f for _, f in target],
                dolbeault_images[(p, q)],
                model.monos_pq(p, q),
            )
            entry = sparse([l for l, _ in target], coords)
            if entry:
                products.setdefault(xl, {})[yl] = entry

    dr_products: dict[str, dict[str, dict[str, str]]] = {}
    dr_flat = [(label, form, k) for k, reps in sorted(derham_reps.items()) for label, form in reps]
    for xl, xf, k1 in dr_flat:
        for yl, yf, k2 in dr_flat:
            k = k1 + k2
            if k > 4:
                continue
            prod = wedge(xf, yf)
            target = derham_reps.get(k, [])
            coords = class_coords(
                prod, [f for _, f in target], derham_images[k], model.monos_k(k)
            )
            entry = sparse([l for l, _ in target], coords)
            if entry:
                dr_products.setdefault(xl, {})[yl] = entry

    # Conjugation: conjugate the representative; a non-closed conjugate is
    # the zero class, a closed one reduces in the mirror block.
    conjugation: dict[str, dict[str, str]] = {}
    for (p, q), reps in sorted(dolbeault_reps.items()):
        target = dolbeault_reps.get((q, p), [])
        for label, form in reps:
            image = model.conj_form(form)
            if model.dbar_form(image):
                continue
            coords = class_coords(
                image, [f for _, f in target], dolbeault_images[(q, p)], model.monos_pq(q, p)
            )
            entry = sparse([l for l, _ in target], coords)
            if entry:
                conjugation[label] = entry

    # Identification: reduce the representative in de Rham when d-closed,
    # otherwise fall back to the declared patch.
    ident: dict[str, dict[str, str]] = {}
    for (p, q), reps in sorted(dolbeault_reps.items()):
        k = p + q
        target = derham_reps.get(k, [])
        for label, form in reps:
            if model.d_form(form):
                if label not in ident_patch:
                    raise AssertionError(f"{name}: {label} needs an identification patch")
                ident[label] = {z: str(Fraction(c)) for z, c in ident_patch[label].items()}
                continue
            if label in ident_patch:
                raise AssertionError(f"{name}: {label} is d-closed, patch unused")
            coords = class_coords(
                form, [f for _, f in target], derham_images[k], model.monos_k(k)
            )
            entry = sparse([l for l, _ in target], coords)
            if entry:
                ident[label] = entry

    return {
        "name": name,
        "bigraded": {
            f"{p},{q}": [label for label, _ in dolbeault_reps[(p, q)]]
            for (p, q) in sorted(dolbeault_reps)
            if dolbeault_reps[(p, q)]
        },
        "products": products,
        "conjugation": conjugation,
        "derham": {
            "basis": {str(k): [label for label, _ in derham_reps[k]] for k in sorted(derham_reps)},
            "products": dr_products,
        },
        "ident": ident,
    }


# -- kodaira: nilmanifold model with d(phi2) = phi1 ^ phibar1 --------------

F1, F2, B1, B2 = 0, 1, 2, 3


def kodaira_payload():
    model = ExteriorModel(
        gen_types=[(1, 0), (1, 0), (0, 1), (0, 1)],
        dgen={
            F2: {(F1, B1): Fraction(1)},
            B2: {(F1, B1): Fraction(-1)},
        },
        conj_of={F1: B1, B1: F1, F2: B2, B2: F2},
    )
    dolbeault = {
        (0, 0): [("one", unit(()))],
        (1, 0): [("f1", unit((F1,)))],
        (0, 1): [("F1", unit((B1,))), ("F2", unit((B2,)))],
        (2, 0): [("n1", unit((F1, F2)))],
        (1, 1): [("A", unit((F1, B2))), ("B", unit((F2, B1)))],
        (0, 2): [("FF", unit((B1, B2)))],
        (2, 1): [("G1", unit((F1, F2, B1))), ("G2", unit((F1, F2, B2)))],
        (1, 2): [("H1", unit((F2, B1, B2)))],
        (2, 2): [("T", unit((F1, F2, B1, B2)))],
    }
    derham = {
        0: [("one", unit(()))],
        1: [
            ("m1", unit((F1,))),
            ("m2", unit((B1,))),
            ("m3", {(F2,): Fraction(1), (B2,): Fraction(1)}),
        ],
        2: [
            ("n1", unit((F1, F2))),
            ("n2", unit((F1, B2))),
            ("n3", unit((F2, B1))),
            ("n4", unit((B1, B2))),
        ],
        3: [
            ("p1", unit((F1, F2, B1))),
            ("p2", unit((F1, F2, B2))),
            ("p3", unit((F2, B1, B2))),
        ],
        4: [("v", unit((F1, F2, B1, B2)))],
    }
    expect_h = {
        (0, 0): 1, (1, 0): 1, (0, 1): 2,
        (2, 0): 1, (1, 1): 2, (0, 2): 1,
        (2, 1): 2, (1, 2): 1, (2, 2): 1,
    }
    expect_h = {(p, q): expect_h.get((p, q), 0) for p in range(3) for q in range(3)}
    return exterior_payload(
        "kodaira",
        model,
        dolbeault,
        derham,
        ident_patch={"F2": {"m3": 1}},
        expect_h=expect_h,
        expect_b=(1, 3, 4, 3, 1),
    )


# -- torus4: four flat generators, zero differential ----------------------


def torus4_payload():
    model = ExteriorModel(
        gen_types=[(1, 0), (1, 0), (0, 1), (0, 1)],
        dgen={},
        conj_of={0: 2, 2: 0, 1: 3, 3: 1},
    )

    def label(mono: Mono) -> str:
        return "e" + "".join(str(i + 1) for i in mono)

    dolbeault = {
        (p, q): [(label(m), unit(m)) for m in model.monos_pq(p, q)]
        for p in range(3)
        for q in range(3)
        if model.monos_pq(p, q)
    }
    derham = {k: [(label(m), unit(m)) for m in model.monos_k(k)] for k in range(5)}
    expect_h = {
        (p, q): comb(2, p) * comb(2, q) for p in range(3) for q in range(3)
    }
    return exterior_payload(
        "torus4",
        model,
        dolbeault,
        derham,
        ident_patch={},
        expect_h=expect_h,
        expect_b=(1, 4, 6, 4, 1),
    )


# -- k3: classical Hodge numbers and hyperbolic pairing -------------------


def k3_payload():
    walls = [f"w{i}" for i in range(1, 21)]
    labels = ["one", "sg", *walls, "sgb", "top"]

    def pairing(x: str, y: str) -> int:
        if {x, y} == {"sg", "sgb"}:
            return 1
        if x in walls and y in walls:
            i, j = int(x[1:]), int(y[1:])
            block = (i - 1) // 2
            if block == (j - 1) // 2 and i != j:
                return 1
        return 0

    products: dict[str, dict[str, dict[str, str]]] = {}
    for x in labels:
        products.setdefault("one", {})[x] = {x: "1"}
        if x != "one":
            products.setdefault(x, {})["one"] = {x: "1"}
    degree2 = ["sg", *walls, "sgb"]
    for x in degree2:
        for y in degree2:
            c = pairing(x, y)
            if c:
                products.setdefault(x, {})[y] = {"top": str(c)}

    conjugation = {lbl: {lbl: "1"} for lbl in labels}
    conjugation["sg"] = {"sgb": "1"}
    conjugation["sgb"] = {"sg": "1"}

    payload = {
        "name": "k3",
        "bigraded": {
            "0,0": ["one"],
            "2,0": ["sg"],
            "1,1": walls,
            "0,2": ["sgb"],
            "2,2": ["top"],
        },
        "products": products,
        "conjugation": conjugation,
        "derham": {
            "basis": {"0": ["one"], "2": degree2, "4": ["top"]},
            "products": products,
        },
        "ident": {lbl: {lbl: "1"} for lbl in labels},
    }

    matrix = [[Fraction(pairing(x, y)) for y in degree2] for x in degree2]
    if exact_rank(matrix) != 22:
        raise AssertionError("k3: intersection pairing is degenerate")
    return payload


def main() -> int:
    outdir = os.path.join(
        os.path.dirname(os.path.abspath(__file__)), "..", "src", "ellfib", "cohomology", "presets"
    )
    os.makedirs(outdir, exist_ok=True)
    for name, builder in (
        ("kodaira", kodaira_payload),
        ("torus4", torus4_payload),
        ("k3", k3_payload),
    ):
        payload = builder()
        ring = ring_from_dict(payload)
        problems = ring_validate(ring)
        if problems:
            raise SystemExit(f"{name}: " + "; ".join(problems))
        # stable canonical shape: emit through the ring itself
        final = ring_to_dict(ring)
        if ring_validate(ring_from_dict(final)):
            raise SystemExit(f"{name}: payload does not round trip")
        path = os.path.join(outdir, f"{name}.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(canonical_json(final))
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
