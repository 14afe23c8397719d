"""Finite chart model of the fibered surface base.

The base is replaced by a nerve: chart labels, unordered overlaps and
triples, and finite sample-label sets with triple samples contained in
overlap samples contained in chart samples.  Transition data becomes a
translation-valued cocycle tabulated at samples.  On top of that sit the
three classification tools: the cocycle checker, the coboundary solver
deciding whether the transition class is trivial, and the gluing of
locally constant classifying maps.  The multiplicative gerbe obstruction
lives here too, with scalars modeled as nonzero rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import sympy

from .errors import IncompatibleFamily, InvalidGerbe, MissingSample, SchemaError
from .linalg import solve_gf2, solve_integer
from .torus import TorusPoint

_BAD_LABEL_CHARS = set(",/")


def _check_label(label, kind: str) -> str:
    if not isinstance(label, str) or not label:
        raise SchemaError(f"{kind} label must be a nonempty string: {label!r}")
    if _BAD_LABEL_CHARS & set(label):
        raise SchemaError(f"{kind} label may not contain ',' or '/': {label!r}")
    return label


def overlap_key(i: str, j: str) -> tuple[str, str]:
    """Canonical orientation of an overlap pair."""
    if i == j:
        raise SchemaError(f"overlap needs two distinct charts, got {i!r} twice")
    return (i, j) if i < j else (j, i)


def triple_key(i: str, j: str, k: str) -> tuple[str, str, str]:
    if len({i, j, k}) != 3:
        raise SchemaError(f"triple needs three distinct charts: {(i, j, k)!r}")
    return tuple(sorted((i, j, k)))


class Nerve:
    """Validated chart/overlap/triple incidence with sample labels."""

    __slots__ = ("charts", "overlaps", "triples", "_chart_s", "_overlap_s", "_triple_s")

    def __init__(
        self,
        charts: Iterable[str],
        overlaps: Iterable[Sequence[str]] = (),
        triples: Iterable[Sequence[str]] = (),
        chart_samples: Mapping[str, Iterable[str]] | None = None,
        overlap_samples: Mapping[tuple[str, str], Iterable[str]] | None = None,
        triple_samples: Mapping[tuple[str, str, str], Iterable[str]] | None = None,
    ):
        chart_list = [_check_label(c, "chart") for c in charts]
        if not chart_list:
            raise SchemaError("a nerve needs at least one chart")
        if len(set(chart_list)) != len(chart_list):
            raise SchemaError("duplicate chart labels")
        self.charts = tuple(sorted(chart_list))

        seen_pairs = set()
        for pair in overlaps:
            if len(pair) != 2:
                raise SchemaError(f"overlap must list two charts: {pair!r}")
            key = overlap_key(*pair)
            if key[0] not in self.charts or key[1] not in self.charts:
                raise SchemaError(f"overlap {key!r} references unknown charts")
            if key in seen_pairs:
                raise SchemaError(f"duplicate overlap {key!r}")
            seen_pairs.add(key)
        self.overlaps = tuple(sorted(seen_pairs))

        seen_triples = set()
        for tri in triples:
            if len(tri) != 3:
                raise SchemaError(f"triple must list three charts: {tri!r}")
            key = triple_key(*tri)
            for a in range(3):
                for b in range(a + 1, 3):
                    if overlap_key(key[a], key[b]) not in seen_pairs:
                        raise SchemaError(
                            f"triple {key!r} misses overlap {(key[a], key[b])!r}"
                        )
            if key in seen_triples:
                raise SchemaError(f"duplicate triple {key!r}")
            seen_triples.add(key)
        self.triples = tuple(sorted(seen_triples))

        def clean_samples(raw, keys, kind):
            raw = dict(raw or {})
            out = {}
            for key in keys:
                if key not in raw:
                    raise SchemaError(f"missing samples for {kind} {key!r}")
                labels = [_check_label(s, "sample") for s in raw.pop(key)]
                if not labels:
                    raise SchemaError(f"empty sample set for {kind} {key!r}")
                if len(set(labels)) != len(labels):
                    raise SchemaError(f"duplicate samples for {kind} {key!r}")
                out[key] = tuple(sorted(labels))
            if raw:
                raise SchemaError(f"samples given for unknown {kind}s: {sorted(raw)!r}")
            return out

        self._chart_s = clean_samples(chart_samples, self.charts, "chart")
        self._overlap_s = clean_samples(overlap_samples, self.overlaps, "overlap")
        self._triple_s = clean_samples(triple_samples, self.triples, "triple")

        for (i, j), labels in self._overlap_s.items():
            for s in labels:
                if s not in self._chart_s[i] or s not in self._chart_s[j]:
                    raise SchemaError(
                        f"overlap {(i, j)!r} sample {s!r} missing from a chart"
                    )
        for (i, j, k), labels in self._triple_s.items():
            pairs = [overlap_key(i, j), overlap_key(j, k), overlap_key(i, k)]
            for s in labels:
                for pair in pairs:
                    if s not in self._overlap_s[pair]:
                        raise SchemaError(
                            f"triple {(i, j, k)!r} sample {s!r} missing from "
                            f"overlap {pair!r}"
                        )

    @classmethod
    def single_chart(cls, chart: str = "c", samples: Sequence[str] = ("s",)) -> "Nerve":
        return cls([chart], chart_samples={chart: samples})

    def chart_samples(self, chart: str) -> tuple[str, ...]:
        if chart not in self._chart_s:
            raise SchemaError(f"unknown chart {chart!r}")
        return self._chart_s[chart]

    def overlap_samples(self, i: str, j: str) -> tuple[str, ...]:
        key = overlap_key(i, j)
        if key not in self._overlap_s:
            raise SchemaError(f"unknown overlap {key!r}")
        return self._overlap_s[key]

    def triple_samples(self, i: str, j: str, k: str) -> tuple[str, ...]:
        key = triple_key(i, j, k)
        if key not in self._triple_s:
            raise SchemaError(f"unknown triple {key!r}")
        return self._triple_s[key]

    def tetrahedra(self) -> tuple[tuple[str, str, str, str], ...]:
        """Chart quadruples all four of whose triples are present."""
        present = set(self.triples)
        out = []
        n = len(self.charts)
        for a in range(n):
            for b in range(a + 1, n):
                for c in range(b + 1, n):
                    if (self.charts[a], self.charts[b], self.charts[c]) not in present:
                        continue
                    for d in range(c + 1, n):
                        quad = (self.charts[a], self.charts[b], self.charts[c], self.charts[d])
                        faces = [
                            (quad[0], quad[1], quad[2]),
                            (quad[0], quad[1], quad[3]),
                            (quad[0], quad[2], quad[3]),
                            (quad[1], quad[2], quad[3]),
                        ]
                        if all(f in present for f in faces):
                            out.append(quad)
        return tuple(out)

    def _key(self):
        return (
            self.charts,
            self.overlaps,
            self.triples,
            tuple(sorted(self._chart_s.items())),
            tuple(sorted(self._overlap_s.items())),
            tuple(sorted(self._triple_s.items())),
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Nerve) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self) -> str:
        return (
            f"Nerve(charts={len(self.charts)}, overlaps={len(self.overlaps)}, "
            f"triples={len(self.triples)})"
        )


class TranslationCocycle:
    """Antisymmetric overlap data: lambda[j,i] is derived as -lambda[i,j]."""

    __slots__ = ("values",)

    def __init__(self, values: Mapping[tuple[str, str], Mapping[str, TorusPoint]]):
        table: dict[tuple[str, str], dict[str, TorusPoint]] = {}
        for (i, j), per_sample in values.items():
            key = overlap_key(i, j)
            flip = key != (i, j)
            if key in table:
                raise SchemaError(f"cocycle lists overlap {key!r} twice")
            entry = {}
            for sample, point in per_sample.items():
                _check_label(sample, "sample")
                if not isinstance(point, TorusPoint):
                    raise SchemaError(f"cocycle value for {key!r}/{sample!r} not a point")
                entry[sample] = -point if flip else point
            table[key] = entry
        self.values = table

    def value(self, i: str, j: str, sample: str) -> TorusPoint:
        key = overlap_key(i, j)
        per_sample = self.values.get(key)
        if per_sample is None or sample not in per_sample:
            raise MissingSample(f"cocycle undefined on overlap {key!r} sample {sample!r}")
        point = per_sample[sample]
        return -point if key != (i, j) else point

    def __eq__(self, other) -> bool:
        return isinstance(other, TranslationCocycle) and self.values == other.values

    def __repr__(self) -> str:
        return f"TranslationCocycle(overlaps={len(self.values)})"


@dataclass(frozen=True)
class CocycleReport:
    ok: bool
    violations: tuple[tuple[tuple[str, str, str], str, TorusPoint], ...]


def check_cocycle(nerve: Nerve, cocycle: TranslationCocycle) -> CocycleReport:
    """List every triple sample where the three-term sum is not zero."""
    for i, j in nerve.overlaps:
        for s in nerve.overlap_samples(i, j):
            cocycle.value(i, j, s)
    violations = []
    for i, j, k in nerve.triples:
        for s in nerve.triple_samples(i, j, k):
            total = (
                cocycle.value(i, j, s)
                + cocycle.value(j, k, s)
                + cocycle.value(k, i, s)
            )
            if not total.is_zero():
                violations.append(((i, j, k), s, total))
    return CocycleReport(ok=not violations, violations=tuple(violations))


def coboundary_solve(
    nerve: Nerve, cocycle: TranslationCocycle
) -> dict[tuple[str, str], TorusPoint] | None:
    """Find mu with lambda_ij = mu_j - mu_i on every overlap sample, or None.

    Each connected component of the (chart, sample) constraint graph is
    anchored by zeroing its smallest node, so the answer is canonical.
    """
    nodes = sorted(
        (chart, s) for chart in nerve.charts for s in nerve.chart_samples(chart)
    )
    edges: dict[tuple[str, str], list[tuple[tuple[str, str], TorusPoint]]] = {
        node: [] for node in nodes
    }
    for i, j in nerve.overlaps:
        for s in nerve.overlap_samples(i, j):
            lam = cocycle.value(i, j, s)
            edges[(i, s)].append(((j, s), lam))
            edges[(j, s)].append(((i, s), -lam))
    mu: dict[tuple[str, str], TorusPoint] = {}
    for root in nodes:
        if root in mu:
            continue
        mu[root] = TorusPoint(Fraction(0), Fraction(0))
        queue = [root]
        while queue:
            node = queue.pop(0)
            for neighbor, lam in edges[node]:
                expected = mu[node] + lam
                if neighbor in mu:
                    if mu[neighbor] != expected:
                        return None
                else:
                    mu[neighbor] = expected
                    queue.append(neighbor)
    return mu


def classify_line_family(
    nerve: Nerve,
    cocycle: TranslationCocycle,
    local: Mapping[tuple[str, str], TorusPoint],
) -> dict[str, TorusPoint]:
    """Glue per-chart classifying points into one map on sample labels.

    The transition translations do not move a degree-zero class, so
    gluing is plain equality of the local values on overlap samples.
    The cocycle is accepted for interface symmetry and precondition
    context only.
    """
    del cocycle
    for chart in nerve.charts:
        for s in nerve.chart_samples(chart):
            if (chart, s) not in local:
                raise MissingSample(f"no local class for chart {chart!r} sample {s!r}")
    for i, j in nerve.overlaps:
        for s in nerve.overlap_samples(i, j):
            left, right = local[(i, s)], local[(j, s)]
            if left != right:
                raise IncompatibleFamily(
                    f"overlap {(i, j)!r} sample {s!r}: chart values differ "
                    f"({left} vs {right})"
                )
    glued: dict[str, TorusPoint] = {}
    for chart in nerve.charts:
        for s in nerve.chart_samples(chart):
            value = local[(chart, s)]
            if s in glued and glued[s] != value:
                raise IncompatibleFamily(
                    f"sample {s!r}: charts disagree without a connecting overlap"
                )
            glued[s] = value
    return glued


def _nonzero_rational(value, where: str) -> Fraction:
    q = Fraction(value)
    if q == 0:
        raise InvalidGerbe(f"zero scalar at {where}")
    return q


class GerbeData:
    """Scalar twisting data on a nerve: descriptors F, scalars a and c.

    Descriptors are integer exponent vectors over the canonical overlap
    generators; the reversed orientation of a generator contributes with
    exponent -1, which builds condition 2 into the encoding and makes
    condition 1 vacuous (a chart never overlaps itself).  Scalars given
    on a reversed overlap key are stored inverted.
    """

    __slots__ = ("nerve", "a", "c", "descriptors")

    def __init__(
        self,
        nerve: Nerve,
        a: Mapping[tuple[str, str], object] | None = None,
        c: Mapping[tuple[str, str, str], object] | None = None,
        descriptors: Mapping[tuple[str, str], Mapping[tuple[str, str], int]] | None = None,
    ):
        self.nerve = nerve
        self.a: dict[tuple[str, str], Fraction] = {}
        for (i, j), value in (a or {}).items():
            key = overlap_key(i, j)
            if key not in nerve.overlaps:
                raise SchemaError(f"gerbe scalar on unknown overlap {key!r}")
            if key in self.a:
                raise SchemaError(f"gerbe lists overlap {key!r} twice")
            q = _nonzero_rational(value, f"a[{i},{j}]")
            self.a[key] = 1 / q if key != (i, j) else q
        self.c: dict[tuple[str, str, str], Fraction] = {}
        for tri, value in (c or {}).items():
            key = triple_key(*tri)
            if key not in nerve.triples:
                raise SchemaError(f"gerbe scalar on unknown triple {key!r}")
            if key in self.c:
                raise SchemaError(f"gerbe lists triple {key!r} twice")
            self.c[key] = _nonzero_rational(value, f"c[{','.join(tri)}]")

        self.descriptors: dict[tuple[str, str], dict[tuple[str, str], int]] = {}
        given = dict(descriptors or {})
        for (i, j), exps in given.items():
            key = overlap_key(i, j)
            if key not in nerve.overlaps:
                raise SchemaError(f"descriptor on unknown overlap {key!r}")
            vec: dict[tuple[str, str], int] = {}
            for (u, v), e in exps.items():
                gen = overlap_key(u, v)
                if gen not in nerve.overlaps:
                    raise SchemaError(f"descriptor references unknown overlap {(u, v)!r}")
                e = int(e)
                if gen != (u, v):
                    e = -e
                vec[gen] = vec.get(gen, 0) + e
            vec = {g: e for g, e in vec.items() if e}
            if key != (i, j):
                vec = {g: -e for g, e in vec.items()}
            if key in self.descriptors:
                if self.descriptors[key] != vec:
                    raise InvalidGerbe(
                        f"condition 2 violated: descriptors for {key!r} and its "
                        "reverse are not inverse"
                    )
            else:
                self.descriptors[key] = vec
        for key in nerve.overlaps:
            self.descriptors.setdefault(key, {key: 1})

    def scalar_a(self, i: str, j: str) -> Fraction:
        key = overlap_key(i, j)
        q = self.a.get(key, Fraction(1))
        return 1 / q if key != (i, j) else q

    def scalar_c(self, i: str, j: str, k: str) -> Fraction:
        return self.c.get(triple_key(i, j, k), Fraction(1))

    def descriptor(self, i: str, j: str) -> dict[tuple[str, str], int]:
        key = overlap_key(i, j)
        vec = self.descriptors[key]
        return {g: -e for g, e in vec.items()} if key != (i, j) else dict(vec)


def _descriptor_sum(*vecs) -> dict[tuple[str, str], int]:
    out: dict[tuple[str, str], int] = {}
    for vec in vecs:
        for g, e in vec.items():
            out[g] = out.get(g, 0) + e
    return {g: e for g, e in out.items() if e}


def validate_gerbe(g: GerbeData) -> None:
    """Check descriptor conditions 3 and 4; 1 and 2 hold by encoding.

    Condition 3 (triviality of F_ij + F_jk + F_ki) means membership in
    the lattice spanned by the triple relators g_ij + g_jk - g_ik, since
    those relators are exactly the identifications the conditions impose
    on the free group of overlap generators.
    """
    nerve = g.nerve
    gens = list(nerve.overlaps)
    gen_index = {key: pos for pos, key in enumerate(gens)}
    relators = []
    for i, j, k in nerve.triples:
        row = [0] * len(gens)
        row[gen_index[overlap_key(i, j)]] += 1
        row[gen_index[overlap_key(j, k)]] += 1
        row[gen_index[overlap_key(i, k)]] -= 1
        relators.append(row)
    for i, j, k in nerve.triples:
        vec = _descriptor_sum(g.descriptor(i, j), g.descriptor(j, k), g.descriptor(k, i))
        target = [0] * len(gens)
        for gen, e in vec.items():
            target[gen_index[gen]] = e
        if not relators:
            solvable = not any(target)
        else:
            # membership of target in the row span: solve relators^T x = target
            matrix = [[relators[r][col] for r in range(len(relators))] for col in range(len(gens))]
            solvable = solve_integer(matrix, target) is not None
        if not solvable:
            raise InvalidGerbe(
                f"condition 3 violated on triple {(i, j, k)!r}: descriptor product "
                "is not canonically trivial"
            )
    for i, j, k, l in nerve.tetrahedra():
        face = lambda x, y, z: _descriptor_sum(
            g.descriptor(x, y), g.descriptor(y, z), g.descriptor(z, x)
        )
        total = _descriptor_sum(
            face(i, j, k),
            {gen: -e for gen, e in face(j, k, l).items()},
            face(k, l, i),
            {gen: -e for gen, e in face(l, i, j).items()},
        )
        if total:
            raise InvalidGerbe(f"condition 4 violated on tetrahedron {(i, j, k, l)!r}")


@dataclass(frozen=True)
class GerbeReport:
    alpha: tuple[tuple[tuple[str, str, str], Fraction], ...]
    cocycle_checks: tuple[tuple[tuple[str, str, str, str], Fraction], ...]
    cocycle_ok: bool
    gluable: bool
    witness: tuple[tuple[tuple[str, str], Fraction], ...] | None


def _prime_valuations(q: Fraction) -> dict[int, int]:
    vals: dict[int, int] = {}
    for p, e in sympy.factorint(q.numerator if q > 0 else -q.numerator).items():
        vals[int(p)] = int(e)
    for p, e in sympy.factorint(q.denominator).items():
        vals[int(p)] = vals.get(int(p), 0) - int(e)
    return {p: e for p, e in vals.items() if e}


def _coboundary_witness(
    nerve: Nerve, alpha: dict[tuple[str, str, str], Fraction]
) -> dict[tuple[str, str], Fraction] | None:
    """Solve alpha = (delta beta) in nonzero rationals, prime by prime."""
    gens = list(nerve.overlaps)
    gen_index = {key: pos for pos, key in enumerate(gens)}
    rows = []
    for i, j, k in nerve.triples:
        row = [0] * len(gens)
        row[gen_index[overlap_key(i, j)]] += 1
        row[gen_index[overlap_key(j, k)]] += 1
        row[gen_index[overlap_key(i, k)]] -= 1
        rows.append(row)
    order = list(nerve.triples)
    primes = sorted({p for q in alpha.values() for p in _prime_valuations(q)})
    exponents: dict[tuple[str, str], Fraction] = {key: Fraction(1) for key in gens}
    for p in primes:
        rhs = [_prime_valuations(alpha[tri]).get(p, 0) for tri in order]
        sol = solve_integer(rows, rhs)
        if sol is None:
            return None
        for key, e in zip(gens, sol):
            exponents[key] *= Fraction(p) ** e
    sign_rhs = [0 if alpha[tri] > 0 else 1 for tri in order]
    sign_sol = solve_gf2(rows, sign_rhs)
    if sign_sol is None:
        return None
    return {
        key: (-1 if bit else 1) * exponents[key] for key, bit in zip(gens, sign_sol)
    }


def gerbe_alpha(nerve: Nerve, g: GerbeData) -> GerbeReport:
    """Per-triple obstruction scalars, their cocycle identity, gluability."""
    if g.nerve is not nerve and g.nerve != nerve:
        raise SchemaError("gerbe data was built over a different nerve")
    validate_gerbe(g)
    alpha: dict[tuple[str, str, str], Fraction] = {}
    for i, j, k in nerve.triples:
        alpha[(i, j, k)] = (
            g.scalar_a(i, j) * g.scalar_a(j, k) * g.scalar_a(k, i)
        ) / g.scalar_c(i, j, k)
    checks = []
    for i, j, k, l in nerve.tetrahedra():
        value = (alpha[(j, k, l)] * alpha[(i, j, l)]) / (alpha[(i, k, l)] * alpha[(i, j, k)])
        checks.append(((i, j, k, l), value))
    cocycle_ok = all(value == 1 for _, value in checks)
    witness = _coboundary_witness(nerve, alpha)
    if witness is not None:
        for i, j, k in nerve.triples:
            left = witness[overlap_key(i, j)]
            mid = witness[overlap_key(j, k)]
            right = witness[overlap_key(i, k)]
            assert left * mid / right == alpha[(i, j, k)]
    return GerbeReport(
        alpha=tuple(sorted(alpha.items())),
        cocycle_checks=tuple(checks),
        cocycle_ok=cocycle_ok,
        gluable=witness is not None,
        witness=None if witness is None else tuple(sorted(witness.items())),
    )


@dataclass(frozen=True)
class CharClass:
    """Rational characteristic data: two vectors in one H^2 basis."""

    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(Fraction(x) for x in self.a))
        object.__setattr__(self, "b", tuple(Fraction(x) for x in self.b))
        if len(self.a) != len(self.b):
            raise SchemaError("characteristic vectors must share one basis")
