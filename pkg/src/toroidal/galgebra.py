"""Finite-dimensional Lie algebras with an invariant form, and their modules.

A descriptor can be read from JSON::

    {
      "name": "sl2",
      "basis": ["e", "f", "h"],
      "structure_constants": [[0, 1, 2, "1"], [2, 0, 0, "2"], [2, 1, 1, "-2"]],
      "gram": [["0", "1", "0"], ["1", "0", "0"], ["0", "0", "2"]],
      "module": {"dim": 2, "matrices": [[["0", "1"], ["0", "0"]], ...]}
    }

Each structure-constant entry ``[i, j, k, c]`` means ``[u_i, u_j]`` has
coefficient ``c`` on ``u_k``; the entry for ``(j, i)`` is filled in by
antisymmetry.  The optional ``module`` block gives one matrix per basis
element (row-major, acting on column vectors).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .scalars import to_q


class AlgebraDescriptorError(ValueError):
    """A Lie algebra or module descriptor failed validation."""


Matrix = Tuple[Tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class GModule:
    """A finite-dimensional module: ``matrices[a][i][j]`` is the (i, j) entry of u_a."""

    dim: int
    matrices: Tuple[Matrix, ...]

    def act(self, a: int, j: int) -> Dict[int, Fraction]:
        """u_a applied to the j-th basis vector of U."""
        col = {}
        for i in range(self.dim):
            c = self.matrices[a][i][j]
            if c:
                col[i] = c
        return col


@dataclass(frozen=True)
class GAlgebra:
    name: str
    basis: Tuple[str, ...]
    # (i, j) -> {k: c} for [u_i, u_j]; only nonzero entries
    brackets: Dict[Tuple[int, int], Dict[int, Fraction]] = field(hash=False, compare=False)
    gram: Matrix = ()
    module: Optional[GModule] = field(default=None, hash=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def bracket(self, i: int, j: int) -> Dict[int, Fraction]:
        return self.brackets.get((i, j), {})

    def form(self, i: int, j: int) -> Fraction:
        return self.gram[i][j]

    def structure_constant(self, i: int, j: int, k: int) -> Fraction:
        return self.brackets.get((i, j), {}).get(k, Fraction(0))

    def __hash__(self):
        return hash((self.name, self.basis, self.gram))

    def __eq__(self, other):
        if not isinstance(other, GAlgebra):
            return NotImplemented
        return (self.name, self.basis, self.gram, self.brackets) == (
            other.name, other.basis, other.gram, other.brackets)

    def validate(self) -> None:
        n = self.dim
        c = self.structure_constant
        for i in range(n):
            for j in range(n):
                if self.gram[i][j] != self.gram[j][i]:
                    raise AlgebraDescriptorError(f"gram matrix not symmetric at ({i},{j})")
                for k in range(n):
                    if c(i, j, k) != -c(j, i, k):
                        raise AlgebraDescriptorError(f"antisymmetry fails at ({i},{j},{k})")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    # invariance <[u_i,u_j],u_k> = <u_i,[u_j,u_k]>
                    lhs = sum(c(i, j, a) * self.gram[a][k] for a in range(n))
                    rhs = sum(c(j, k, a) * self.gram[i][a] for a in range(n))
                    if lhs != rhs:
                        raise AlgebraDescriptorError(f"form not invariant on ({i},{j},{k})")
                    for out in range(n):
                        jac = Fraction(0)
                        for (x, y, z) in ((i, j, k), (j, k, i), (k, i, j)):
                            # [u_x, [u_y, u_z]]
                            jac += sum(c(y, z, a) * c(x, a, out) for a in range(n))
                        if jac:
                            raise AlgebraDescriptorError(f"Jacobi fails on ({i},{j},{k})")
        if self.module is not None:
            self._validate_module(self.module)

    def _validate_module(self, mod: GModule) -> None:
        if len(mod.matrices) != self.dim:
            raise AlgebraDescriptorError("module needs one matrix per basis element")
        d = mod.dim
        for m in mod.matrices:
            if len(m) != d or any(len(row) != d for row in m):
                raise AlgebraDescriptorError("module matrices have the wrong shape")

        def mul(a, b):
            return [[sum(a[i][t] * b[t][j] for t in range(d)) for j in range(d)] for i in range(d)]

        for i in range(self.dim):
            for j in range(self.dim):
                ab = mul(mod.matrices[i], mod.matrices[j])
                ba = mul(mod.matrices[j], mod.matrices[i])
                for r in range(d):
                    for s in range(d):
                        want = sum(c * mod.matrices[k][r][s] for k, c in self.bracket(i, j).items())
                        if ab[r][s] - ba[r][s] != want:
                            raise AlgebraDescriptorError(
                                f"module matrices do not represent [u_{i}, u_{j}]")

    def with_module(self, module: GModule) -> "GAlgebra":
        out = GAlgebra(self.name, self.basis, self.brackets, self.gram, module)
        out.validate()
        return out


def _matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(to_q(x) for x in row) for row in rows)


def make_algebra(name: str, basis: Sequence[str], constants: Sequence[Sequence],
                 gram: Sequence[Sequence], module: Optional[dict] = None) -> GAlgebra:
    """Build and validate a descriptor from structure-constant entries ``(i, j, k, c)``."""
    n = len(basis)
    brackets: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    seen = {}
    for entry in constants:
        if len(entry) != 4:
            raise AlgebraDescriptorError(f"structure constant entry needs 4 fields: {entry!r}")
        i, j, k, cval = int(entry[0]), int(entry[1]), int(entry[2]), to_q(entry[3])
        for idx in (i, j, k):
            if not 0 <= idx < n:
                raise AlgebraDescriptorError(f"basis index out of range in {entry!r}")
        if i == j and cval:
            raise AlgebraDescriptorError(f"[u_{i}, u_{i}] must vanish")
        for (a, b, v) in ((i, j, cval), (j, i, -cval)):
            key = (a, b, k)
            if key in seen and seen[key] != v:
                raise AlgebraDescriptorError(f"inconsistent structure constants at {key}")
            seen[key] = v
    for (a, b, k), v in seen.items():
        if v:
            brackets.setdefault((a, b), {})[k] = v
    g = _matrix(gram)
    if len(g) != n or any(len(row) != n for row in g):
        raise AlgebraDescriptorError("gram matrix has the wrong shape")
    mod = None
    if module is not None:
        mod = GModule(int(module["dim"]), tuple(_matrix(m) for m in module["matrices"]))
    alg = GAlgebra(name, tuple(basis), brackets, g, mod)
    alg.validate()
    return alg


def abelian() -> GAlgebra:
    """One-dimensional abelian algebra with <u,u> = 1 acting trivially on a line."""
    return make_algebra("abelian", ["u"], [], [[1]], {"dim": 1, "matrices": [[[0]]]})


def sl2() -> GAlgebra:
    """sl_2 with basis e, f, h, the trace form and the natural 2-dimensional module."""
    return make_algebra(
        "sl2",
        ["e", "f", "h"],
        [[0, 1, 2, 1], [2, 0, 0, 2], [2, 1, 1, -2]],
        [[0, 1, 0], [1, 0, 0], [0, 0, 2]],
        {"dim": 2, "matrices": [[[0, 1], [0, 0]], [[0, 0], [1, 0]], [[1, 0], [0, -1]]]},
    )


PRESETS = {"abelian": abelian, "sl2": sl2}


def algebra_from_dict(data: dict) -> GAlgebra:
    try:
        return make_algebra(
            data.get("name", "custom"),
            data["basis"],
            data.get("structure_constants", []),
            data["gram"],
            data.get("module"),
        )
    except KeyError as exc:
        raise AlgebraDescriptorError(f"missing field {exc.args[0]!r}") from exc


def load_algebra(path) -> GAlgebra:
    """Load a descriptor from a JSON file, or return a preset given its name."""
    if str(path) in PRESETS:
        return PRESETS[str(path)]()
    with open(Path(path), encoding="utf-8") as fh:
        return algebra_from_dict(json.load(fh))


def algebra_to_dict(alg: GAlgebra) -> dict:
    out = {
        "name": alg.name,
        "basis": list(alg.basis),
        "structure_constants": [
            [i, j, k, str(c)]
            for (i, j), row in sorted(alg.brackets.items()) if i < j
            for k, c in sorted(row.items())
        ],
        "gram": [[str(x) for x in row] for row in alg.gram],
    }
    if alg.module is not None:
        out["module"] = {
            "dim": alg.module.dim,
            "matrices": [[[str(x) for x in row] for row in m] for m in alg.module.matrices],
        }
    return out
