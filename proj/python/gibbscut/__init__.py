"""Exact minimization of submodular pseudo-Boolean and multi-label grid energies."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import _core
from ._core import Error, Infeasible, InvalidInput, VerificationFailure

__all__ = [
    "Error",
    "Infeasible",
    "InvalidInput",
    "VerificationFailure",
    "Polynomial",
    "MinimizeResult",
    "expand_table",
    "expand_model",
    "check",
    "minimize",
    "gadget_dump",
    "denoise",
]


def _frac(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def _text(value) -> str:
    f = _frac(value)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


@dataclass
class Polynomial:
    """Multilinear polynomial: {sorted variable tuple: coefficient} plus a constant."""

    n_vars: int
    terms: dict = field(default_factory=dict)
    constant: Fraction = Fraction(0)

    @classmethod
    def from_terms(cls, n_vars: int, terms: Mapping[Iterable[int], object] | Iterable, constant=0) -> "Polynomial":
        items = terms.items() if isinstance(terms, Mapping) else terms
        merged: dict = {}
        for vars_, coef in items:
            key = tuple(sorted(vars_))
            merged[key] = merged.get(key, Fraction(0)) + _frac(coef)
        return cls(n_vars, {k: v for k, v in merged.items() if v}, _frac(constant))

    @classmethod
    def from_json(cls, doc) -> "Polynomial":
        if isinstance(doc, str):
            doc = json.loads(doc)
        terms = {tuple(m["vars"]): Fraction(str(m["coef"])) for m in doc.get("monomials", [])}
        return cls(doc["n_vars"], terms, Fraction(str(doc.get("constant", "0"))))

    def to_json(self) -> str:
        monomials = [{"vars": list(k), "coef": _text(v)} for k, v in self.terms.items()]
        return json.dumps({"n_vars": self.n_vars, "constant": _text(self.constant), "monomials": monomials})

    def __call__(self, x: Sequence[int]) -> Fraction:
        return Fraction(_core.evaluate(self.to_json(), list(x)))


@dataclass
class MinimizeResult:
    min_value: Fraction
    minimal: tuple
    maximal: tuple
    method: str
    extremes_exact: bool
    trace: dict | None = None


def expand_table(n: int, k: int, table: Sequence) -> tuple[Polynomial, Fraction]:
    """Penalized Boolean polynomial of a label function on {0..k}^n given as a row-major table."""
    out = json.loads(_core.expand_table(n, k, [_text(v) for v in table]))
    return Polynomial.from_json(out["polynomial"]), Fraction(out["penalty"])


def expand_model(model: Mapping) -> tuple[Polynomial, Fraction]:
    """Penalized Boolean polynomial of a grid energy model document."""
    out = json.loads(_core.expand_model(json.dumps(model)))
    return Polynomial.from_json(out["polynomial"]), Fraction(out["penalty"])


def check(p: Polynomial) -> dict:
    """Submodularity verdict with witness and the P_suf pair report."""
    return json.loads(_core.check(p.to_json()))


def minimize(
    p: Polynomial,
    method: str = "auto",
    *,
    levels: int = 3,
    block_sizes: Sequence[int] = (8, 16, 32),
    verify: bool = False,
) -> MinimizeResult:
    out = json.loads(_core.minimize(p.to_json(), method, levels, list(block_sizes), verify))
    return MinimizeResult(
        Fraction(out["min_value"]),
        tuple(out["minimal"]),
        tuple(out["maximal"]),
        out["method"],
        out["extremes_exact"],
        out["trace"],
    )


def gadget_dump(p: Polynomial) -> str:
    """DIMACS max-flow text of the network representing p."""
    return _core.gadget_dump(p.to_json())


def denoise(
    image,
    *,
    max_value: int = 255,
    levels: int = 4,
    lam=1,
    data: str = "absolute",
    smoothness: str = "linear",
    method: str = "cut",
):
    """Restores a 2-D integer image; returns (restored image, labels, energy).

    Accepts a numpy array or a list of rows and returns the same kind.
    """
    rows = image.tolist() if hasattr(image, "tolist") else [list(r) for r in image]
    height = len(rows)
    width = len(rows[0]) if rows else 0
    flat = [int(v) for r in rows for v in r]
    pixels, labels, energy = _core.denoise(
        width, height, max_value, flat, levels, _text(lam), data, smoothness == "quadratic", method
    )
    shape = lambda v: [v[y * width : (y + 1) * width] for y in range(height)]
    out, lab = shape(pixels), shape(labels)
    if hasattr(image, "tolist"):
        import numpy as np

        out, lab = np.asarray(out, dtype=image.dtype), np.asarray(lab)
    return out, lab, Fraction(energy)
