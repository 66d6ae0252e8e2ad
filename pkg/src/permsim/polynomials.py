"""Dense univariate polynomials over a :class:`~permsim.field_linalg.FieldSpec`.

A polynomial is a tuple of field elements in ascending degree order with no
trailing zeros; the zero polynomial is ``()``.  Every function takes the field
explicitly so the same code serves GF(p) and the rationals.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:
    from .field_linalg import FieldSpec

Poly = tuple


def normalize(field: FieldSpec, coeffs: Sequence) -> Poly:
    out = [field.element(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def degree(f: Poly) -> int:
    """Degree, with -1 for the zero polynomial."""
    return len(f) - 1


def add(field: FieldSpec, f: Poly, g: Poly) -> Poly:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = field.add(out[i], c)
    return normalize(field, out)


def neg(field: FieldSpec, f: Poly) -> Poly:
    return tuple(field.neg(c) for c in f)


def sub(field: FieldSpec, f: Poly, g: Poly) -> Poly:
    return add(field, f, neg(field, g))


def mul(field: FieldSpec, f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ()
    out = [field.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = field.add(out[i + j], field.mul(a, b))
    return normalize(field, out)


def scale(field: FieldSpec, f: Poly, c) -> Poly:
    return normalize(field, [field.mul(c, a) for a in f])


def divmod_poly(field: FieldSpec, f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(f)
    dg = len(g) - 1
    lead_inv = field.inv(g[-1])
    quot = [field.zero] * max(len(f) - dg, 0)
    while len(rem) - 1 >= dg and rem:
        shift = len(rem) - 1 - dg
        c = field.mul(rem[-1], lead_inv)
        quot[shift] = c
        for i, b in enumerate(g):
            rem[shift + i] = field.sub(rem[shift + i], field.mul(c, b))
        while rem and rem[-1] == 0:
            rem.pop()
    return normalize(field, quot), tuple(rem)


def monic(field: FieldSpec, f: Poly) -> Poly:
    if not f:
        return f
    return scale(field, f, field.inv(f[-1]))


def evaluate(field: FieldSpec, f: Poly, x):
    acc = field.zero
    for c in reversed(f):
        acc = field.add(field.mul(acc, x), c)
    return acc


def product(field: FieldSpec, polys) -> Poly:
    out: Poly = (field.one,)
    for f in polys:
        out = mul(field, out, f)
    return out


def format_dense(field: FieldSpec, f: Poly) -> str:
    """Ascending coefficient list, e.g. ``[1, 0, 0, 0, 1]`` for x^4 + 1."""
    return "[" + ", ".join(field.format(c) for c in f) + "]"


def format_pretty(field: FieldSpec, f: Poly) -> str:
    if not f:
        return "0"
    out = ""
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        cs = field.format(c)
        sign = "-" if cs.startswith("-") else "+"
        cs = cs.lstrip("-")
        if i == 0:
            term = cs
        else:
            mono = "x" if i == 1 else f"x^{i}"
            term = mono if cs == "1" else f"{cs}*{mono}"
        if not out:
            out = term if sign == "+" else "-" + term
        else:
            out += f" {sign} {term}"
    return out
