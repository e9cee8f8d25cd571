"""Closed-form scalar fields with exact derivatives.

A :class:`ScalarField` is a small expression tree over the coordinates
``t, x, y, z`` (and the auxiliary light-cone-like coordinates ``s0..s3``
used by the general degenerate construction).  The node catalog is fixed:

    const, var, add, mul, pow (integer 0..4), sin, cos, exp, gaussian

where ``gaussian(u) = exp(-u**2)``.  The catalog is closed under
differentiation, so first and second derivatives are again ScalarFields.
Trees round-trip through plain JSON dictionaries.
"""
from __future__ import annotations

import math
from typing import Mapping

import numpy as np
import sympy as sp

from .errors import CatalogError

SPACETIME = ("t", "x", "y", "z")
AUXILIARY = ("s0", "s1", "s2", "s3")
VARIABLES = SPACETIME + AUXILIARY
UNARY = ("sin", "cos", "exp", "gaussian")
MAX_POWER = 4


class ScalarField:
    """Immutable expression node.

    Build fields with the helpers :func:`const`, :func:`var`, the arithmetic
    operators and :func:`sin`, :func:`cos`, :func:`exp`, :func:`gaussian`,
    or parse a string with :meth:`parse`.
    """

    __slots__ = ("op", "args", "_hash")

    def __init__(self, op: str, args: tuple):
        object.__setattr__(self, "op", op)
        object.__setattr__(self, "args", args)
        object.__setattr__(self, "_hash", hash((op, args)))

    def __setattr__(self, name, value):
        raise AttributeError("ScalarField is immutable")

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, ScalarField) and self.op == other.op and self.args == other.args

    def __repr__(self):
        return f"ScalarField({self})"

    def __str__(self):
        return str(self.to_sympy())

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        return add(self, _lift(other))

    __radd__ = __add__

    def __mul__(self, other):
        return mul(self, _lift(other))

    __rmul__ = __mul__

    def __neg__(self):
        return mul(const(-1.0), self)

    def __sub__(self, other):
        return add(self, -_lift(other))

    def __rsub__(self, other):
        return add(_lift(other), -self)

    def __pow__(self, n):
        return power(self, n)

    # -- inspection -------------------------------------------------------
    @property
    def variables(self) -> frozenset:
        """Coordinate names the expression references."""
        if self.op == "var":
            return frozenset(self.args)
        if self.op == "const":
            return frozenset()
        if self.op == "pow":
            return self.args[0].variables
        out = frozenset()
        for a in self.args:
            out |= a.variables
        return out

    @property
    def is_real(self) -> bool:
        """True when every constant in the tree is real."""
        if self.op == "const":
            return self.args[0].imag == 0.0
        if self.op == "var":
            return True
        if self.op == "pow":
            return self.args[0].is_real
        return all(a.is_real for a in self.args)

    @property
    def is_zero(self) -> bool:
        return self.op == "const" and self.args[0] == 0

    def depends_only_on(self, allowed) -> bool:
        return self.variables <= frozenset(allowed)

    # -- calculus -----------------------------------------------------------
    def diff(self, name: str) -> "ScalarField":
        """Exact partial derivative with respect to coordinate ``name``."""
        op, args = self.op, self.args
        if op == "const":
            return ZERO
        if op == "var":
            return ONE if args[0] == name else ZERO
        if op == "add":
            return add(*(a.diff(name) for a in args))
        if op == "mul":
            terms = []
            for i, a in enumerate(args):
                da = a.diff(name)
                if da.is_zero:
                    continue
                terms.append(mul(*(args[:i] + (da,) + args[i + 1:])))
            return add(*terms)
        if op == "pow":
            base, n = args
            if n == 0:
                return ZERO
            return mul(const(float(n)), power(base, n - 1), base.diff(name))
        (u,) = args
        du = u.diff(name)
        if du.is_zero:
            return ZERO
        if op == "sin":
            return mul(cos(u), du)
        if op == "cos":
            return mul(const(-1.0), sin(u), du)
        if op == "exp":
            return mul(self, du)
        if op == "gaussian":
            return mul(const(-2.0), u, self, du)
        raise CatalogError(op)

    def gradient(self, names=SPACETIME) -> tuple:
        return tuple(self.diff(n) for n in names)

    # -- evaluation -------------------------------------------------------
    def __call__(self, *coords, **named):
        """Evaluate on numpy arrays.

        Positional arguments are ``t, x, y, z``; auxiliary coordinates are
        passed by keyword.  A single ``(n, 4)`` array is also accepted.
        """
        if len(coords) == 1 and np.ndim(coords[0]) == 2 and np.shape(coords[0])[-1] == 4:
            pts = np.asarray(coords[0])
            coords = tuple(pts[:, i] for i in range(4))
        env = dict(zip(SPACETIME, coords))
        env.update(named)
        value = self._eval(env)
        if self.is_real:
            value = np.real(value)
        return value

    def _eval(self, env):
        op, args = self.op, self.args
        if op == "const":
            return args[0]
        if op == "var":
            try:
                return np.asarray(env[args[0]])
            except KeyError:
                raise KeyError(f"coordinate {args[0]!r} not supplied") from None
        if op == "add":
            out = 0.0
            for a in args:
                out = out + a._eval(env)
            return out
        if op == "mul":
            out = 1.0
            for a in args:
                out = out * a._eval(env)
            return out
        if op == "pow":
            return args[0]._eval(env) ** args[1]
        u = args[0]._eval(env)
        if op == "sin":
            return np.sin(u)
        if op == "cos":
            return np.cos(u)
        if op == "exp":
            return np.exp(u)
        return np.exp(-(u * u))

    # -- conversions --------------------------------------------------------
    def to_sympy(self, substitutions: Mapping[str, sp.Expr] | None = None) -> sp.Expr:
        """Sympy expression, with coordinates replaced per ``substitutions``."""
        subs = substitutions or {}
        op, args = self.op, self.args
        if op == "const":
            c = args[0]
            return sp.Float(c.real) if c.imag == 0 else sp.Float(c.real) + sp.I * sp.Float(c.imag)
        if op == "var":
            name = args[0]
            if name in subs:
                return subs[name]
            return _SYMBOLS[name]
        if op == "add":
            return sp.Add(*(a.to_sympy(subs) for a in args))
        if op == "mul":
            return sp.Mul(*(a.to_sympy(subs) for a in args))
        if op == "pow":
            return args[0].to_sympy(subs) ** args[1]
        u = args[0].to_sympy(subs)
        if op == "sin":
            return sp.sin(u)
        if op == "cos":
            return sp.cos(u)
        if op == "exp":
            return sp.exp(u)
        return sp.exp(-(u**2))

    def to_dict(self) -> dict:
        op, args = self.op, self.args
        if op == "const":
            return {"op": "const", "re": args[0].real, "im": args[0].imag}
        if op == "var":
            return {"op": "var", "name": args[0]}
        if op == "pow":
            return {"op": "pow", "arg": args[0].to_dict(), "n": args[1]}
        if op in UNARY:
            return {"op": op, "arg": args[0].to_dict()}
        return {"op": op, "args": [a.to_dict() for a in args]}

    @classmethod
    def from_dict(cls, tree: Mapping) -> "ScalarField":
        op = tree.get("op")
        if op == "const":
            return const(complex(tree.get("re", 0.0), tree.get("im", 0.0)))
        if op == "var":
            return var(tree["name"])
        if op == "pow":
            return power(cls.from_dict(tree["arg"]), int(tree["n"]))
        if op in UNARY:
            return _unary(op, cls.from_dict(tree["arg"]))
        if op == "add":
            return add(*(cls.from_dict(a) for a in tree["args"]))
        if op == "mul":
            return mul(*(cls.from_dict(a) for a in tree["args"]))
        raise CatalogError(f"unknown node {op!r}")

    @classmethod
    def parse(cls, text: str) -> "ScalarField":
        """Parse an expression such as ``"-2*(t - z) + 0.5*sin(x*y)"``."""
        local = {name: _SYMBOLS[name] for name in VARIABLES}
        local["gaussian"] = lambda u: sp.exp(-(u**2))
        local["I"] = sp.I
        local["j"] = sp.I
        try:
            expr = sp.sympify(text, locals=local)
        except (sp.SympifyError, TypeError, SyntaxError) as exc:
            raise CatalogError(f"cannot parse {text!r}: {exc}") from None
        return from_sympy(expr)


def _lift(value) -> ScalarField:
    if isinstance(value, ScalarField):
        return value
    if isinstance(value, (int, float, complex, np.number)):
        return const(value)
    raise TypeError(f"cannot combine ScalarField with {type(value).__name__}")


def const(value) -> ScalarField:
    c = complex(value)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise CatalogError("constants must be finite")
    return ScalarField("const", (c,))


def var(name: str) -> ScalarField:
    if name not in VARIABLES:
        raise CatalogError(f"unknown coordinate {name!r}")
    return ScalarField("var", (name,))


ZERO = const(0.0)
ONE = const(1.0)


def add(*terms: ScalarField) -> ScalarField:
    flat = []
    c = 0j
    for term in terms:
        if term.op == "add":
            items = term.args
        else:
            items = (term,)
        for item in items:
            if item.op == "const":
                c += item.args[0]
            else:
                flat.append(item)
    if c != 0 or not flat:
        flat.append(const(c))
    if len(flat) == 1:
        return flat[0]
    return ScalarField("add", tuple(flat))


def mul(*factors: ScalarField) -> ScalarField:
    flat = []
    c = 1 + 0j
    for factor in factors:
        items = factor.args if factor.op == "mul" else (factor,)
        for item in items:
            if item.op == "const":
                c *= item.args[0]
            else:
                flat.append(item)
    if c == 0:
        return ZERO
    if c != 1 or not flat:
        flat.insert(0, const(c))
    if len(flat) == 1:
        return flat[0]
    return ScalarField("mul", tuple(flat))


def power(base: ScalarField, n: int) -> ScalarField:
    if int(n) != n or not 0 <= n <= MAX_POWER:
        raise CatalogError(f"powers are limited to integers 0..{MAX_POWER}, got {n}")
    n = int(n)
    if n == 0:
        return ONE
    if n == 1:
        return base
    if base.op == "const":
        return const(base.args[0] ** n)
    return ScalarField("pow", (base, n))


def _unary(op: str, u: ScalarField) -> ScalarField:
    u = _lift(u)
    if u.op == "const":
        c = u.args[0]
        fn = {"sin": np.sin, "cos": np.cos, "exp": np.exp, "gaussian": lambda w: np.exp(-w * w)}[op]
        return const(complex(fn(c)))
    return ScalarField(op, (u,))


def sin(u) -> ScalarField:
    return _unary("sin", u)


def cos(u) -> ScalarField:
    return _unary("cos", u)


def exp(u) -> ScalarField:
    return _unary("exp", u)


def gaussian(u) -> ScalarField:
    return _unary("gaussian", u)


_SYMBOLS = {name: sp.Symbol(name, real=True) for name in VARIABLES}


def from_sympy(expr: sp.Expr) -> ScalarField:
    """Convert a sympy expression into the catalog, or raise CatalogError."""
    if expr.is_Symbol:
        return var(expr.name)
    if expr.is_number:
        try:
            return const(complex(expr))
        except TypeError:
            raise CatalogError(f"non-numeric constant {expr}") from None
    if expr.is_Add:
        return add(*(from_sympy(a) for a in expr.args))
    if expr.is_Mul:
        return mul(*(from_sympy(a) for a in expr.args))
    if expr.is_Pow:
        base, n = expr.args
        if not (n.is_Integer and 0 <= int(n) <= MAX_POWER):
            raise CatalogError(f"exponent {n} outside the catalog")
        return power(from_sympy(base), int(n))
    if isinstance(expr, sp.exp):
        return exp(from_sympy(expr.args[0]))
    if isinstance(expr, sp.sin):
        return sin(from_sympy(expr.args[0]))
    if isinstance(expr, sp.cos):
        return cos(from_sympy(expr.args[0]))
    raise CatalogError(f"{type(expr).__name__} is not in the scalar-field catalog")


def as_field(value) -> ScalarField:
    """Accept a ScalarField, a number, an expression string or a JSON tree."""
    if value is None:
        return ZERO
    if isinstance(value, ScalarField):
        return value
    if isinstance(value, str):
        return ScalarField.parse(value)
    if isinstance(value, Mapping):
        return ScalarField.from_dict(value)
    return const(value)


def random_field(rng: np.random.Generator, variables=SPACETIME, n_terms: int = 3,
                 amplitude: float = 1.0) -> ScalarField:
    """Random real catalog field, bounded on the default sampling box.

    Terms are drawn from monomials, shifted sinusoids, Gaussian bumps and
    bilinear products of the given coordinates.
    """
    variables = tuple(variables)
    terms = []
    for _ in range(n_terms):
        kind = rng.integers(4)
        c = amplitude * rng.uniform(-1.0, 1.0)
        u = var(variables[rng.integers(len(variables))])
        w = var(variables[rng.integers(len(variables))])
        if kind == 0:
            terms.append(c * power(u, int(rng.integers(1, 3))))
        elif kind == 1:
            terms.append(c * sin(rng.uniform(0.3, 1.5) * u + rng.uniform(-1, 1) * w + rng.uniform(0, 2 * np.pi)))
        elif kind == 2:
            terms.append(c * gaussian(rng.uniform(0.3, 1.0) * (u - rng.uniform(-1, 1))))
        else:
            terms.append(c * u * cos(rng.uniform(0.2, 1.0) * w))
    return add(*terms)
