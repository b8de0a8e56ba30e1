"""Sparse multivariate polynomial arithmetic over Z with a weighted grading.

A polynomial is a dictionary mapping exponent tuples to nonzero
arbitrary-precision integer coefficients.  Keeping the sparse form
canonical (no stored zeros) makes structural equality coincide with
semantic equality.  Coefficients are plain Python ints throughout: the
series coefficients that show up downstream overflow 64-bit arithmetic
already for moderate parameters, and exactness is the entire point.

Monomials are ordered graded-lexicographically: first by weighted degree,
then lexicographically in the ring's declared variable order.  The
canonical text rendering lists terms in descending order with explicit
``*`` separators, e.g. ``11*c1^2 + 10*c2``; a compact style without the
separators is used for one-line ring presentations.

All values are immutable after construction and every operation is a pure
function, so everything here can be shared freely between threads.
"""

from __future__ import annotations

from typing import Iterable, Mapping

# An exponent tuple, one nonnegative entry per ring variable.
Monomial = tuple


class RingMismatchError(ValueError):
    """Operands live over incompatible ambient rings."""


class ExactDivisionError(ArithmeticError):
    """An exact integer division left a remainder (internal inconsistency)."""


class GradedRingSpec:
    """Z[x_1, ..., x_k] with a fixed variable order and positive weights.

    The order of ``variables`` is part of the ring's identity: it fixes
    the monomial order used for rendering, slice bases and symmetric
    reduction.  Weights are the degrees of the generators.
    """

    __slots__ = ("variables", "_names", "_weights", "_index")

    def __init__(self, variables: Iterable[tuple[str, int]]):
        pairs = tuple((str(name), int(weight)) for name, weight in variables)
        names = tuple(name for name, _ in pairs)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names: {names}")
        for name, weight in pairs:
            if not name:
                raise ValueError("variable names must be nonempty")
            if weight < 1:
                raise ValueError(f"weight of {name} must be >= 1, got {weight}")
        self.variables = pairs
        self._names = names
        self._weights = tuple(weight for _, weight in pairs)
        self._index = {name: i for i, name in enumerate(names)}

    @property
    def names(self) -> tuple[str, ...]:
        return self._names

    @property
    def weights(self) -> tuple[int, ...]:
        return self._weights

    @property
    def nvars(self) -> int:
        return len(self._names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no variable {name!r} in {self}") from None

    def degree_of(self, monomial: Monomial) -> int:
        """Weighted degree of an exponent tuple."""
        return sum(e * w for e, w in zip(monomial, self._weights))

    # -- constructors ----------------------------------------------------

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, value: int) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: int(value)})

    def var(self, name: str) -> "Polynomial":
        exps = [0] * self.nvars
        exps[self.index(name)] = 1
        return Polynomial(self, {tuple(exps): 1})

    def monomial(self, exponents: Iterable[int], coefficient: int = 1) -> "Polynomial":
        return Polynomial(self, {tuple(exponents): coefficient})

    # -- derived rings ---------------------------------------------------

    def without(self, name: str) -> "GradedRingSpec":
        """The ring with one variable removed."""
        self.index(name)
        return GradedRingSpec(p for p in self.variables if p[0] != name)

    def extend(self, extra: Iterable[tuple[str, int]]) -> "GradedRingSpec":
        """The ring with additional variables appended."""
        return GradedRingSpec(self.variables + tuple(extra))

    def renamed(self, mapping: Mapping[str, str]) -> "GradedRingSpec":
        return GradedRingSpec(
            (mapping.get(name, name), weight) for name, weight in self.variables
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedRingSpec) and self.variables == other.variables

    def __hash__(self) -> int:
        return hash(self.variables)

    def __repr__(self) -> str:
        inner = ", ".join(f"{n}:{w}" for n, w in self.variables)
        return f"GradedRingSpec({inner})"

    def __str__(self) -> str:
        if not self.variables:
            return "Z"
        return "Z[" + ",".join(self._names) + "]"


class Polynomial:
    """Immutable sparse polynomial over a :class:`GradedRingSpec`."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: GradedRingSpec, terms: Mapping[Monomial, int]):
        nvars = ring.nvars
        clean: dict[Monomial, int] = {}
        for monomial, coefficient in terms.items():
            if not coefficient:
                continue
            monomial = tuple(monomial)
            if len(monomial) != nvars or any(e < 0 for e in monomial):
                raise ValueError(f"bad exponent tuple {monomial} for {ring}")
            clean[monomial] = coefficient
        self.ring = ring
        self.terms = clean
        self._hash = None

    # -- basic queries ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int | None:
        """Maximum weighted degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        degree_of = self.ring.degree_of
        return max(degree_of(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degrees = {self.ring.degree_of(m) for m in self.terms}
        return len(degrees) <= 1

    def homogeneous_degree(self) -> int:
        """Degree of a homogeneous polynomial (zero is rejected)."""
        degrees = {self.ring.degree_of(m) for m in self.terms}
        if len(degrees) != 1:
            raise ValueError(f"not a nonzero homogeneous polynomial: {self}")
        return degrees.pop()

    def coefficient(self, monomial: Iterable[int]) -> int:
        return self.terms.get(tuple(monomial), 0)

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.ring.nvars, 0)

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(
                    f"incompatible ambient rings {self.ring} and {other.ring}"
                )
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for monomial, coefficient in other.terms.items():
            out[monomial] = out.get(monomial, 0) + coefficient
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.mul_trunc(other, None)

    __rmul__ = __mul__

    def mul_trunc(self, other: "Polynomial", trunc: int | None) -> "Polynomial":
        """Product, discarding terms of weighted degree above ``trunc``."""
        other = self._coerce(other)
        if trunc is not None and trunc < 0:
            raise ValueError("truncation bound must be >= 0")
        degree_of = self.ring.degree_of
        out: dict[Monomial, int] = {}
        if trunc is None:
            for ma, ca in self.terms.items():
                for mb, cb in other.terms.items():
                    key = tuple(x + y for x, y in zip(ma, mb))
                    out[key] = out.get(key, 0) + ca * cb
        else:
            deg_b = {mb: degree_of(mb) for mb in other.terms}
            for ma, ca in self.terms.items():
                da = degree_of(ma)
                if da > trunc:
                    continue
                for mb, cb in other.terms.items():
                    if da + deg_b[mb] > trunc:
                        continue
                    key = tuple(x + y for x, y in zip(ma, mb))
                    out[key] = out.get(key, 0) + ca * cb
        return Polynomial(self.ring, out)

    def __pow__(self, exponent: int) -> "Polynomial":
        return self.pow_trunc(exponent, None)

    def pow_trunc(self, exponent: int, trunc: int | None) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one
        base = self if trunc is None else self.truncate(trunc)
        e = exponent
        while e:
            if e & 1:
                result = result.mul_trunc(base, trunc)
            e >>= 1
            if e:
                base = base.mul_trunc(base, trunc)
        return result

    def truncate(self, bound: int) -> "Polynomial":
        degree_of = self.ring.degree_of
        return Polynomial(
            self.ring, {m: c for m, c in self.terms.items() if degree_of(m) <= bound}
        )

    # -- grading ---------------------------------------------------------

    def graded_component(self, n: int) -> "Polynomial":
        """Sum of the terms of weighted degree exactly ``n``."""
        if n < 0:
            raise ValueError("degree must be >= 0")
        degree_of = self.ring.degree_of
        return Polynomial(
            self.ring, {m: c for m, c in self.terms.items() if degree_of(m) == n}
        )

    def graded_components(self) -> dict[int, "Polynomial"]:
        by_degree: dict[int, dict[Monomial, int]] = {}
        degree_of = self.ring.degree_of
        for m, c in self.terms.items():
            by_degree.setdefault(degree_of(m), {})[m] = c
        return {n: Polynomial(self.ring, t) for n, t in sorted(by_degree.items())}

    # -- evaluation / substitution ----------------------------------------

    def evaluate(self, values: Mapping[str, int]) -> int:
        """Evaluate at an integer point (every variable must be assigned)."""
        point = [values[name] for name in self.ring.names]
        total = 0
        for monomial, coefficient in self.terms.items():
            term = coefficient
            for value, e in zip(point, monomial):
                if e:
                    term *= value**e
            total += term
        return total

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.terms == self.ring.const(other).terms
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        return render_polynomial(self)


# -- functional API (the operation surface used by the other modules) ------


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    """Termwise sum in canonical form."""
    return a + b


def poly_mul(a: Polynomial, b: Polynomial, trunc: int | None = None) -> Polynomial:
    """Distributive product; terms of weighted degree > ``trunc`` are dropped."""
    return a.mul_trunc(b, trunc)


def graded_component(p: Polynomial, n: int) -> Polynomial:
    return p.graded_component(n)


def exact_div(p: Polynomial, divisor: int) -> Polynomial:
    """Divide every coefficient exactly; a remainder is a hard error."""
    if divisor == 0:
        raise ExactDivisionError("division by zero")
    out = {}
    for monomial, coefficient in p.terms.items():
        q, r = divmod(coefficient, divisor)
        if r:
            raise ExactDivisionError(f"{coefficient} is not divisible by {divisor}")
        out[monomial] = q
    return Polynomial(p.ring, out)


def embed(p: Polynomial, target: GradedRingSpec) -> Polynomial:
    """Reinterpret ``p`` in a ring containing its variables (matched by name).

    Each variable of ``p`` must exist in ``target`` with the same weight.
    """
    if p.ring == target:
        return p
    positions = []
    for name, weight in p.ring.variables:
        j = target.index(name)
        if target.weights[j] != weight:
            raise RingMismatchError(
                f"variable {name} has weight {weight} in {p.ring} "
                f"but {target.weights[j]} in {target}"
            )
        positions.append(j)
    out: dict[Monomial, int] = {}
    for monomial, coefficient in p.terms.items():
        exps = [0] * target.nvars
        for e, j in zip(monomial, positions):
            exps[j] = e
        out[tuple(exps)] = coefficient
    return Polynomial(target, out)


def rename_variables(p: Polynomial, mapping: Mapping[str, str]) -> Polynomial:
    """Rename variables (same weights, same order), e.g. L -> H."""
    return Polynomial(p.ring.renamed(mapping), p.terms)


def compose(
    p: Polynomial, assignment: Mapping[str, Polynomial], target: GradedRingSpec
) -> Polynomial:
    """Substitute a polynomial over ``target`` for every variable of ``p``."""
    values = [embed(assignment[name], target) for name in p.ring.names]
    result = target.zero
    for monomial, coefficient in p.terms.items():
        term = target.const(coefficient)
        for value, e in zip(values, monomial):
            if e:
                term = term * value**e
        result = result + term
    return result


def substitute_zero(p: Polynomial, name: str) -> Polynomial:
    """Set one variable to zero, staying in the same ring."""
    i = p.ring.index(name)
    return Polynomial(p.ring, {m: c for m, c in p.terms.items() if m[i] == 0})


def eliminate_variable(
    p: Polynomial, name: str, value: Polynomial, new_ring: GradedRingSpec
) -> Polynomial:
    """Substitute ``value`` (over ``new_ring``) for a variable and drop it."""
    i = p.ring.index(name)
    result = new_ring.zero
    for monomial, coefficient in p.terms.items():
        rest = monomial[:i] + monomial[i + 1 :]
        term = new_ring.monomial(rest, coefficient)
        if monomial[i]:
            term = term * value ** monomial[i]
        result = result + term
    return result


# -- rendering --------------------------------------------------------------


def ordered_monomials(p: Polynomial, ascending_degrees: bool = False) -> list[Monomial]:
    """Monomials of ``p`` in canonical display order.

    Canonical order is descending graded-lex.  With ``ascending_degrees``
    the degrees run upward (total-Chern-series style) while monomials
    within a degree stay in descending lex order.
    """
    degree_of = p.ring.degree_of
    if ascending_degrees:
        return sorted(p.terms, key=lambda m: (degree_of(m), tuple(-e for e in m)))
    return sorted(p.terms, key=lambda m: (degree_of(m), m), reverse=True)


def _format_term(names: tuple[str, ...], monomial: Monomial, coefficient: int,
                 star: str) -> str:
    factors = []
    for name, e in zip(names, monomial):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    magnitude = abs(coefficient)
    if not factors:
        return str(magnitude)
    body = star.join(factors)
    if magnitude == 1:
        return body
    return f"{magnitude}{star}{body}"


def render_polynomial(
    p: Polynomial,
    style: str = "canonical",
    normalize_sign: bool = False,
    ascending_degrees: bool = False,
) -> str:
    """Canonical text form, e.g. ``11*c1^2 + 10*c2``.

    ``style="compact"`` drops the ``*`` separators (``11c1^2 + 10c2``),
    which is the style used inside one-line ring presentations.  With
    ``normalize_sign`` the whole polynomial is negated when the leading
    coefficient is negative; storage never does this, display may.
    """
    if style not in ("canonical", "compact"):
        raise ValueError(f"unknown render style {style!r}")
    if p.is_zero():
        return "0"
    order = ordered_monomials(p, ascending_degrees=ascending_degrees)
    sign = 1
    if normalize_sign and p.terms[order[0]] < 0:
        sign = -1
    star = "*" if style == "canonical" else ""
    names = p.ring.names
    pieces = []
    for k, monomial in enumerate(order):
        coefficient = sign * p.terms[monomial]
        body = _format_term(names, monomial, coefficient, star)
        if k == 0:
            pieces.append(f"-{body}" if coefficient < 0 else body)
        else:
            pieces.append(("- " if coefficient < 0 else "+ ") + body)
    return " ".join(pieces)
