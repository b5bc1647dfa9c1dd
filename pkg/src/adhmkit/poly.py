"""Sparse exact polynomials in named variables.

A polynomial carries an ordered tuple of variable names and a map from
exponent vectors to nonzero scalars. The canonical monomial order is
graded lexicographic on the declared variable list; printing and JSON
output follow it, so reports are reproducible bit for bit.

Variable lists are explicit everywhere: binary operations require both
operands to declare the same list, which catches accidental mixing of
coordinate systems (projective coordinates, chart parameters,
subspace parameters) at the call site.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .scalars import ONE, ZERO, Scalar, scalar_sqrt


class PolynomialError(ValueError):
    pass


def _coerce_scalar(value) -> Scalar | None:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar(Fraction(value))
    return None


@dataclass(frozen=True)
class Poly:
    variables: tuple[str, ...]
    terms: dict[tuple[int, ...], Scalar] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: dict[tuple[int, ...], Scalar] = {}
        for exps, coeff in self.terms.items():
            if len(exps) != len(self.variables):
                raise PolynomialError(
                    f"exponent vector {exps} does not match variables {self.variables}"
                )
            if not coeff.is_zero():
                clean[tuple(exps)] = coeff
        object.__setattr__(self, "terms", clean)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables: Iterable[str]) -> "Poly":
        return cls(tuple(variables), {})

    @classmethod
    def const(cls, variables: Iterable[str], value) -> "Poly":
        variables = tuple(variables)
        coeff = _coerce_scalar(value)
        if coeff is None:
            raise PolynomialError(f"not a scalar: {value!r}")
        return cls(variables, {(0,) * len(variables): coeff})

    @classmethod
    def variable(cls, name: str, variables: Iterable[str]) -> "Poly":
        variables = tuple(variables)
        if name not in variables:
            raise PolynomialError(f"{name!r} not among variables {variables}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exps: ONE})

    @classmethod
    def linear_form(cls, variables: Iterable[str], coefficients: Mapping[str, Scalar]) -> "Poly":
        """Sum of coefficient * variable over the mapping."""
        variables = tuple(variables)
        terms: dict[tuple[int, ...], Scalar] = {}
        for name, coeff in coefficients.items():
            if name not in variables:
                raise PolynomialError(f"{name!r} not among variables {variables}")
            exps = tuple(1 if v == name else 0 for v in variables)
            terms[exps] = terms.get(exps, ZERO) + coeff
        return cls(variables, terms)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise PolynomialError("polynomial is not constant")
        return next(iter(self.terms.values()), ZERO)

    def total_degree(self) -> int:
        """Maximum total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        if not self.terms:
            return True
        degs = {sum(e) for e in self.terms}
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def support_variables(self) -> tuple[str, ...]:
        used = [False] * len(self.variables)
        for exps in self.terms:
            for k, e in enumerate(exps):
                if e:
                    used[k] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    def coefficient(self, exps: tuple[int, ...]) -> Scalar:
        return self.terms.get(tuple(exps), ZERO)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.variables, frozenset(self.terms.items())))

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            if other.variables != self.variables:
                raise PolynomialError(
                    f"variable mismatch: {self.variables} vs {other.variables}"
                )
            return other
        scalar = _coerce_scalar(other)
        if scalar is None:
            return None
        return Poly.const(self.variables, scalar)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for exps, coeff in o.terms.items():
            terms[exps] = terms.get(exps, ZERO) + coeff
        return Poly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms: dict[tuple[int, ...], Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                acc = terms.get(exps)
                prod = c1 * c2
                terms[exps] = prod if acc is None else acc + prod
        return Poly(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise PolynomialError("negative power of a polynomial")
        result = Poly.const(self.variables, ONE)
        for _ in range(exponent):
            result = result * self
        return result

    def scale(self, value) -> "Poly":
        coeff = _coerce_scalar(value)
        if coeff is None:
            raise PolynomialError(f"not a scalar: {value!r}")
        if coeff.is_zero():
            return Poly.zero(self.variables)
        return Poly(self.variables, {e: c * coeff for e, c in self.terms.items()})

    # -- substitution ------------------------------------------------------

    def substitute(self, assignment: Mapping[str, "Poly | Scalar | int"],
                   target_variables: Iterable[str]) -> "Poly":
        """Substitute each variable and re-express over target_variables.

        Variables absent from the assignment must themselves belong to
        the target list and map to themselves.
        """
        target = tuple(target_variables)
        images: list[Poly] = []
        for name in self.variables:
            if name in assignment:
                value = assignment[name]
                if isinstance(value, Poly):
                    if value.variables != target:
                        raise PolynomialError(
                            f"image of {name!r} declared over {value.variables}, "
                            f"expected {target}"
                        )
                    images.append(value)
                else:
                    images.append(Poly.const(target, value))
            elif name in target:
                images.append(Poly.variable(name, target))
            else:
                raise PolynomialError(f"no image for variable {name!r}")
        result = Poly.zero(target)
        for exps, coeff in self.terms.items():
            term = Poly.const(target, coeff)
            for image, e in zip(images, exps):
                if e:
                    term = term * image**e
            result = result + term
        return result

    def evaluate(self, assignment: Mapping[str, Scalar]) -> Scalar:
        total = ZERO
        for exps, coeff in self.terms.items():
            value = coeff
            for name, e in zip(self.variables, exps):
                if e:
                    value = value * assignment[name] ** e
            total = total + value
        return total

    # -- canonical order and printing ---------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Scalar]]:
        """Terms in descending graded lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def _monomial_str(self, exps: tuple[int, ...]) -> str:
        parts = []
        for name, e in zip(self.variables, exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for exps, coeff in self.sorted_terms():
            mono = self._monomial_str(exps)
            if coeff.is_rational():
                sign = "-" if coeff.re < 0 else "+"
                mag = abs(coeff.re)
                if not mono:
                    body = str(mag)
                elif mag == 1:
                    body = mono
                else:
                    body = f"{mag}*{mono}"
            else:
                sign = "+"
                body = f"({coeff})*{mono}" if mono else f"({coeff})"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({self})"


# -- univariate utilities ----------------------------------------------------


def _single_variable(p: Poly) -> str | None:
    support = p.support_variables()
    if len(support) > 1:
        raise PolynomialError(f"polynomial is not univariate: {p}")
    return support[0] if support else None


def univariate_coeffs(p: Poly, variable: str | None = None) -> list[Scalar]:
    """Dense ascending coefficient list of a univariate polynomial."""
    name = _single_variable(p)
    if name is None:
        name = variable if variable is not None else (p.variables[0] if p.variables else "t")
    if variable is not None and name != variable and p.terms:
        raise PolynomialError(f"expected polynomial in {variable!r}, got {p}")
    if name not in p.variables:
        return [p.constant_value()] if p.terms else []
    idx = p.variables.index(name)
    if not p.terms:
        return []
    degree = max(e[idx] for e in p.terms)
    coeffs = [ZERO] * (degree + 1)
    for exps, coeff in p.terms.items():
        coeffs[exps[idx]] = coeff
    return coeffs


def poly_from_coeffs(coeffs: list[Scalar], variable: str = "t") -> Poly:
    terms = {(k,): c for k, c in enumerate(coeffs) if not c.is_zero()}
    return Poly((variable,), terms)


def _dense_trim(coeffs: list[Scalar]) -> list[Scalar]:
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def _dense_divmod(num: list[Scalar], den: list[Scalar]) -> tuple[list[Scalar], list[Scalar]]:
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    num = list(num)
    quot = [ZERO] * max(0, len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(num) - len(den), -1, -1):
        factor = num[k + len(den) - 1] / lead
        quot[k] = factor
        if not factor.is_zero():
            for j, d in enumerate(den):
                num[k + j] = num[k + j] - factor * d
    return _dense_trim(quot), _dense_trim(num[: len(den) - 1])


def divmod_univariate(p: Poly, q: Poly, variable: str = "t") -> tuple[Poly, Poly]:
    a = univariate_coeffs(p, variable)
    b = univariate_coeffs(q, variable)
    quot, rem = _dense_divmod(a, b)
    return poly_from_coeffs(quot, variable), poly_from_coeffs(rem, variable)


def derivative_univariate(p: Poly, variable: str = "t") -> Poly:
    coeffs = univariate_coeffs(p, variable)
    return poly_from_coeffs([c * k for k, c in enumerate(coeffs)][1:], variable)


def gcd_univariate(polys: Iterable[Poly], variable: str = "t") -> Poly:
    """Monic gcd of univariate polynomials; gcd of nothing is 0."""
    acc: list[Scalar] = []
    for p in polys:
        b = univariate_coeffs(p, variable)
        if not b:
            continue
        if not acc:
            acc = b
        else:
            while b:
                acc, b = b, _dense_divmod(acc, b)[1]
        if len(acc) == 1:
            break
    if not acc:
        return Poly.zero((variable,))
    lead = acc[-1]
    return poly_from_coeffs([c / lead for c in acc], variable)


def squarefree_part(p: Poly, variable: str = "t") -> Poly:
    """Monic product of the distinct irreducible factors (char 0)."""
    coeffs = univariate_coeffs(p, variable)
    if len(coeffs) <= 1:
        return poly_from_coeffs([ONE] if coeffs else [], variable)
    d = derivative_univariate(p, variable)
    g = gcd_univariate([p, d], variable)
    quot, _ = divmod_univariate(p, g, variable)
    q = univariate_coeffs(quot, variable)
    lead = q[-1]
    return poly_from_coeffs([c / lead for c in q], variable)


_FACTOR_BUDGET = 10**12


def _int_divisors(n: int) -> list[int] | None:
    n = abs(n)
    if n == 0:
        return None
    if n > _FACTOR_BUDGET:
        return None
    divs = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            divs.append(d)
            divs.append(n // d)
        d += 1
    return sorted(set(divs))


def _rational_roots(coeffs: list[Scalar]) -> list[Scalar] | None:
    """Candidate rational roots of a polynomial with rational coefficients."""
    den_lcm = 1
    for c in coeffs:
        den_lcm = math.lcm(den_lcm, c.re.denominator)
    ints = [int(c.re * den_lcm) for c in coeffs]
    lead_divs = _int_divisors(ints[-1])
    const_divs = _int_divisors(ints[0])
    if lead_divs is None or const_divs is None:
        return None
    roots = []
    for p in const_divs:
        for q in lead_divs:
            for sign in (1, -1):
                cand = Scalar(Fraction(sign * p, q))
                value = ZERO
                for c in reversed(coeffs):
                    value = value * cand + c
                if value.is_zero():
                    roots.append(cand)
    return sorted(set(roots), key=lambda s: (s.re, s.im))


def split_linear_factors(p: Poly, variable: str = "t") -> tuple[list[Scalar], Poly | None]:
    """Peel off roots of a univariate polynomial inside Q(i).

    Returns (roots with multiplicity, residual). The residual is None
    when the polynomial splits completely; otherwise it is the monic
    factor without roots found. Rational roots come from the rational
    root theorem (skipped past a factoring budget), degree-2 residues
    from the quadratic formula over the Gaussian rationals.
    """
    coeffs = univariate_coeffs(p, variable)
    if len(coeffs) <= 1:
        return [], None
    roots: list[Scalar] = []
    while len(coeffs) > 1 and coeffs[0].is_zero():
        roots.append(ZERO)
        coeffs = coeffs[1:]
    while len(coeffs) == 2 or (len(coeffs) > 2 and all(c.is_rational() for c in coeffs)):
        if len(coeffs) == 2:
            roots.append(-coeffs[0] / coeffs[1])
            coeffs = coeffs[1:]
            continue
        found = _rational_roots(coeffs)
        if not found:
            break
        root = found[0]
        coeffs, rem = _dense_divmod(coeffs, [-root, ONE])
        assert not rem
        roots.append(root)
    if len(coeffs) == 3:
        a, b, c = coeffs[2], coeffs[1], coeffs[0]
        disc = b * b - Scalar(Fraction(4)) * a * c
        root_disc = scalar_sqrt(disc)
        if root_disc is not None:
            two_a = a + a
            roots.append((-b + root_disc) / two_a)
            roots.append((-b - root_disc) / two_a)
            coeffs = coeffs[2:]
    if len(coeffs) <= 1:
        residual = None
    else:
        lead = coeffs[-1]
        residual = poly_from_coeffs([c / lead for c in coeffs], variable)
    roots.sort(key=lambda s: (s.re, s.im))
    return roots, residual
