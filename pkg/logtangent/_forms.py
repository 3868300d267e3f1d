"""
Homogeneous polynomials with rational coefficients and points of the plane.
"""
import dataclasses
import functools
import logging
import math
import re
from fractions import Fraction
from typing import Iterable
from typing import Mapping
from typing import Optional
from typing import Sequence
from typing import Union

from ._errors import ParseError
from ._errors import PreconditionError

LOGGER = logging.getLogger(__name__)

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]

DEFAULT_VARIABLES: dict[int, tuple[str, ...]] = {
    2: ("s", "t"),
    3: ("x0", "x1", "x2"),
}

DUAL_VARIABLES = ("a0", "a1", "a2")


def default_variables(nvars: int) -> tuple[str, ...]:
    return DEFAULT_VARIABLES.get(nvars, tuple(f"x{index}" for index in range(nvars)))


@functools.cache
def monomials(nvars: int, degree: int) -> tuple[Exponent, ...]:
    """
    All exponent vectors of the given total degree, in graded lexicographic
    order x0 > x1 > ... (the first monomial is ``x0^degree``).
    """
    if degree < 0:
        return tuple()
    if nvars == 1:
        return ((degree,),)
    result = []
    for first in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - first):
            result.append((first,) + rest)
    return tuple(result)


@functools.cache
def monomial_index(nvars: int, degree: int) -> dict[Exponent, int]:
    return {exponent: index for index, exponent in enumerate(monomials(nvars, degree))}


def space_dimension(nvars: int, degree: int) -> int:
    """
    Dimension of the space of forms of the given degree.
    """
    if degree < 0:
        return 0
    return math.comb(degree + nvars - 1, nvars - 1)


@dataclasses.dataclass(frozen=True)
class Form:
    """
    Homogeneous polynomial with rational coefficients.

    Instances are immutable and canonical: terms are stored in graded
    lexicographic order without zero coefficients, so equality of forms is
    equality of the dataclass.
    """

    degree: int
    """
    Declared total degree, kept for the zero form too.
    """

    terms: tuple[tuple[Exponent, Fraction], ...] = tuple()
    """
    (exponent, nonzero coefficient) pairs in decreasing monomial order.
    """

    nvars: int = 3

    @classmethod
    def from_terms(
        cls,
        terms: Union[Mapping[Exponent, Scalar], Iterable[tuple[Exponent, Scalar]]],
        degree: Optional[int] = None,
        nvars: Optional[int] = None,
    ) -> "Form":
        """
        Build a canonical form, summing repeated monomials and dropping zeros.

        Raises:
            ValueError: if a monomial does not match the declared degree.
        """
        if isinstance(terms, Mapping):
            terms = terms.items()
        collected: dict[Exponent, Fraction] = {}
        for exponent, coefficient in terms:
            exponent = tuple(exponent)
            collected[exponent] = collected.get(exponent, Fraction(0)) + Fraction(
                coefficient
            )
        collected = {key: value for key, value in collected.items() if value != 0}

        if nvars is None:
            if collected:
                nvars = len(next(iter(collected)))
            else:
                nvars = cls.__dataclass_fields__["nvars"].default
        if degree is None:
            degree = sum(next(iter(collected))) if collected else 0

        for exponent in collected:
            if len(exponent) != nvars:
                raise ValueError(f"exponent {exponent} does not have {nvars} entries")
            if sum(exponent) != degree:
                raise ValueError(
                    f"monomial {exponent} is not of the declared degree {degree}"
                )
        index = monomial_index(nvars, degree)
        ordered = tuple(sorted(collected.items(), key=lambda item: index[item[0]]))
        return cls(degree=degree, terms=ordered, nvars=nvars)

    @classmethod
    def zero(cls, degree: int, nvars: Optional[int] = None) -> "Form":
        return cls.from_terms({}, degree=degree, nvars=nvars)

    @classmethod
    def constant(cls, value: Scalar, nvars: Optional[int] = None) -> "Form":
        nvars = nvars or cls.__dataclass_fields__["nvars"].default
        return cls.from_terms({(0,) * nvars: value}, degree=0, nvars=nvars)

    @classmethod
    def variable(cls, index: int, nvars: Optional[int] = None) -> "Form":
        nvars = nvars or cls.__dataclass_fields__["nvars"].default
        exponent = tuple(1 if position == index else 0 for position in range(nvars))
        return cls.from_terms({exponent: 1}, degree=1, nvars=nvars)

    @classmethod
    def linear(cls, coefficients: Sequence[Scalar]) -> "Form":
        """
        Linear form sum(c_i * x_i).
        """
        nvars = len(coefficients)
        terms = {}
        for index, coefficient in enumerate(coefficients):
            exponent = tuple(1 if position == index else 0 for position in range(nvars))
            terms[exponent] = coefficient
        return cls.from_terms(terms, degree=1, nvars=nvars)

    @classmethod
    def from_vector(cls, vector: Sequence[Scalar], degree: int, nvars: int) -> "Form":
        """
        Inverse of :meth:`coefficient_vector`.
        """
        basis = monomials(nvars, degree)
        if len(vector) != len(basis):
            raise ValueError(
                f"expected {len(basis)} coefficients for degree {degree}, got {len(vector)}"
            )
        return cls.from_terms(zip(basis, vector), degree=degree, nvars=nvars)

    # -- inspection --

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> dict[Exponent, Fraction]:
        return dict(self.terms)

    def coefficient(self, exponent: Exponent) -> Fraction:
        return self.as_dict().get(tuple(exponent), Fraction(0))

    def coefficient_vector(self) -> list[Fraction]:
        """
        Coefficients on the monomial basis of the form's degree.
        """
        values = self.as_dict()
        return [values.get(exponent, Fraction(0)) for exponent in monomials(self.nvars, self.degree)]

    def leading_coefficient(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        return self.terms[0][1]

    # -- arithmetic --

    def _same_kind(self, other: "Form"):
        if not isinstance(other, Form):
            raise TypeError(f"expected a Form, got {type(other)}")
        if other.nvars != self.nvars:
            raise ValueError(
                f"cannot combine forms in {self.nvars} and {other.nvars} variables"
            )

    def __add__(self, other: Union["Form", Scalar]) -> "Form":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self
            other = type(self).constant(other, nvars=self.nvars)
        self._same_kind(other)
        if other.is_zero and other.degree != self.degree:
            return self
        if self.is_zero and other.degree != self.degree:
            return other
        if other.degree != self.degree:
            raise ValueError(
                f"cannot add forms of degrees {self.degree} and {other.degree}"
            )
        return type(self).from_terms(
            self.terms + other.terms, degree=self.degree, nvars=self.nvars
        )

    def __radd__(self, other: Scalar) -> "Form":
        return self.__add__(other)

    def __neg__(self) -> "Form":
        return type(self).from_terms(
            [(exponent, -value) for exponent, value in self.terms],
            degree=self.degree,
            nvars=self.nvars,
        )

    def __sub__(self, other: Union["Form", Scalar]) -> "Form":
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "Form":
        return (-self) + other

    def __mul__(self, other: Union["Form", Scalar]) -> "Form":
        if isinstance(other, (int, Fraction)):
            return type(self).from_terms(
                [(exponent, value * other) for exponent, value in self.terms],
                degree=self.degree,
                nvars=self.nvars,
            )
        self._same_kind(other)
        product: dict[Exponent, Fraction] = {}
        for exponent1, value1 in self.terms:
            for exponent2, value2 in other.terms:
                exponent = tuple(e1 + e2 for e1, e2 in zip(exponent1, exponent2))
                product[exponent] = product.get(exponent, Fraction(0)) + value1 * value2
        return type(self).from_terms(
            product, degree=self.degree + other.degree, nvars=self.nvars
        )

    def __rmul__(self, other: Scalar) -> "Form":
        return self.__mul__(other)

    def __truediv__(self, other: Scalar) -> "Form":
        if not isinstance(other, (int, Fraction)):
            raise TypeError(f"forms can only be divided by scalars, got {type(other)}")
        return self * (1 / Fraction(other))

    def __pow__(self, exponent: int) -> "Form":
        if exponent < 0:
            raise ValueError(f"negative power {exponent} of a form")
        result = type(self).constant(1, nvars=self.nvars)
        for _ in range(exponent):
            result = result * self
        return result

    # -- calculus and evaluation --

    def derivative(self, index: int) -> "Form":
        if self.degree < 1:
            raise PreconditionError(f"cannot differentiate the degree-0 form {self}")
        terms = []
        for exponent, value in self.terms:
            if exponent[index] == 0:
                continue
            lowered = list(exponent)
            lowered[index] -= 1
            terms.append((tuple(lowered), value * exponent[index]))
        return type(self).from_terms(terms, degree=self.degree - 1, nvars=self.nvars)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(point)}")
        total = Fraction(0)
        values = [Fraction(value) for value in point]
        for exponent, coefficient in self.terms:
            term = coefficient
            for value, power in zip(values, exponent):
                if power:
                    term *= value**power
            total += term
        return total

    def substitute(self, forms: Sequence["Form"]) -> "Form":
        """
        Compose with a polynomial map: replace variable i by ``forms[i]``.

        All substituted forms must share the same degree ``e``; the result has
        degree ``self.degree * e`` and the type and variable count of the
        substituted forms.
        """
        if len(forms) != self.nvars:
            raise ValueError(f"expected {self.nvars} forms, got {len(forms)}")
        target = forms[0]
        inner_degree = target.degree
        if any(form.degree != inner_degree for form in forms):
            raise ValueError("substituted forms must share the same degree")
        result = type(target).zero(self.degree * inner_degree, nvars=target.nvars)
        powers: dict[tuple[int, int], Form] = {}
        for exponent, coefficient in self.terms:
            term = type(target).constant(coefficient, nvars=target.nvars)
            for index, power in enumerate(exponent):
                if not power:
                    continue
                key = (index, power)
                if key not in powers:
                    powers[key] = forms[index] ** power
                term = term * powers[key]
            result = result + term
        return result

    def primitive(self) -> "Form":
        """
        Scalar multiple with coprime integer coefficients whose first
        (highest monomial) coefficient is positive.
        """
        if self.is_zero:
            return self
        denominators = [value.denominator for _, value in self.terms]
        scale = math.lcm(*denominators)
        integers = [int(value * scale) for _, value in self.terms]
        divisor = math.gcd(*integers)
        if integers[0] < 0:
            divisor = -divisor
        return self * Fraction(scale, divisor)

    def divide_by_variable_power(self, index: int, power: int) -> "Form":
        """
        Exact division by ``x_index ** power``.

        Raises:
            ValueError: if some monomial is not divisible.
        """
        terms = []
        for exponent, value in self.terms:
            if exponent[index] < power:
                raise ValueError(f"{self} is not divisible by variable {index}^{power}")
            lowered = list(exponent)
            lowered[index] -= power
            terms.append((tuple(lowered), value))
        return type(self).from_terms(terms, degree=self.degree - power, nvars=self.nvars)

    # -- printing --

    def to_string(self, variables: Optional[Sequence[str]] = None) -> str:
        """
        Canonical ASCII serialization, e.g. ``x0^3-x1^3+1/2*x2^3``.
        """
        if self.is_zero:
            return "0"
        variables = variables or default_variables(self.nvars)
        chunks = []
        for position, (exponent, value) in enumerate(self.terms):
            sign = "-" if value < 0 else "+"
            magnitude = abs(value)
            factors = []
            for name, power in zip(variables, exponent):
                if power == 1:
                    factors.append(name)
                elif power > 1:
                    factors.append(f"{name}^{power}")
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = f"{magnitude}*" + "*".join(factors)
            if position == 0:
                chunks.append(body if sign == "+" else f"-{body}")
            else:
                chunks.append(f"{sign}{body}")
        return "".join(chunks)

    def __str__(self) -> str:
        return self.to_string()


@dataclasses.dataclass(frozen=True)
class BinaryForm(Form):
    """
    Homogeneous polynomial in the two coordinates s, t of the projective line.
    """

    nvars: int = 2


@dataclasses.dataclass(frozen=True)
class PointP2:
    """
    Point of the projective plane with integer coordinates.

    Coordinates are normalized on construction: primitive (gcd 1) with the
    first nonzero entry positive, so equal points compare and hash equal.
    """

    coordinates: tuple[int, int, int]

    def __post_init__(self):
        values = tuple(int(value) for value in self.coordinates)
        if len(values) != 3:
            raise ValueError(f"a plane point needs 3 coordinates, got {values}")
        if not any(values):
            raise ValueError("[0:0:0] is not a projective point")
        divisor = math.gcd(*values)
        first = next(value for value in values if value)
        if first < 0:
            divisor = -divisor
        object.__setattr__(
            self, "coordinates", tuple(value // divisor for value in values)
        )

    @classmethod
    def of(cls, *values: Scalar) -> "PointP2":
        """
        Build a point from rational coordinates, clearing denominators.
        """
        if len(values) == 1:
            values = tuple(values[0])
        fractions = [Fraction(value) for value in values]
        scale = math.lcm(*(value.denominator for value in fractions))
        return cls(tuple(int(value * scale) for value in fractions))

    from_rationals = of

    def __iter__(self):
        return iter(self.coordinates)

    def __getitem__(self, index: int) -> int:
        return self.coordinates[index]

    def __str__(self) -> str:
        return "[" + ":".join(str(value) for value in self.coordinates) + "]"


_POINT_PATTERN = re.compile(r"^\s*\[\s*([^\]]+)\]\s*$")


def parse_point(text: str) -> PointP2:
    """
    Parse ``"[a:b:c]"`` with integer or ``p/q`` entries.
    """
    match = _POINT_PATTERN.match(text)
    if not match:
        raise ParseError(f"malformed point '{text}', expected [a:b:c]")
    parts = [part.strip() for part in match.group(1).split(":")]
    if len(parts) != 3:
        raise ParseError(f"malformed point '{text}', expected 3 coordinates")
    try:
        values = [Fraction(part) for part in parts]
    except (ValueError, ZeroDivisionError) as error:
        raise ParseError(f"malformed coordinate in '{text}': {error}") from error
    try:
        return PointP2.of(*values)
    except ValueError as error:
        raise ParseError(str(error)) from error


# -- parsing ------------------------------------------------------------------

_TOKEN_PATTERN = re.compile(
    r"\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*/^()]))"
)

_ALIASES = {"x": "x0", "y": "x1", "z": "x2"}

Polynomial = dict[Exponent, Fraction]


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    position = 0
    stripped = text.rstrip()
    while position < len(stripped):
        match = _TOKEN_PATTERN.match(stripped, position)
        if not match or match.end() == position:
            raise ParseError(f"unexpected character in '{text}' at position {position}")
        kind = match.lastgroup
        tokens.append((kind, match.group(kind)))
        position = match.end()
    return tokens


class _Parser:
    """
    Recursive descent over + - * / ^ and parentheses, producing a dict
    polynomial that may be inhomogeneous until the final check.
    """

    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.tokens = _tokenize(text)
        self.position = 0
        self.variables = {name: index for index, name in enumerate(variables)}
        if len(variables) == 3 and tuple(variables) == DEFAULT_VARIABLES[3]:
            for alias, target in _ALIASES.items():
                self.variables[alias] = self.variables[target]
        self.nvars = len(variables)

    def peek(self) -> Optional[tuple[str, str]]:
        if self.position < len(self.tokens):
            return self.tokens[self.position]
        return None

    def take(self) -> tuple[str, str]:
        token = self.peek()
        if token is None:
            raise ParseError(f"unexpected end of input in '{self.text}'")
        self.position += 1
        return token

    def expect(self, value: str):
        kind, found = self.take()
        if found != value:
            raise ParseError(f"expected '{value}' but found '{found}' in '{self.text}'")

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ParseError("empty polynomial expression")
        result = self.expression()
        if self.peek() is not None:
            raise ParseError(f"trailing input '{self.peek()[1]}' in '{self.text}'")
        return result

    def expression(self) -> Polynomial:
        result = self.term()
        while self.peek() is not None and self.peek()[1] in "+-":
            _, operator = self.take()
            other = self.term()
            if operator == "-":
                other = _scale(other, Fraction(-1))
            result = _add(result, other)
        return result

    def term(self) -> Polynomial:
        result = self.unary()
        while self.peek() is not None and self.peek()[1] in ("*", "/"):
            _, operator = self.take()
            other = self.unary()
            if operator == "*":
                result = _multiply(result, other)
            else:
                divisor = _as_constant(other)
                if divisor is None:
                    raise ParseError(f"division by a non-constant in '{self.text}'")
                if divisor == 0:
                    raise ParseError(f"malformed rational (division by zero) in '{self.text}'")
                result = _scale(result, 1 / divisor)
        return result

    def unary(self) -> Polynomial:
        token = self.peek()
        if token is not None and token[1] in ("-", "+"):
            self.take()
            value = self.unary()
            return _scale(value, Fraction(-1)) if token[1] == "-" else value
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        token = self.peek()
        if token is not None and token[1] in ("^", "**"):
            self.take()
            kind, value = self.take()
            if kind != "number":
                raise ParseError(f"exponent must be a non-negative integer in '{self.text}'")
            result = {(0,) * self.nvars: Fraction(1)}
            for _ in range(int(value)):
                result = _multiply(result, base)
            return result
        return base

    def atom(self) -> Polynomial:
        kind, value = self.take()
        if kind == "number":
            if int(value) == 0:
                return {}
            return {(0,) * self.nvars: Fraction(int(value))}
        if kind == "name":
            if value not in self.variables:
                raise ParseError(f"unknown symbol '{value}' in '{self.text}'")
            index = self.variables[value]
            exponent = tuple(1 if position == index else 0 for position in range(self.nvars))
            return {exponent: Fraction(1)}
        if value == "(":
            inner = self.expression()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected '{value}' in '{self.text}'")


def _add(left: Polynomial, right: Polynomial) -> Polynomial:
    result = dict(left)
    for exponent, value in right.items():
        result[exponent] = result.get(exponent, Fraction(0)) + value
    return {key: value for key, value in result.items() if value != 0}


def _scale(poly: Polynomial, factor: Fraction) -> Polynomial:
    return {key: value * factor for key, value in poly.items() if value * factor != 0}


def _multiply(left: Polynomial, right: Polynomial) -> Polynomial:
    result: Polynomial = {}
    for exponent1, value1 in left.items():
        for exponent2, value2 in right.items():
            exponent = tuple(a + b for a, b in zip(exponent1, exponent2))
            result[exponent] = result.get(exponent, Fraction(0)) + value1 * value2
    return {key: value for key, value in result.items() if value != 0}


def _as_constant(poly: Polynomial) -> Optional[Fraction]:
    if not poly:
        return Fraction(0)
    if len(poly) == 1:
        exponent, value = next(iter(poly.items()))
        if not any(exponent):
            return value
    return None


def parse_form(
    text: str,
    degree: Optional[int] = None,
    variables: Optional[Sequence[str]] = None,
    form_type: type = Form,
) -> Form:
    """
    Parse a homogeneous polynomial expression.

    Args:
        text: expression such as ``"x0*x1+x1*x2+x2*x0"`` or ``"x^3-y^3+1/2*z^3"``.
        degree: declared degree; mandatory to give the zero form a degree.
        variables: variable names, default ``x0, x1, x2`` (with aliases x, y, z).
        form_type: Form subclass to build.

    Raises:
        ParseError: on unknown symbols, malformed rationals, inhomogeneous
            input or a degree different from the declared one.
    """
    variables = tuple(variables or DEFAULT_VARIABLES[3])
    poly = _Parser(text, variables).parse()
    degrees = {sum(exponent) for exponent in poly}
    if len(degrees) > 1:
        raise ParseError(f"'{text}' is not homogeneous (degrees {sorted(degrees)})")
    if degrees:
        found = degrees.pop()
        if degree is not None and degree != found:
            raise ParseError(f"'{text}' has degree {found}, expected {degree}")
        degree = found
    elif degree is None:
        degree = 0
    return form_type.from_terms(poly, degree=degree, nvars=len(variables))


def gradient(form: Form) -> tuple[Form, ...]:
    """
    Tuple of the partial derivatives of a form.

    Raises:
        PreconditionError: for a degree-0 form.
    """
    if form.degree < 1:
        raise PreconditionError(f"gradient of the degree-0 form {form} is undefined")
    return tuple(form.derivative(index) for index in range(form.nvars))
