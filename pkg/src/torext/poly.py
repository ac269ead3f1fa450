"""Sparse multivariate polynomials over arbitrary-precision integers.

Terms are a map from exponent vectors to nonzero int coefficients; the
variable list fixes the exponent order. Printing is canonical and
``parse_polynomial`` inverts it exactly, so polynomials round-trip
through their text form.
"""

from __future__ import annotations

from .errors import PolynomialSyntaxError, UnknownVariable


class IntPolynomial:
    """Immutable sparse polynomial with integer coefficients.

    >>> p = parse_polynomial("x^2*y - 3", ("x", "y"))
    >>> p.terms
    {(2, 1): 1, (0, 0): -3}
    >>> str(p)
    'x^2*y - 3'
    >>> p.evaluate((2, 5))
    17
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be distinct")
        width = len(variables)
        clean: dict[tuple[int, ...], int] = {}
        for expo, coeff in terms.items():
            expo = tuple(expo)
            if len(expo) != width:
                raise ValueError("exponent vector length does not match variables")
            if any(not isinstance(e, int) or e < 0 for e in expo):
                raise ValueError("exponents must be nonnegative integers")
            if not isinstance(coeff, int):
                raise TypeError("coefficients must be int")
            if coeff:
                merged = clean.get(expo, 0) + coeff
                if merged:
                    clean[expo] = merged
                else:
                    clean.pop(expo, None)
        self.variables = variables
        self.terms = clean

    @classmethod
    def zero(cls, variables) -> IntPolynomial:
        return cls(variables, {})

    @classmethod
    def constant(cls, variables, value: int) -> IntPolynomial:
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, variables, name: str) -> IntPolynomial:
        variables = tuple(variables)
        expo = [0] * len(variables)
        expo[variables.index(name)] = 1
        return cls(variables, {tuple(expo): 1})

    # -- ring operations ------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, int):
            return IntPolynomial.constant(self.variables, other)
        if isinstance(other, IntPolynomial):
            if other.variables != self.variables:
                raise ValueError("polynomials are over different variable lists")
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for expo, coeff in other.terms.items():
            terms[expo] = terms.get(expo, 0) + coeff
        return IntPolynomial(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                terms[expo] = terms.get(expo, 0) + c1 * c2
        return IntPolynomial(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = IntPolynomial.constant(self.variables, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, IntPolynomial)
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # -- queries ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree_in(self, name: str) -> int:
        """Degree in one variable; zero polynomial reports 0."""
        i = self.variables.index(name)
        return max((e[i] for e in self.terms), default=0)

    def min_degree_in(self, name: str) -> int:
        i = self.variables.index(name)
        return min((e[i] for e in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def coefficient_of(self, name: str, power: int) -> IntPolynomial:
        """Coefficient of name**power, a polynomial in the other variables
        (returned over the full variable list with that slot zeroed)."""
        i = self.variables.index(name)
        terms = {}
        for expo, coeff in self.terms.items():
            if expo[i] == power:
                reduced = list(expo)
                reduced[i] = 0
                terms[tuple(reduced)] = coeff
        return IntPolynomial(self.variables, terms)

    # -- calculus and evaluation ------------------------------------------

    def derivative(self, name: str) -> IntPolynomial:
        i = self.variables.index(name)
        terms = {}
        for expo, coeff in self.terms.items():
            if expo[i] > 0:
                reduced = list(expo)
                reduced[i] -= 1
                key = tuple(reduced)
                terms[key] = terms.get(key, 0) + coeff * expo[i]
        return IntPolynomial(self.variables, terms)

    def evaluate(self, values) -> int:
        """Exact value at integer coordinates."""
        if len(values) != len(self.variables):
            raise ValueError("value count does not match variables")
        total = 0
        for expo, coeff in self.terms.items():
            term = coeff
            for val, e in zip(values, expo):
                if e:
                    term *= val**e
            total += term
        return total

    def evaluate_mod(self, values, p: int) -> int:
        if len(values) != len(self.variables):
            raise ValueError("value count does not match variables")
        total = 0
        for expo, coeff in self.terms.items():
            term = coeff % p
            for val, e in zip(values, expo):
                if e:
                    term = term * pow(val, e, p) % p
            total = (total + term) % p
        return total

    def reduce_mod(self, p: int) -> IntPolynomial:
        """Coefficients reduced into [0, p)."""
        return IntPolynomial(
            self.variables, {e: c % p for e, c in self.terms.items()}
        )

    def compose(self, mapping: dict, target_variables) -> IntPolynomial:
        """Substitute a polynomial (or int) for every variable.

        ``mapping`` must cover each variable of self; images live over
        ``target_variables``.
        """
        target_variables = tuple(target_variables)
        images = []
        for name in self.variables:
            if name not in mapping:
                raise ValueError(f"no image provided for variable {name!r}")
            image = mapping[name]
            if isinstance(image, int):
                image = IntPolynomial.constant(target_variables, image)
            if image.variables != target_variables:
                raise ValueError("image variables do not match the target list")
            images.append(image)
        one = IntPolynomial.constant(target_variables, 1)
        # cache successive powers of each image
        powers: list[list[IntPolynomial]] = [[one] for _ in images]
        result = IntPolynomial.zero(target_variables)
        for expo, coeff in sorted(self.terms.items()):
            term = IntPolynomial.constant(target_variables, coeff)
            for i, e in enumerate(expo):
                while len(powers[i]) <= e:
                    powers[i].append(powers[i][-1] * images[i])
                if e:
                    term = term * powers[i][e]
            result = result + term
        return result

    def divide_by_power(self, name: str, k: int) -> IntPolynomial:
        """Exact division by name**k; every term must carry that power."""
        i = self.variables.index(name)
        terms = {}
        for expo, coeff in self.terms.items():
            if expo[i] < k:
                raise ValueError(f"term not divisible by {name}^{k}")
            reduced = list(expo)
            reduced[i] -= k
            terms[tuple(reduced)] = coeff
        return IntPolynomial(self.variables, terms)

    def rename(self, target_variables) -> IntPolynomial:
        """Same terms over a renamed variable list of equal length."""
        target_variables = tuple(target_variables)
        if len(target_variables) != len(self.variables):
            raise ValueError("renaming must preserve the variable count")
        return IntPolynomial(target_variables, dict(self.terms))

    # -- printing ----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for expo, coeff in sorted(self.terms.items(), reverse=True):
            factors = []
            for name, e in zip(self.variables, expo):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if factors:
                body = "*".join(factors)
                if abs(coeff) != 1:
                    body = f"{abs(coeff)}*{body}"
            else:
                body = str(abs(coeff))
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"IntPolynomial({str(self)!r}, variables={self.variables!r})"


# -- parser ----------------------------------------------------------------

_OPS = set("+-*^()")


def _tokenize(text: str):
    tokens = []
    i = 0
    length = len(text)
    while i < length:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < length and text[j].isdigit():
                j += 1
            tokens.append(("INT", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < length and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("NAME", text[i:j], i))
            i = j
        elif ch in _OPS:
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise PolynomialSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("END", "", length))
    return tokens


class _Parser:
    def __init__(self, tokens, variables):
        self.tokens = tokens
        self.pos = 0
        self.variables = tuple(variables)

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, kind):
        token = self.peek()
        if token[0] != kind:
            raise PolynomialSyntaxError(
                f"expected {kind!r}, found {token[1]!r}" if token[1] else f"expected {kind!r}",
                token[2],
            )
        return self.advance()

    def parse(self) -> IntPolynomial:
        result = self.expression()
        tail = self.peek()
        if tail[0] != "END":
            raise PolynomialSyntaxError(f"unexpected {tail[1]!r}", tail[2])
        return result

    def expression(self) -> IntPolynomial:
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> IntPolynomial:
        value = self.unary()
        while self.peek()[0] == "*":
            self.advance()
            value = value * self.unary()
        return value

    def unary(self) -> IntPolynomial:
        token = self.peek()
        if token[0] == "-":
            self.advance()
            return -self.unary()
        if token[0] == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> IntPolynomial:
        base = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            exponent = self.expect("INT")
            return base ** int(exponent[1])
        return base

    def atom(self) -> IntPolynomial:
        token = self.advance()
        kind, value, pos = token
        if kind == "INT":
            return IntPolynomial.constant(self.variables, int(value))
        if kind == "NAME":
            if value not in self.variables:
                raise UnknownVariable(value, pos)
            return IntPolynomial.variable(self.variables, value)
        if kind == "(":
            inner = self.expression()
            self.expect(")")
            return inner
        raise PolynomialSyntaxError(
            f"unexpected {value!r}" if value else "unexpected end of input", pos
        )


def parse_polynomial(text: str, variables) -> IntPolynomial:
    """Parse polynomial text over the given variables.

    Grammar: integer literals, declared variable names, ``+ - *``,
    ``^`` with a nonnegative integer exponent, and parentheses; implicit
    multiplication is a syntax error.
    """
    return _Parser(_tokenize(text), variables).parse()
