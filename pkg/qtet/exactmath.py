"""Exact scalars: the deformation parameter q, its powers and q-integers.

Two backends share one interface. ``rational`` works in sympy's ``QQ`` with a
fixed rational q; ``symbolic`` works in ``QQ(q)``, the field of rational
functions in an indeterminate q. Scalars are plain domain elements, so every
value is kept in reduced canonical form by the domain itself.
"""
import os
import re
from dataclasses import dataclass
from typing import Any, List

from sympy import QQ, Rational, Symbol, sympify
from sympy.core.sympify import SympifyError
from sympy.polys.polyerrors import CoercionFailed

from .reports import InputError

# env/config
DEFAULT_Q = os.getenv("QTET_Q", "2")
DEFAULT_BACKEND = os.getenv("QTET_BACKEND", "rational")

Q_SYMBOL = Symbol("q")
_RATIONAL_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


@dataclass(frozen=True)
class QParam:
    """The deformation parameter together with the field it lives in."""

    domain: Any
    value: Any
    text: str
    symbolic: bool = False

    @classmethod
    def rational(cls, value="2") -> "QParam":
        text = str(value).replace(" ", "")
        if not _RATIONAL_RE.match(text):
            raise InputError(f"q must be a rational 'p' or 'p/q', got {value!r}")
        r = Rational(text)
        if r == 0 or abs(r) == 1:
            raise InputError(f"q must not be 0, 1 or -1 (got {text})")
        return cls(QQ, QQ.from_sympy(r), str(r))

    @classmethod
    def indeterminate(cls) -> "QParam":
        K = QQ.frac_field(Q_SYMBOL)
        return cls(K, K.from_sympy(Q_SYMBOL), "q", symbolic=True)

    @classmethod
    def parse(cls, text) -> "QParam":
        if str(text).strip() == "q":
            return cls.indeterminate()
        return cls.rational(text)

    @classmethod
    def from_env(cls) -> "QParam":
        if os.getenv("QTET_BACKEND", DEFAULT_BACKEND) == "symbolic":
            return cls.indeterminate()
        return cls.parse(os.getenv("QTET_Q", DEFAULT_Q))

    @property
    def one(self):
        return self.domain.one

    @property
    def zero(self):
        return self.domain.zero

    def convert(self, x):
        if isinstance(x, str):
            return self.parse_scalar(x)
        return self.domain.convert(x)

    def is_zero(self, x) -> bool:
        return self.domain.is_zero(x)

    def power(self, m: int):
        return q_power(self, m)

    def bracket(self, n: int):
        return q_bracket(self, n)

    def parse_scalar(self, text: str):
        s = str(text).replace(" ", "")
        if not self.symbolic:
            if not _RATIONAL_RE.match(s):
                raise InputError(f"not an exact rational scalar: {text!r}")
            return self.domain.from_sympy(Rational(s))
        try:
            expr = sympify(s, locals={"q": Q_SYMBOL})
            return self.domain.from_sympy(expr)
        except (SympifyError, CoercionFailed, TypeError, ZeroDivisionError) as e:
            raise InputError(f"not a rational function of q: {text!r} ({e})")

    def format_scalar(self, x) -> str:
        return str(self.domain.to_sympy(x))

    def format_matrix(self, M) -> List[List[str]]:
        return [[self.format_scalar(x) for x in row] for row in M.to_list()]


def q_power(p: QParam, m: int):
    if m >= 0:
        return p.value ** m
    return p.one / (p.value ** (-m))


def q_bracket(p: QParam, n: int):
    if n < 0:
        raise InputError(f"q-integer needs n >= 0, got {n}")
    return (q_power(p, n) - q_power(p, -n)) / (p.value - p.one / p.value)
