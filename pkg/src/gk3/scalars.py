"""Exact scalars: rationals and elements of a real quadratic field Q(sqrt d).

Every coordinate in this package is a ``QuadScalar`` a + b*sqrt(d) with
rational a, b and a fixed squarefree integer d >= 2, or a ``ComplexQuad``
built from two of them.  Purely rational values carry no field tag and
combine with anything; combining values tagged with two different d is an
error, so a computation never silently mixes sqrt(2) with sqrt(3).

All comparisons are exact.  The sign of a + b*sqrt(d) is decided by case
analysis on the signs of a and b, falling back to comparing a^2 against
d*b^2 when they disagree; no floating point is involved anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ValidationError


def is_squarefree(n: int) -> bool:
    """True when no square > 1 divides n (n >= 1)."""
    if n < 1:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


def check_field_tag(d: int) -> int:
    if not isinstance(d, int) or isinstance(d, bool) or d < 2 or not is_squarefree(d):
        raise ValidationError(f"field tag must be a squarefree integer >= 2, got {d!r}")
    return d


class QuadScalar:
    """An exact element a + b*sqrt(d) of Q or of a real quadratic field."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int | None = None):
        a = a if isinstance(a, Fraction) else Fraction(a)
        b = b if isinstance(b, Fraction) else Fraction(b)
        if b == 0:
            d = None  # a rational value lives in every field
        elif d is None:
            raise ValidationError("irrational part requires a square-root tag d")
        else:
            check_field_tag(d)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("QuadScalar is immutable")

    # -- predicates ------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    @property
    def is_integer(self) -> bool:
        return self.b == 0 and self.a.denominator == 1

    def __bool__(self) -> bool:
        return not self.is_zero

    # -- coercion and field-tag bookkeeping ------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, QuadScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadScalar(x)
        return None

    def _join(self, other: QuadScalar) -> int | None:
        if self.d is not None and other.d is not None and self.d != other.d:
            raise ValidationError(
                f"cannot mix sqrt({self.d}) and sqrt({other.d}) values"
            )
        return self.d if self.d is not None else other.d

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d = self._join(other)
        return QuadScalar(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self.a, -self.b, self.d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d = self._join(other)
        return QuadScalar(self.a - other.a, self.b - other.b, d)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d = self._join(other)
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        if b1 == 0:
            if b2 == 0:
                return QuadScalar(a1 * a2)
            return QuadScalar(a1 * a2, a1 * b2, d)
        if b2 == 0:
            return QuadScalar(a1 * a2, b1 * a2, d)
        return QuadScalar(a1 * a2 + d * b1 * b2, a1 * b2 + b1 * a2, d)

    __rmul__ = __mul__

    def inverse(self) -> QuadScalar:
        if self.is_zero:
            raise ZeroDivisionError("division by zero QuadScalar")
        if self.b == 0:
            return QuadScalar(1 / self.a)
        # (a + b sqrt d)^-1 = (a - b sqrt d) / (a^2 - d b^2); the norm is
        # nonzero because sqrt(d) is irrational for squarefree d >= 2.
        n = self.a * self.a - self.d * self.b * self.b
        return QuadScalar(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    # -- exact ordering --------------------------------------------------

    def sign(self) -> int:
        """Exact sign in {-1, 0, 1}, decided by rational comparisons only."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # a and b have opposite signs; a^2 = d b^2 cannot happen since
        # sqrt(d) is irrational, so the comparison below is never a tie.
        if (a * a > self.d * b * b) == (a > 0):
            return 1
        return -1

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.b != 0 and other.b != 0 and self.d != other.d:
            return False
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() < 0

    def __le__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() <= 0

    def __gt__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() > 0

    def __ge__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() >= 0

    # -- conversions -----------------------------------------------------

    def __float__(self) -> float:
        if self.b == 0:
            return float(self.a)
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __repr__(self) -> str:
        if self.b == 0:
            return f"QuadScalar({self.a})"
        return f"QuadScalar({self.a}, {self.b}, d={self.d})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        root = f"sqrt({self.d})"
        if self.b == 1:
            irr = root
        elif self.b == -1:
            irr = f"-{root}"
        else:
            irr = f"{self.b}*{root}"
        if self.a == 0:
            return irr
        sign = "+" if self.b > 0 else "-"
        return f"{self.a} {sign} {irr.lstrip('-')}"


QS_ZERO = QuadScalar(0)
QS_ONE = QuadScalar(1)


def as_quad(x) -> QuadScalar:
    """Coerce an int, Fraction or QuadScalar to a QuadScalar."""
    q = QuadScalar._coerce(x)
    if q is None:
        raise ValidationError(f"cannot interpret {x!r} as an exact scalar")
    return q


class ComplexQuad:
    """A complex number whose real and imaginary parts are QuadScalars."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", as_quad(re))
        object.__setattr__(self, "im", as_quad(im))

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("ComplexQuad is immutable")

    @property
    def is_zero(self) -> bool:
        return self.re.is_zero and self.im.is_zero

    @property
    def is_real(self) -> bool:
        return self.im.is_zero

    def __bool__(self) -> bool:
        return not self.is_zero

    @staticmethod
    def _coerce(x):
        if isinstance(x, ComplexQuad):
            return x
        if isinstance(x, (int, Fraction, QuadScalar)):
            return ComplexQuad(x)
        return None

    def conjugate(self) -> ComplexQuad:
        return ComplexQuad(self.re, -self.im)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ComplexQuad(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexQuad(-self.re, -self.im)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ComplexQuad(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.im.is_zero:
            if other.im.is_zero:
                return ComplexQuad(self.re * other.re)
            return ComplexQuad(self.re * other.re, self.re * other.im)
        if other.im.is_zero:
            return ComplexQuad(self.re * other.re, self.im * other.re)
        return ComplexQuad(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> ComplexQuad:
        if self.is_zero:
            raise ZeroDivisionError("division by zero ComplexQuad")
        n = (self.re * self.re + self.im * self.im).inverse()
        return ComplexQuad(self.re * n, -self.im * n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"ComplexQuad({self.re!r}, {self.im!r})"

    def __str__(self) -> str:
        if self.im.is_zero:
            return str(self.re)
        if self.re.is_zero:
            return f"({self.im})*i"
        return f"({self.re}) + ({self.im})*i"


CQ_ZERO = ComplexQuad(0)
CQ_ONE = ComplexQuad(1)


def as_complex(x) -> ComplexQuad:
    """Coerce an int, Fraction, QuadScalar or ComplexQuad to a ComplexQuad."""
    z = ComplexQuad._coerce(x)
    if z is None:
        raise ValidationError(f"cannot interpret {x!r} as an exact complex scalar")
    return z


def field_tag_of(values) -> int | None:
    """The common square-root tag of an iterable of scalars.

    Raises if two different tags are present.
    """
    tag: int | None = None
    for v in values:
        parts = (v.re, v.im) if isinstance(v, ComplexQuad) else (v,)
        for p in parts:
            if p.d is None:
                continue
            if tag is None:
                tag = p.d
            elif tag != p.d:
                raise ValidationError(
                    f"cannot mix sqrt({tag}) and sqrt({p.d}) values"
                )
    return tag
