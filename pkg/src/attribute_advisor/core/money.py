from decimal import ROUND_HALF_UP, Decimal, InvalidOperation
from typing import Union

from .errors import ConfigError

CENTS_PER_UNIT = 100


def to_cents(amount: Union[str, int, float, Decimal]) -> int:
    """Convert an amount in whole currency units to integer cents."""
    try:
        value = Decimal(str(amount).strip())
    except InvalidOperation as exc:
        raise ConfigError(f"{amount!r} is not a money amount") from exc
    if not value.is_finite():
        raise ConfigError(f"{amount!r} is not a money amount")
    return int((value * CENTS_PER_UNIT).quantize(Decimal(1), rounding=ROUND_HALF_UP))


def format_cents(cents: int) -> str:
    units, rest = divmod(abs(cents), CENTS_PER_UNIT)
    sign = "-" if cents < 0 else ""
    return f"{sign}{units}.{rest:02d}"
