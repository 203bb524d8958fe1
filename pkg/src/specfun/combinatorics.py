import math
from functools import lru_cache

from src.specfun.exceptions import SpecialFunctionDomainError


def factorial(n: int) -> int:
    """n! as an exact integer."""
    if n < 0:
        raise SpecialFunctionDomainError(f"factorial needs n >= 0, got {n}")
    return math.factorial(n)


@lru_cache(maxsize=256)
def double_factorial(n: int) -> int:
    """n!! as an exact integer, with (-1)!! = 0!! = 1."""
    if n < -1:
        raise SpecialFunctionDomainError(f"double_factorial needs n >= -1, got {n}")
    return math.prod(range(n, 0, -2))


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)
