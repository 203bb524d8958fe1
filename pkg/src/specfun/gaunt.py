from functools import lru_cache

from sympy.physics.wigner import gaunt as sympy_gaunt

from src.specfun.schemas import GauntKey


@lru_cache(maxsize=4096)
def _gaunt_exact(l1: int, m1: int, l2: int, m2: int, l3: int, m3: int) -> float:
    # sympy integrates Y1 Y2 Y3 without conjugation; conj(Y_l^m) = (-1)^m Y_l^-m
    value = sympy_gaunt(l1, l2, l3, -m1, m2, m3)
    return float((-1) ** m1 * value)


def gaunt(key: GauntKey) -> float:
    """
    Gaunt coefficient <l1 m1|l2 m2|l3 m3> = integral of conj(Y_l1^m1) Y_l2^m2 Y_l3^m3.

    Evaluated from the exact factorial formula (rational arithmetic in sympy)
    and rounded once at the end.
    """
    l1, m1, l2, m2, l3, m3 = key.as_tuple()
    if m1 != m2 + m3:
        return 0.0
    if not abs(l2 - l3) <= l1 <= l2 + l3:
        return 0.0
    if (l1 + l2 + l3) % 2:
        return 0.0
    return _gaunt_exact(l1, m1, l2, m2, l3, m3)


def l_min(l1: int, l2: int, m1: int, m2: int) -> int:
    """Lowest l in the linearisation of conj(Y_l1^m1) Y_l2^m2 (steps of 2 up to l1 + l2)."""
    base = max(abs(l1 - l2), abs(m2 - m1))
    if (l1 + l2 + base) % 2 == 0:
        return base
    return base + 1
