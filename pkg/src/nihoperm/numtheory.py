"""Integer helpers shared by the constructor and the inverse formulas."""

from math import gcd


class NotInvertibleError(ValueError):
    def __init__(self, a: int, modulus: int):
        self.a = a
        self.modulus = modulus
        self.gcd = gcd(a, modulus)
        super().__init__(f"{a} is not invertible modulo {modulus} (gcd {self.gcd})")


def mod_inverse(a: int, modulus: int) -> int:
    """The residue b in [1, modulus - 1] with a*b = 1 (mod modulus)."""
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    try:
        return pow(a, -1, modulus)
    except ValueError:
        raise NotInvertibleError(a, modulus) from None
