from math import comb

from refgen.errors import DomainError


def full_brevity_search_space(n_a: int, n_l: int) -> int:
    """Number of candidate descriptions full brevity checks before it finds
    one of size n_l: the sum of C(n_a, i) for i = 1..n_l."""
    if n_a < 0 or n_l < 0:
        raise DomainError(f"counts must be non-negative, got n_a={n_a}, n_l={n_l}")
    if n_l > n_a:
        raise DomainError(f"n_l ({n_l}) exceeds n_a ({n_a})")
    return sum(comb(n_a, size) for size in range(1, n_l + 1))
