"""Non-abelian components of the SL2(C) character variety of a torus knot.

Each component is labelled by a pair (alpha, beta) with ``1 <= alpha < p``,
``1 <= beta < q`` and ``alpha = beta (mod 2)``. It meets the abelian curve at
the two points ``z = i*pi*k/pq`` for the two ``k`` in ``(0, pq)`` whose traces
match: ``k = +-alpha (mod 2p)`` and ``k = +-beta (mod 2q)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from .errors import InvalidComponent
from .exact import TorusKnot


@dataclass(frozen=True)
class CharVarComponent:
    ell: int
    alpha: int
    beta: int
    k_minus: int
    k_plus: int
    m: int
    l: int
    A_diamond: int
    A_triangle: Fraction
    epsilon: int

    @property
    def pair(self) -> Tuple[int, int]:
        return self.k_minus, self.k_plus


def _matches(k, residue, modulus2):
    r = k % modulus2
    return r == residue or r == modulus2 - residue


def attach_points(K: TorusKnot, alpha: int, beta: int) -> Tuple[int, int]:
    """Bifurcation parameters ``(k_minus, k_plus)`` of the (alpha, beta) component."""
    p, q = K.p, K.q
    if not (1 <= alpha <= p - 1 and 1 <= beta <= q - 1) or (alpha - beta) % 2:
        raise InvalidComponent(f"({alpha}, {beta}) is not a component label for {K}")
    ks = [k for k in range(1, p * q) if _matches(k, alpha, 2 * p) and _matches(k, beta, 2 * q)]
    if len(ks) != 2:
        raise AssertionError(f"trace matching gave {ks} for ({alpha}, {beta}) on {K}")
    return ks[0], ks[1]


def recover_labels(K: TorusKnot, k: int) -> Tuple[int, int]:
    """(alpha, beta) whose traces match the bifurcation point ``k``."""
    a = k % (2 * K.p)
    b = k % (2 * K.q)
    return min(a, 2 * K.p - a), min(b, 2 * K.q - b)


def build_component(K: TorusKnot, ell: int, k_minus: int, k_plus: int) -> CharVarComponent:
    p, q, pq = K.p, K.q, K.pq
    alpha, beta = recover_labels(K, k_plus)
    diff2 = k_plus * k_plus - k_minus * k_minus
    if diff2 % (4 * pq):
        raise InvalidComponent(f"(k+^2 - k-^2)/4pq is not integral for {(k_minus, k_plus)}")
    l = diff2 // (4 * pq)
    return CharVarComponent(
        ell=ell,
        alpha=alpha,
        beta=beta,
        k_minus=k_minus,
        k_plus=k_plus,
        m=(k_plus - k_minus) // 2,
        l=l,
        A_diamond=l,
        A_triangle=Fraction((pq - k_plus) ** 2, 4 * pq),
        epsilon=(-1) ** (k_plus // p + k_plus // q),
    )


def check_component(K: TorusKnot, c: CharVarComponent) -> None:
    """Assert every structural property a component must have.

    Raises AssertionError naming the first property that fails.
    """
    p, q, pq = K.p, K.q, K.pq
    km, kp = c.k_minus, c.k_plus
    checks = [
        ("label range", 1 <= c.alpha <= p - 1 and 1 <= c.beta <= q - 1),
        ("label parity", (c.alpha - c.beta) % 2 == 0),
        ("0 < k- < k+ < pq", 0 < km < kp < pq),
        ("k not divisible by p or q", all(k % p and k % q for k in (km, kp))),
        ("k+ +- k- even", (kp + km) % 2 == 0),
        (
            "divisibility of k+ +- k-",
            ((kp + km) % p == 0 and (kp - km) % q == 0)
            or ((kp + km) % q == 0 and (kp - km) % p == 0),
        ),
        ("m, l positive", c.m > 0 and c.l > 0),
        ("2m < pq", 2 * c.m < pq),
        ("p | m or q | m", c.m % p == 0 or c.m % q == 0),
        ("m | pq l", (pq * c.l) % c.m == 0),
        ("m^2/pq < l < m - m^2/pq", c.m * c.m < pq * c.l < pq * c.m - c.m * c.m),
        ("A_diamond = l", c.A_diamond == c.l),
        ("A_triangle", c.A_triangle == Fraction((pq - kp) ** 2, 4 * pq)),
        ("epsilon", c.epsilon == (-1) ** (kp // p + kp // q)),
        ("labels attach at k-", recover_labels(K, km) == (c.alpha, c.beta)),
    ]
    for name, ok in checks:
        if not ok:
            raise AssertionError(f"{K} component {c.pair}: {name} fails")


@lru_cache(maxsize=None)
def _enumerate(K: TorusKnot) -> Tuple[CharVarComponent, ...]:
    pairs = sorted(
        attach_points(K, a, b)
        for a in range(1, K.p)
        for b in range(1, K.q)
        if (a - b) % 2 == 0
    )
    comps = tuple(build_component(K, i + 1, km, kp) for i, (km, kp) in enumerate(pairs))
    for c in comps:
        check_component(K, c)
    return comps


def enumerate_components(K: TorusKnot) -> List[CharVarComponent]:
    """All (p-1)(q-1)/2 components, ordered by ``(k_minus, k_plus)``."""
    return list(_enumerate(K))


def bifurcation_pairs_bruteforce(K: TorusKnot) -> List[Tuple[int, int]]:
    """Pair up bifurcation points by scanning ``k`` directly.

    Independent of :func:`attach_points`: every admissible ``k`` must have
    exactly one partner ``k' != k`` with ``k' = +-k`` modulo both 2p and 2q.
    """
    p, q, pq = K.p, K.q, K.pq
    admissible = [k for k in range(1, pq) if k % p and k % q]
    pairs = set()
    for k in admissible:
        partners = [
            j for j in admissible
            if j != k and _same_up_to_sign(j, k, 2 * p) and _same_up_to_sign(j, k, 2 * q)
        ]
        if len(partners) != 1:
            raise RuntimeError(f"k={k} on {K} has partners {partners}")
        pairs.add(tuple(sorted((k, partners[0]))))
    return sorted(pairs)


def _same_up_to_sign(j, k, modulus):
    return (j - k) % modulus == 0 or (j + k) % modulus == 0


def two_bridge_closed_form(q: int, ell: int) -> CharVarComponent:
    """Component ``ell`` of the (2, q) torus knot from the explicit formulas."""
    if q < 3 or q % 2 == 0:
        raise ValueError(f"q must be odd and at least 3, got {q}")
    if not 1 <= ell <= (q - 1) // 2:
        raise ValueError(f"ell must lie in 1..{(q - 1) // 2}, got {ell}")
    k_minus = 2 * ell - 1
    k_plus = 2 * q - 2 * ell + 1
    m = q - 2 * ell + 1
    return CharVarComponent(
        ell=ell,
        alpha=1,
        beta=2 * ell - 1,
        k_minus=k_minus,
        k_plus=k_plus,
        m=m,
        l=m // 2,
        A_diamond=m // 2,
        A_triangle=Fraction((2 * ell - 1) ** 2, 8 * q),
        epsilon=(-1) ** (k_plus // 2 + k_plus // q),
    )
