"""_summary_
Exact orientation and in-circle predicates.

Coordinates are converted to Fraction (every float is a dyadic rational, so
the conversion is exact) and the determinants are evaluated without rounding.
The in-circle test resolves cocircular quadruples by symbolic perturbation of
the lifted heights: each point is lowered by eps**(rank + 1), where rank is its
position in lexicographic (x, y) order, so the lexicographically smallest point
wins every tie.

Functions:
    orient(a, b, c) -> int
    incircle(a, b, c, d) -> int
    perturbed_incircle(a, b, c, d, ranks) -> int
"""

from fractions import Fraction
from typing import Sequence, Tuple

Point = Tuple[float, float]


def _exact(p: Point) -> Tuple[Fraction, Fraction]:
    return Fraction(p[0]), Fraction(p[1])


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def orient(a: Point, b: Point, c: Point) -> int:
    """+1 if a, b, c turn counter-clockwise, -1 if clockwise, 0 if collinear."""
    ax, ay = _exact(a)
    bx, by = _exact(b)
    cx, cy = _exact(c)
    return _sign((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))


def _incircle_det(a: Point, b: Point, c: Point, d: Point) -> Fraction:
    dx, dy = _exact(d)
    rows = []
    for p in (a, b, c):
        px, py = _exact(p)
        ex, ey = px - dx, py - dy
        rows.append((ex, ey, ex * ex + ey * ey))
    (a0, a1, a2), (b0, b1, b2), (c0, c1, c2) = rows
    return (a0 * (b1 * c2 - b2 * c1)
            - a1 * (b0 * c2 - b2 * c0)
            + a2 * (b0 * c1 - b1 * c0))


def incircle(a: Point, b: Point, c: Point, d: Point) -> int:
    """
    For counter-clockwise a, b, c: +1 if d lies strictly inside their
    circumcircle, -1 if strictly outside, 0 if on it.
    """
    return _sign(_incircle_det(a, b, c, d))


def perturbed_incircle(a: Point, b: Point, c: Point, d: Point, ranks: Sequence[int]) -> int:
    """
    In-circle test that never returns 0.
    Args:
        a, b, c, d (Point): a, b, c counter-clockwise.
        ranks (Sequence[int]): Lexicographic rank of a, b, c and d.
    Returns:
        int: +1 if d is inside the (perturbed) circle through a, b, c, else -1.
    """
    exact = incircle(a, b, c, d)
    if exact != 0:
        return exact
    # d(det)/d(z_i) is the signed orientation of the other three points.
    points = (a, b, c, d)
    cofactors = []
    for i in range(4):
        others = [p for j, p in enumerate(points) if j != i]
        cofactors.append((-1) ** i * orient(*others))
    for i in sorted(range(4), key=lambda k: ranks[k]):
        if cofactors[i] != 0:
            return -cofactors[i]
    return -1
