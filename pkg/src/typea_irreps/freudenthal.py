"""Characteristic-zero weight multiplicities via Freudenthal's recursion,
plus the Weyl dimension formula as an independent cross-check.

All arithmetic is on integer epsilon rows normalized to a common
coordinate total, so the recursion never touches rationals until the
final exact division (whose integrality is asserted).
"""

from __future__ import annotations

from fractions import Fraction

from .root_system import epsilon_coordinates, is_dominant, root_coordinates
from .weyl_orbits import _eps_row_to_weight, _subdominant_eps_rows

_TABLES = {}


def _freudenthal_table(lam):
    """Map from canonical epsilon row of each dominant mu <= lam to the
    Weyl-module multiplicity m_{V(lam)}(mu).  Memoized per lam."""
    lam = tuple(lam)
    got = _TABLES.get(lam)
    if got is not None:
        return got
    l = len(lam)
    m = l + 1
    rows = list(_subdominant_eps_rows(lam))
    vrow = epsilon_coordinates(lam)
    rho_eps = tuple(range(l, -1, -1))

    def hgt(row):
        # sum of simple-root coordinates of lam - mu, via partial sums
        acc = 0
        partial = 0
        for a, b in zip(vrow[:-1], row[:-1]):
            partial += a - b
            acc += partial
        return acc

    # ascending height of lam - mu: every m_{mu + k alpha} is ready in time
    order = sorted(rows, key=lambda r: (hgt(r), r))
    roots = [(i, j) for i in range(m) for j in range(i + 1, m)]  # (e_i - e_j) as 0-based pairs
    lam_shift = [a + b for a, b in zip(vrow, rho_eps)]
    lam_norm = sum(x * x for x in lam_shift)
    table = {}
    for row in order:
        if row == vrow:
            table[row] = 1
            continue
        mu_shift = [a + b for a, b in zip(row, rho_eps)]
        denom = lam_norm - sum(x * x for x in mu_shift)
        assert denom > 0, (lam, row)
        total = 0
        for i, j in roots:
            k = 1
            while True:
                shifted = list(row)
                shifted[i] += k
                shifted[j] -= k
                mult = table.get(tuple(sorted(shifted, reverse=True)))
                if mult is None:
                    break
                total += mult * (shifted[i] - shifted[j])
                k += 1
        assert (2 * total) % denom == 0, (lam, row)
        table[row] = (2 * total) // denom
    _TABLES[lam] = table
    return table


def weyl_multiplicity_table(lam):
    """Weight-coefficient tuple -> multiplicity in V(lam), over all
    dominant mu <= lam."""
    return {_eps_row_to_weight(r): v for r, v in _freudenthal_table(lam).items()}


def weyl_multiplicity(lam, mu):
    """Multiplicity of mu in the Weyl module V(lam); characteristic-free.

    Raises ValueError unless mu is dominant and subdominant to lam.
    """
    if not is_dominant(mu):
        raise ValueError("weyl_multiplicity needs dominant mu, got %r" % (mu,))
    if root_coordinates(lam, mu) is None:
        raise ValueError("%r is not subdominant to %r" % (mu, lam))
    diff = [a - b for a, b in zip(epsilon_coordinates(lam), epsilon_coordinates(mu))]
    t = sum(diff) // len(diff)
    key = tuple(x + t for x in epsilon_coordinates(mu))
    return _freudenthal_table(lam)[key]


def weyl_dimension(lam):
    """Product formula: prod over intervals [i,j] of (a_i+...+a_j + j-i+1)/(j-i+1)."""
    if not is_dominant(lam):
        raise ValueError("weyl_dimension needs a dominant weight")
    l = len(lam)
    out = Fraction(1)
    for i in range(l):
        acc = 0
        for j in range(i, l):
            acc += lam[j]
            out *= Fraction(acc + j - i + 1, j - i + 1)
    assert out.denominator == 1
    return int(out)


def dominant_conjugate(weight):
    """The dominant W-conjugate of an arbitrary integer weight."""
    eps = epsilon_coordinates(weight)
    srt = sorted(eps, reverse=True)
    return tuple(srt[i] - srt[i + 1] for i in range(len(weight)))
