"""Weyl orbit sizes, subdominant weights, and the Premet lower bound."""

from __future__ import annotations

import math

from .root_system import epsilon_coordinates, is_dominant


def orbit_size(mu):
    """|W.mu| = (l+1)! / (i_1! (i_2-i_1)! ... (l+1-i_N)!) over the support
    gaps of mu.  Raises ValueError unless mu is dominant."""
    if not is_dominant(mu):
        raise ValueError("orbit_size needs a dominant weight, got %r" % (mu,))
    l = len(mu)
    idx = [0] + [i + 1 for i, a in enumerate(mu) if a != 0] + [l + 1]
    out = math.factorial(l + 1)
    for a, b in zip(idx, idx[1:]):
        out //= math.factorial(b - a)
    return out


def _subdominant_eps_rows(lam):
    """Yield the canonical epsilon rows of every dominant mu <= lam.

    Canonical form: weakly decreasing non-negative integers of length l+1
    whose partial sums stay below those of epsilon_coordinates(lam), with
    equal totals.  mu <= lam in dominance order is exactly majorization of
    these rows.
    """
    v = epsilon_coordinates(lam)
    n = sum(v)
    m = len(v)
    vpartial = [0] * (m + 1)
    for i, x in enumerate(v):
        vpartial[i + 1] = vpartial[i] + x
    row = [0] * m

    def fill(pos, used):
        if pos == m:
            if used == n:
                yield tuple(row)
            return
        prev = row[pos - 1] if pos else n
        hi = min(prev, vpartial[pos + 1] - used)
        remaining_slots = m - pos - 1
        for w in range(hi, -1, -1):
            # the tail must be fillable: weakly decreasing, total exact
            rest = n - used - w
            if rest < 0 or rest > w * remaining_slots:
                continue
            row[pos] = w
            yield from fill(pos + 1, used + w)

    yield from fill(0, 0)


def _eps_row_to_weight(row):
    return tuple(row[i] - row[i + 1] for i in range(len(row) - 1))


def subdominant_weights(lam, proper=False):
    """All dominant mu with mu <= lam, lam itself included unless
    proper=True.  Sorted lexicographically on coefficient tuples."""
    if not is_dominant(lam):
        raise ValueError("subdominant_weights needs a dominant weight")
    out = [_eps_row_to_weight(r) for r in _subdominant_eps_rows(lam)]
    if proper:
        out = [w for w in out if w != lam]
    out.sort()
    return out


def premet_lower_bound(lam):
    """Sum of orbit sizes over all subdominant weights of lam, lam included."""
    return sum(orbit_size(mu) for mu in subdominant_weights(lam))


def premet_bound_exceeds(lam, cap):
    """True as soon as the partial Premet sum passes cap; avoids finishing
    the subdominant enumeration for hopeless weights."""
    acc = 0
    for row in _subdominant_eps_rows(lam):
        acc += orbit_size(_eps_row_to_weight(row))
        if acc > cap:
            return True
    return False
