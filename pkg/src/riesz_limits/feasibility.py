"""Exact rational linear feasibility.

Two deciders for systems of linear constraints over the rationals:

* Fourier-Motzkin elimination, the default for small variable counts;
* a phase-1 simplex with Bland's rule, exact and cycle-free, used as the
  fallback when elimination would blow up.

Both are complete decision procedures, so they double as independent
oracles for each other in the tests.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

FOURIER_MOTZKIN_MAX_VARS = 8

# one inequality sum(c[i] * x[i]) <= rhs, normalized to primitive integers
Inequality = tuple[tuple[int, ...], int]


def _normalize(coeffs: Sequence[Fraction], rhs: Fraction) -> Inequality:
    denominators = [c.denominator for c in coeffs] + [rhs.denominator]
    lcm = 1
    for d in denominators:
        lcm = lcm // gcd(lcm, d) * d
    ints = [int(c * lcm) for c in coeffs]
    r = int(rhs * lcm)
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    g = gcd(g, abs(r))
    if g > 1:
        ints = [v // g for v in ints]
        r = r // g
    return tuple(ints), r


def fourier_motzkin_feasible(inequalities: Iterable[tuple[Sequence[Fraction], Fraction]]) -> bool:
    """Feasibility of ``{x : c.x <= r for each (c, r)}`` by variable
    elimination.  Exact; exponential in the worst case, fine at the
    variable counts used here."""
    raw = [(tuple(Fraction(c) for c in coeffs), Fraction(rhs)) for coeffs, rhs in inequalities]
    n_vars = max((len(coeffs) for coeffs, _ in raw), default=0)
    system: set[Inequality] = set()
    for coeffs, rhs in raw:
        padded = coeffs + (Fraction(0),) * (n_vars - len(coeffs))
        system.add(_normalize(padded, rhs))

    for _ in range(n_vars):
        if any(all(c == 0 for c in coeffs) and rhs < 0 for coeffs, rhs in system):
            return False
        # eliminate the variable with the fewest pairings
        candidates = []
        for j in range(n_vars):
            pos = sum(1 for coeffs, _ in system if coeffs[j] > 0)
            neg = sum(1 for coeffs, _ in system if coeffs[j] < 0)
            if pos + neg:
                candidates.append((pos * neg, j))
        if not candidates:
            break
        _, j = min(candidates)
        pos = [ineq for ineq in system if ineq[0][j] > 0]
        neg = [ineq for ineq in system if ineq[0][j] < 0]
        rest = {ineq for ineq in system if ineq[0][j] == 0}
        for (cp, rp) in pos:
            a = cp[j]
            for (cn, rn) in neg:
                b = -cn[j]
                combined = tuple(Fraction(b * p + a * q) for p, q in zip(cp, cn))
                rest.add(_normalize(combined, Fraction(b * rp + a * rn)))
        system = rest

    return all(rhs >= 0 for coeffs, rhs in system if all(c == 0 for c in coeffs))


def simplex_feasible(
    a_eq: Sequence[Sequence[Fraction]],
    b_eq: Sequence[Fraction],
    upper: Sequence[Fraction],
) -> bool:
    """Feasibility of ``{0 <= x <= upper : a_eq @ x = b_eq}`` by phase-1
    simplex with Bland's rule."""
    n = len(upper)
    m = len(b_eq)
    # variables: x (n), box slacks s (n), artificials a (m + n)
    # rows: a_eq @ x = b_eq  and  x + s = upper
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i in range(m):
        row = [Fraction(a_eq[i][j]) for j in range(n)] + [Fraction(0)] * n
        r = Fraction(b_eq[i])
        if r < 0:
            row = [-v for v in row]
            r = -r
        rows.append(row)
        rhs.append(r)
    for j in range(n):
        row = [Fraction(0)] * (2 * n)
        row[j] = Fraction(1)
        row[n + j] = Fraction(1)
        r = Fraction(upper[j])
        if r < 0:
            return False
        rows.append(row)
        rhs.append(r)

    total_rows = m + n
    n_structural = 2 * n
    # tableau with artificial basis
    tableau = [rows[i] + [Fraction(1) if k == i else Fraction(0) for k in range(total_rows)] + [rhs[i]] for i in range(total_rows)]
    basis = [n_structural + i for i in range(total_rows)]
    n_total = n_structural + total_rows

    # objective: minimize sum of artificials; reduced costs
    cost = [Fraction(0)] * n_total
    for k in range(n_structural, n_total):
        cost[k] = Fraction(1)
    # z_j - c_j with artificial basis: z_j = sum over rows of coefficient
    reduced = [sum((tableau[i][j] for i in range(total_rows)), Fraction(0)) - cost[j] for j in range(n_total)]
    objective = sum(rhs, Fraction(0))

    while True:
        entering = next((j for j in range(n_total) if reduced[j] > 0), None)
        if entering is None:
            break
        ratios = [
            (tableau[i][n_total] / tableau[i][entering], basis[i], i)
            for i in range(total_rows)
            if tableau[i][entering] > 0
        ]
        if not ratios:
            # unbounded phase-1 objective cannot happen; defensive
            return False
        _, _, leaving = min(ratios)
        pivot = tableau[leaving][entering]
        tableau[leaving] = [v / pivot for v in tableau[leaving]]
        for i in range(total_rows):
            if i != leaving and tableau[i][entering] != 0:
                f = tableau[i][entering]
                tableau[i] = [v - f * w for v, w in zip(tableau[i], tableau[leaving])]
        f = reduced[entering]
        reduced = [v - f * w for v, w in zip(reduced, tableau[leaving][:n_total])]
        objective -= f * tableau[leaving][n_total]
        basis[leaving] = entering

    return objective == 0


def feasible_box_section(
    matrix: Sequence[Sequence[Fraction]],
    upper: Sequence[Fraction],
    target: Sequence[Fraction],
    method: str = "auto",
) -> bool:
    """Does ``matrix @ x = target`` admit a solution with ``0 <= x <= upper``?

    ``method`` is ``auto`` (Fourier-Motzkin up to
    :data:`FOURIER_MOTZKIN_MAX_VARS` variables, simplex beyond),
    ``fourier-motzkin``, or ``simplex``.
    """
    n = len(upper)
    if method == "auto":
        method = "fourier-motzkin" if n <= FOURIER_MOTZKIN_MAX_VARS else "simplex"
    if method == "simplex":
        return simplex_feasible(matrix, target, upper)
    if method != "fourier-motzkin":
        raise ValueError(f"unknown feasibility method {method!r}")

    inequalities: list[tuple[list[Fraction], Fraction]] = []
    for j in range(n):
        unit = [Fraction(0)] * n
        unit[j] = Fraction(-1)
        inequalities.append((unit, Fraction(0)))  # -x_j <= 0
        unit_up = [Fraction(0)] * n
        unit_up[j] = Fraction(1)
        inequalities.append((unit_up, Fraction(upper[j])))  # x_j <= u_j
    for row, t in zip(matrix, target):
        row = [Fraction(v) for v in row]
        t = Fraction(t)
        inequalities.append((row, t))
        inequalities.append(([-v for v in row], -t))
    return fourier_motzkin_feasible(inequalities)
