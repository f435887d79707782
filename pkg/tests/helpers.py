"""Shared test utilities: seeded instance generators and independent oracles.

The oracles here deliberately avoid the code paths they check: the LP
oracle enumerates vertices by brute force, the two-player Pareto oracle
sweeps threshold allocations by density ratio, and the equal-value oracle
scans a coarse grid and refines a bracket with exact chords.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from itertools import combinations

from fairslice import (
    Interval,
    LinearConstraint,
    LinearProgram,
    Scenario,
    StepDensity,
    contiguous_allocation,
    greedy_cuts,
)

ZERO = Fraction(0)
ONE = Fraction(1)

BREAK_POOL = sorted(
    {Fraction(n, d) for d in (2, 3, 4, 5, 6, 8, 10, 12) for n in range(1, d)}
)
QUARTER_POOL = [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]


def random_density(rng, max_pieces=4, pool=BREAK_POOL, allow_zero=True):
    k = rng.randint(1, max_pieces)
    interior = sorted(rng.sample(pool, k - 1)) if k > 1 else []
    bounds = [ZERO, *interior, ONE]
    low = 0 if allow_zero else 1
    while True:
        weights = [Fraction(rng.randint(low, 5)) for _ in range(len(bounds) - 1)]
        if any(weights):
            break
    total = sum(w * (b - a) for w, a, b in zip(weights, bounds, bounds[1:]))
    return StepDensity.of(
        *((a, b, w / total) for w, a, b in zip(weights, bounds, bounds[1:]))
    )


def random_scenario(rng, n, max_pieces=4, pool=BREAK_POOL, allow_zero=True):
    return Scenario(
        tuple(
            (f"p{i + 1}", random_density(rng, max_pieces, pool, allow_zero))
            for i in range(n)
        )
    )


def random_allocation(rng, scenario, pool=BREAK_POOL):
    """A valid partition: contiguous cuts, sometimes alternating pieces."""
    names = list(scenario.names)
    rng.shuffle(names)
    if rng.random() < 0.5:
        cuts = sorted(rng.sample(pool, scenario.n - 1))
        return contiguous_allocation(names, cuts)
    k = rng.randint(scenario.n - 1, min(len(pool), scenario.n + 2))
    cuts = sorted(rng.sample(pool, k))
    owners = [names[i % len(names)] for i in range(k + 1)]
    pieces: dict[str, list] = {name: [] for name in scenario.names}
    bounds = [ZERO, *cuts, ONE]
    for owner, lo, hi in zip(owners, bounds, bounds[1:]):
        pieces[owner].append((lo, hi))
    from fairslice import Allocation, IntervalSet

    return Allocation.of(
        {name: IntervalSet.of(*spans) for name, spans in pieces.items()}
    )


def float_mass(density, region):
    """Floating-point summation oracle for exact mass values."""
    spans = region.intervals if hasattr(region, "intervals") else (region,)
    total = 0.0
    for piece in density.pieces:
        for span in spans:
            overlap = min(float(piece.hi), float(span.hi)) - max(
                float(piece.lo), float(span.lo)
            )
            if overlap > 0:
                total += float(piece.density) * overlap
    return total


# ---------------------------------------------------------------------------
# LP oracle: exhaustive vertex enumeration
# ---------------------------------------------------------------------------


def solve_square(rows, rhs):
    """Gaussian elimination over Fractions; None when singular."""
    n = len(rows)
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        inv = m[col][col]
        m[col] = [v / inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def _lp_feasible(lp, point):
    if any(x < 0 for x in point):
        return False
    for c in lp.constraints:
        lhs = sum(a * x for a, x in zip(c.coeffs, point))
        if c.sense == "<=" and lhs > c.rhs:
            return False
        if c.sense == ">=" and lhs < c.rhs:
            return False
        if c.sense == "==" and lhs != c.rhs:
            return False
    return True


def vertex_enumeration_max(lp):
    """Best vertex over all square subsystems of tight constraints.

    Assumes a bounded feasible region (the generator below adds a bounding
    row), so the optimum is attained at some vertex.
    """
    n = lp.n_vars
    equalities = [(c.coeffs, c.rhs) for c in lp.constraints if c.sense == "=="]
    optional = [(c.coeffs, c.rhs) for c in lp.constraints if c.sense != "=="]
    for i in range(n):
        optional.append((tuple(ONE if j == i else ZERO for j in range(n)), ZERO))
    need = n - len(equalities)
    if need < 0:
        return None
    best = None
    for combo in combinations(optional, need):
        chosen = equalities + list(combo)
        point = solve_square([c[0] for c in chosen], [c[1] for c in chosen])
        if point is None or not _lp_feasible(lp, point):
            continue
        value = sum(c * x for c, x in zip(lp.objective, point))
        if best is None or value > best:
            best = value
    return best


def random_lp(rng, max_vars=4, max_rows=5):
    """Bounded LP with a known interior-ish feasible point as the seed."""
    n = rng.randint(2, max_vars)
    x0 = [Fraction(rng.randint(0, 4), rng.choice((1, 2, 3))) for _ in range(n)]
    constraints = []
    n_eq = 0
    for _ in range(rng.randint(1, max_rows - 1)):
        coeffs = tuple(Fraction(rng.randint(-4, 5)) for _ in range(n))
        at_seed = sum(c * x for c, x in zip(coeffs, x0))
        kind = rng.random()
        if kind < 0.25 and n_eq < n - 1:
            constraints.append(LinearConstraint(coeffs, "==", at_seed))
            n_eq += 1
        elif kind < 0.65:
            constraints.append(
                LinearConstraint(coeffs, "<=", at_seed + Fraction(rng.randint(0, 3)))
            )
        else:
            constraints.append(
                LinearConstraint(coeffs, ">=", at_seed - Fraction(rng.randint(0, 3)))
            )
    bound = sum(x0, ZERO) + Fraction(rng.randint(1, 10))
    constraints.append(LinearConstraint(tuple(ONE for _ in range(n)), "<=", bound))
    objective = tuple(Fraction(rng.randint(-3, 5)) for _ in range(n))
    return LinearProgram(n, objective, tuple(constraints)), tuple(x0)


# ---------------------------------------------------------------------------
# Two-player Pareto oracle: density-ratio threshold sweep
# ---------------------------------------------------------------------------


def ratio_sweep_dominated(scenario, allocation):
    """Is the allocation dominated? Decided by sweeping the frontier.

    For two players the Pareto frontier consists of threshold allocations
    in density-ratio order with at most one fractional boundary cell; the
    allocation is dominated iff holding one player at their current value
    lets the other strictly exceed theirs.
    """
    assert scenario.n == 2
    (name_a, density_a), (name_b, density_b) = scenario.players
    points = {ZERO, ONE}
    for density in (density_a, density_b):
        points.update(density.breakpoints())
    for _, portion in allocation.portions:
        for iv in portion.intervals:
            points.update((iv.lo, iv.hi))
    bounds = sorted(points)
    cells = [(a, b) for a, b in zip(bounds, bounds[1:]) if b > a]
    base_a = density_a.mass(allocation.portion(name_a))
    base_b = density_b.mass(allocation.portion(name_b))

    def best_keep(keeper, giver, give_target):
        items = []
        total_keep = ZERO
        for lo, hi in cells:
            length = hi - lo
            w_keep = keeper.density_at(lo) * length
            w_give = giver.density_at(lo) * length
            total_keep += w_keep
            if w_give > 0:
                items.append((w_keep, w_give))

        def cheaper(i1, i2):
            left = i1[1] * i2[0]
            right = i2[1] * i1[0]
            return -1 if left > right else (1 if left < right else 0)

        items.sort(key=functools.cmp_to_key(cheaper))
        value = total_keep
        remaining = give_target
        for w_keep, w_give in items:
            if remaining <= 0:
                break
            if w_give >= remaining:
                value -= w_keep * remaining / w_give
                remaining = ZERO
            else:
                value -= w_keep
                remaining -= w_give
        return value

    return (
        best_keep(density_a, density_b, base_b) > base_a
        or best_keep(density_b, density_a, base_a) > base_b
    )


# ---------------------------------------------------------------------------
# Equal-value oracle: coarse grid scan plus exact chord refinement
# ---------------------------------------------------------------------------


def _last_piece_value(scenario, ordering, t):
    cuts = greedy_cuts(scenario, ordering, t)
    if cuts is None:
        return None
    last = scenario.players[ordering[-1]][1]
    return last.mass(Interval(cuts[-1], ONE))


def grid_affine_equal_value(scenario, ordering, steps=1000):
    """Independent solve: scan t on a grid, then refine any sign-change
    bracket by probing the exact chord root and halving. The chord probe is
    never fed back into the bracket, so denominators stay tame; once the
    bracket is free of kinks the chord lands exactly on the root. Returns
    (cuts, t) or None (the refinement can miss a root that sits exactly on
    a kink of the residual, so None does not prove absence)."""
    ordering = tuple(
        scenario.index(o) if isinstance(o, str) else int(o) for o in ordering
    )
    prev_t = ZERO
    prev_f = _last_piece_value(scenario, ordering, ZERO)
    if prev_f == ZERO:
        return greedy_cuts(scenario, ordering, ZERO), ZERO
    for k in range(1, steps + 1):
        t = Fraction(k, steps)
        value = _last_piece_value(scenario, ordering, t)
        if value is None:
            return None
        f = value - t
        if f == 0:
            return greedy_cuts(scenario, ordering, t), t
        if prev_f is not None and prev_f > 0 > f:
            lo, f_lo, hi, f_hi = prev_t, prev_f, t, f
            for _ in range(80):
                chord = lo + f_lo * (hi - lo) / (f_lo - f_hi)
                chord_value = _last_piece_value(scenario, ordering, chord)
                if chord_value is not None and chord_value == chord:
                    return greedy_cuts(scenario, ordering, chord), chord
                mid = (lo + hi) / 2
                mid_value = _last_piece_value(scenario, ordering, mid)
                f_mid = (mid_value - mid) if mid_value is not None else -mid
                if f_mid == 0:
                    return greedy_cuts(scenario, ordering, mid), mid
                if f_mid > 0:
                    lo, f_lo = mid, f_mid
                else:
                    hi, f_hi = mid, f_mid
            return None
        prev_t, prev_f = t, f
    return None


def grid_screen_no_solution(scenario, ordering, steps=1000):
    """Numeric screen: the residual avoids zero at every feasible grid t."""
    ordering = tuple(
        scenario.index(o) if isinstance(o, str) else int(o) for o in ordering
    )
    for k in range(steps + 1):
        t = Fraction(k, steps)
        value = _last_piece_value(scenario, ordering, t)
        if value is None:
            return True
        if value == t:
            return False
    return True
