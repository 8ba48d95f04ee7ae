"""Replay of the inductive slicing argument for ``Σⱼ |Sⱼ ∩ Λ| ≤ ∏ qᵢ``.

Balls are moved into flag coordinates once, so the lattice is ``Zᵈ``, the
sublattice ``Λⁱ`` is the set of vectors supported on the first i coordinates
and ``e_d`` is the last unit vector. A level of the recursion is therefore a
Gram matrix, a list of ``(center, radius_sq)`` pairs and the integers
``q₁ ≥ … ≥ q_{d+1}``.

Every proof step is recomputed and recorded in a nested trace of plain
dicts; failed assertions are collected rather than raised so the whole trace
survives for offline diagnosis.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import linalg as la
from .bhw import body_minima, q_values
from .core import Ball, InnerProductSpace, Lattice, gram
from .enumeration import closest_vectors, count_ball, enumerate_ball, form_evaluator, successive_minima
from .errors import HypothesisViolation, InvalidInputError
from .reduction import extend_to_flag_basis
from .translation import SpherePack, exceeds_radius_sum, translate_spheres


@dataclass(frozen=True)
class Slice:
    """``S_{j,m}``: the ball's section at height m along the last flag vector, projected down.

    ``radius_sq < 0`` encodes an empty section.
    """

    parent: int
    height: int
    gram: tuple
    center: tuple
    radius_sq: Fraction

    @property
    def empty(self):
        return self.radius_sq < 0


@dataclass(frozen=True)
class StrongInstance:
    balls: tuple
    flag: object
    q: tuple

    def __post_init__(self):
        q = tuple(int(v) for v in self.q)
        d = self.flag.dim
        if len(q) != d + 1:
            raise InvalidInputError(f"expected {d + 1} integers q₁..q_(d+1), got {len(q)}", "q")
        if any(v < 1 for v in q) or any(a < b for a, b in zip(q, q[1:])):
            raise InvalidInputError("q must be non-increasing positive integers", "q")
        balls = tuple(self.balls)
        if not balls:
            raise InvalidInputError("need at least one ball", "balls")
        if len({b.space for b in balls}) != 1:
            raise InvalidInputError("balls must share one inner product space", "balls")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "balls", balls)

    @property
    def dim(self):
        return self.flag.dim

    def in_flag_coordinates(self):
        """``(G, [(t, radius_sq), ...])`` with respect to the flag basis."""
        flag_lattice = Lattice(self.flag.ambient_basis)
        G = gram(flag_lattice, self.balls[0].space)
        return G, [(flag_lattice.to_coefficients(b.center), b.radius_sq) for b in self.balls]


@dataclass(frozen=True)
class Check:
    """Outcome of a hypothesis check; falsy when a witness of violation exists."""

    ok: bool
    witness: object = None

    def __bool__(self):
        return self.ok


@dataclass
class StrongReport:
    total: int
    bound: int
    trace: dict
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures and self.total <= self.bound


@lru_cache(maxsize=1024)
def _schur(G):
    """Split G for slicing: ``(G₁₁, G₁₁⁻¹g, g_dd − gᵀG₁₁⁻¹g)``."""
    d = len(G)
    G11 = tuple(row[: d - 1] for row in G[: d - 1])
    g = tuple(row[d - 1] for row in G[: d - 1])
    w = la.solve(G11, g)
    return G11, w, G[d - 1][d - 1] - la.dot(g, w)


def slice_ball(G, t, R_sq, m, parent=0):
    """Section of ``{z : (z−t)ᵀG(z−t) ≤ R_sq}`` at ``z_d = m``, as a ball in the first d−1 coordinates.

    Completing the square with ``h = m − t_d`` gives center ``t' − h·G₁₁⁻¹g``
    and squared radius ``R_sq − h²·(g_dd − gᵀG₁₁⁻¹g)``.
    """
    G = la.matrix(G, "gram")
    if len(G) < 2:
        raise InvalidInputError("slicing needs dimension at least 2")
    t = la.vector(t)
    G11, w, schur = _schur(G)
    h = Fraction(m) - t[-1]
    center = la.sub(t[:-1], la.scale(h, w))
    return Slice(parent, int(m), G11, center, Fraction(R_sq) - h * h * schur)


def slice_heights(G, t, R_sq):
    """Heights m whose section is nonempty (``h²·schur ≤ R_sq``)."""
    if R_sq < 0:
        return range(0)
    schur = _schur(G)[2]
    s = Fraction(R_sq) / schur
    k = la.floor_sqrt(s)
    c = t[-1]
    lo = math.ceil(c) - k - 1
    hi = math.floor(c) + k + 1
    ms = [m for m in range(lo, hi + 1) if (m - c) ** 2 <= s]
    return range(ms[0], ms[-1] + 1) if ms else range(0)


def _c1(G, balls, q):
    """(C1) in flag coordinates: every λ with ``q_i²‖λ‖² ≤ 4r²`` lies in ``Λ^{i−1}``."""
    d = len(G)
    zero = (Fraction(0),) * d
    norm = form_evaluator(G)
    for j, (_, R_sq) in enumerate(balls):
        # bounds 4r²/qᵢ² grow with i, so one enumeration at i = d covers all i
        pts = enumerate_ball(G, zero, 4 * R_sq / (q[d - 1] ** 2))
        for z in pts:
            n2 = norm(z)
            for i in range(1, d + 1):
                if q[i - 1] ** 2 * n2 <= 4 * R_sq and any(z[i - 1:]):
                    return Check(False, {"ball": j, "i": i, "lambda": z})
    return Check(True)


def _coset_dist_scaled(G, x, s):
    """``min_z (x + s·z)ᵀG(x + s·z)``."""
    dist, _ = closest_vectors(G, la.scale(Fraction(-1, s), x))
    return s * s * dist


def _c2(G, balls, s):
    """(C2) at scale s: ``(Sⱼ − S_k) ∩ sΛ = ∅`` for all j ≠ k."""
    for j in range(len(balls)):
        for k in range(j + 1, len(balls)):
            (tj, rj), (tk, rk) = balls[j], balls[k]
            dist = _coset_dist_scaled(G, la.sub(tj, tk), s)
            if not exceeds_radius_sum(dist, rj, rk):
                return Check(False, {"pair": (j, k), "dist_sq": dist})
    return Check(True)


def check_C1(instance):
    G, balls = instance.in_flag_coordinates()
    return _c1(G, balls, instance.q)


def check_C2(instance, scale=None):
    """(C2) at ``scale`` (default ``q_{d+1}``); vacuous for a single ball."""
    G, balls = instance.in_flag_coordinates()
    return _c2(G, balls, instance.q[-1] if scale is None else int(scale))


def _fmt(x):
    return la.format_rational(x)


def _translate(G, balls, s):
    """Move balls by vectors of ``sZᵈ`` so the first stays and the rest sit nearest to it."""
    if len(balls) == 1:
        return list(balls)
    space = InnerProductSpace(G)
    pack = SpherePack(space, Lattice(tuple(tuple(Fraction(s * (i == j)) for j in range(len(G))) for i in range(len(G)))),
                      tuple(Ball(space, t, R) for t, R in balls))
    result = translate_spheres(pack)
    return [(u, R) for u, (_, R) in zip(result.u, balls)]


def _verify_level(G, balls, q, path, failures):
    d = len(G)
    counts = [len(enumerate_ball(G, t, R)) for t, R in balls]
    total = sum(counts)
    bound = math.prod(q[:d])
    node = {
        "path": path,
        "dim": d,
        "q": list(q),
        "balls": [{"center": [_fmt(c) for c in t], "radius_sq": _fmt(R), "count": c}
                  for (t, R), c in zip(balls, counts)],
        "total": total,
        "bound": bound,
        "checks": [],
        "residues": [],
    }

    def check(name, ok, detail=None):
        entry = {"name": name, "ok": bool(ok)}
        if detail is not None:
            entry["detail"] = detail
        node["checks"].append(entry)
        if not ok:
            failures.append(f"{path}: {name}" + (f" ({detail})" if detail else ""))

    if d == 1:
        check("base: total <= q1", total <= q[0])
        return total, node

    moved = _translate(G, balls, q[d])
    moved_counts = [len(enumerate_ball(G, t, R)) for t, R in moved]
    check("translation preserves total count", sum(moved_counts) == total)
    check("translation preserves (C1)", bool(_c1(G, moved, q)))
    strong = _c2(G, moved, q[d - 1])
    check("(C2) strengthened to scale q_d", bool(strong), None if strong else str(strong.witness))
    node["translated_centers"] = [[_fmt(c) for c in t] for t, _ in moved]

    groups = {}
    for j, (t, R) in enumerate(moved):
        per_ball = 0
        for m in slice_heights(G, t, R):
            sl = slice_ball(G, t, R, m, parent=j)
            if sl.empty:
                continue
            per_ball += len(enumerate_ball(sl.gram, sl.center, sl.radius_sq))
            groups.setdefault(m % q[d - 1], []).append(sl)
        check(f"slices of ball {j} partition its points", per_ball == moved_counts[j])

    G11 = _schur(G)[0]
    sub_bound = math.prod(q[: d - 1])
    residue_total = 0
    for r in sorted(groups):
        slices = sorted(groups[r], key=lambda s: (s.parent, s.height))
        sub_balls = [(s.center, s.radius_sq) for s in slices]
        sub_path = f"{path}/r{r}"
        c1 = _c1(G11, sub_balls, q[: d - 1])
        c2 = _c2(G11, sub_balls, q[d - 1])
        entry = {
            "residue": r,
            "slices": [{"parent": s.parent, "height": s.height} for s in slices],
            "c1": bool(c1),
            "c2": bool(c2),
        }
        node["residues"].append(entry)
        if not c1:
            failures.append(f"{sub_path}: sliced (C1) fails {c1.witness}")
        if not c2:
            failures.append(f"{sub_path}: sliced (C2) fails {c2.witness}")
        if not (c1 and c2):
            continue
        sub_total, child = _verify_level(G11, sub_balls, tuple(q[:d]), sub_path, failures)
        entry["sum"] = sub_total
        entry["bound"] = sub_bound
        entry["child"] = child
        if sub_total > sub_bound:
            failures.append(f"{sub_path}: residue sum {sub_total} exceeds {sub_bound}")
        residue_total += sub_total
    check("residue sums add up to the total", residue_total == total)
    check("total <= product of q", total <= bound)
    return total, node


def verify_strong(instance):
    """Run the induction on ``instance``; raises HypothesisViolation if (C1)/(C2) fail."""
    G, balls = instance.in_flag_coordinates()
    c1 = _c1(G, balls, instance.q)
    if not c1:
        raise HypothesisViolation(f"(C1) fails: {c1.witness}")
    c2 = _c2(G, balls, instance.q[-1])
    if not c2:
        raise HypothesisViolation(f"(C2) fails: {c2.witness}")
    failures = []
    total, trace = _verify_level(G, balls, instance.q, "root", failures)
    return StrongReport(total, math.prod(instance.q[:-1]), trace, failures)


@dataclass
class ViaStrongReport:
    count: int
    q: tuple
    bound: int
    strong: StrongReport
    failures: list

    @property
    def ok(self):
        return not self.failures and self.strong.ok and self.count <= self.bound


def verify_theorem1_via_strong(lattice, ball):
    """Bound ``|E ∩ Λ|`` by running the induction with one ball and ``q_{d+1} = 1``."""
    form = successive_minima(gram(lattice, ball.space))
    flag = extend_to_flag_basis(lattice, form.witnesses)
    q = q_values(body_minima(lattice, ball)).q
    instance = StrongInstance((ball,), flag, q + (1,))
    failures = []
    c1 = check_C1(instance)
    if not c1:
        failures.append(f"(C1) fails although qᵢ > 2/λᵢ: {c1.witness}")
        return ViaStrongReport(count_ball(lattice, ball), q, math.prod(q), StrongReport(0, 0, {}, []), failures)
    report = verify_strong(instance)
    count = count_ball(lattice, ball)
    if count != report.total:
        failures.append(f"flag-coordinate count {report.total} differs from direct count {count}")
    return ViaStrongReport(count, q, math.prod(q), report, failures)
