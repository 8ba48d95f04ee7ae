"""Instance files (JSON, rationals as "p/q" strings) and seeded random instances."""

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .bhw import body_minima, q_values
from .core import Ball, InnerProductSpace, Lattice, gram
from .enumeration import successive_minima
from .errors import InvalidInputError
from .reduction import extend_to_flag_basis
from .translation import SpherePack, pairwise_coset_distances

MODES = ("theorem1", "strong", "translation", "oracle-diff")
MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class InstanceFile:
    """Parsed instance. ``kind`` is "ellipsoid" or "spheres"; ``radii`` is set for spheres."""

    lattice: Lattice
    space: InnerProductSpace
    kind: str
    balls: tuple
    radii: tuple = None
    q_override: tuple = None
    flag: tuple = None

    @property
    def dim(self):
        return self.lattice.dim

    def single_ball(self):
        if len(self.balls) != 1:
            raise InvalidInputError(f"this command needs a single body, got {len(self.balls)}", "body")
        return self.balls[0]

    def sphere_pack(self):
        return SpherePack(self.space, self.lattice, self.balls)


def _get(obj, key, path, required=True):
    if not isinstance(obj, dict):
        raise InvalidInputError("expected an object", path)
    if key not in obj:
        if required:
            raise InvalidInputError("missing field", f"{path}.{key}" if path else key)
        return None
    return obj[key]


def _int_list(values, field):
    if not isinstance(values, list) or any(isinstance(v, bool) or not isinstance(v, int) for v in values):
        raise InvalidInputError("expected a list of integers", field)
    return tuple(values)


def instance_from_dict(data):
    dim = _get(data, "dim", "")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise InvalidInputError("dim must be a positive integer", "dim")

    def square(value, field):
        if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
            raise InvalidInputError("expected an array of arrays", field)
        M = la.matrix(value, field)
        if len(M) != dim or len(M[0]) != dim:
            raise InvalidInputError(f"expected a {dim}x{dim} matrix", field)
        return M

    def vec(value, field):
        if not isinstance(value, list) or len(value) != dim:
            raise InvalidInputError(f"expected an array of {dim} rationals", field)
        return la.vector(value, field)

    lattice = Lattice(square(_get(data, "lattice_basis", ""), "lattice_basis"))
    form = _get(data, "form", "", required=False)
    Q = square(form, "form") if form is not None else la.identity(dim)

    body = _get(data, "body", "")
    if not isinstance(body, dict) or len(body) != 1:
        raise InvalidInputError('body must have exactly one of "ellipsoid" or "spheres"', "body")
    radii = None
    if "ellipsoid" in body:
        ell = body["ellipsoid"]
        kind = "ellipsoid"
        own = _get(ell, "form", "body.ellipsoid", required=False)
        if own is not None:
            Q = square(own, "body.ellipsoid.form")
        space = _space(Q, "body.ellipsoid.form" if own is not None else "form")
        center = vec(_get(ell, "center", "body.ellipsoid"), "body.ellipsoid.center")
        r_sq = _get(ell, "radius_sq", "body.ellipsoid", required=False)
        r_sq = la.to_rational(r_sq, "body.ellipsoid.radius_sq") if r_sq is not None else Fraction(1)
        if r_sq < 0:
            raise InvalidInputError("must be non-negative", "body.ellipsoid.radius_sq")
        balls = (Ball(space, center, r_sq),)
    elif "spheres" in body:
        kind = "spheres"
        space = _space(Q, "form")
        items = body["spheres"]
        if not isinstance(items, list) or not items:
            raise InvalidInputError("expected a non-empty array", "body.spheres")
        centers, rs = [], []
        for i, item in enumerate(items):
            path = f"body.spheres[{i}]"
            centers.append(vec(_get(item, "center", path), f"{path}.center"))
            r = la.to_rational(_get(item, "radius", path), f"{path}.radius")
            if r < 0:
                raise InvalidInputError("must be non-negative", f"{path}.radius")
            rs.append(r)
        radii = tuple(rs)
        balls = tuple(Ball(space, c, r * r) for c, r in zip(centers, rs))
    else:
        raise InvalidInputError('body must have exactly one of "ellipsoid" or "spheres"', "body")

    q = _get(data, "q_override", "", required=False)
    if q is not None:
        q = _int_list(q, "q_override")
    flag = _get(data, "flag", "", required=False)
    if flag is not None:
        F = square(flag, "flag")
        if not la.is_integral([v for row in F for v in row]) or abs(la.det(F)) != 1:
            raise InvalidInputError("flag must be a unimodular integer matrix", "flag")
        flag = tuple(la.as_int_vector(la.column(F, j)) for j in range(dim))
    return InstanceFile(lattice, space, kind, balls, radii, q, flag)


def _space(Q, field):
    try:
        return InnerProductSpace(Q)
    except InvalidInputError as exc:
        raise InvalidInputError(str(exc).split(": ", 1)[-1], field) from None


def parse_instance(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return instance_from_dict(data)


def _mat(M):
    return [[la.format_rational(v) for v in row] for row in M]


def _vec(v):
    return [la.format_rational(x) for x in v]


def instance_to_dict(inst):
    data = {
        "dim": inst.dim,
        "lattice_basis": _mat(inst.lattice.basis),
        "form": _mat(inst.space.Q),
    }
    if inst.kind == "ellipsoid":
        b = inst.balls[0]
        data["body"] = {"ellipsoid": {"center": _vec(b.center), "radius_sq": la.format_rational(b.radius_sq)}}
    else:
        data["body"] = {"spheres": [{"center": _vec(b.center), "radius": la.format_rational(r)}
                                    for b, r in zip(inst.balls, inst.radii)]}
    if inst.q_override is not None:
        data["q_override"] = list(inst.q_override)
    if inst.flag is not None:
        data["flag"] = [[inst.flag[j][i] for j in range(inst.dim)] for i in range(inst.dim)]
    return data


def serialize_instance(inst):
    return json.dumps(instance_to_dict(inst), indent=2)


def splitmix64(x):
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def instance_seed(seed, index):
    """Per-instance seed, independent of generation order."""
    return splitmix64(splitmix64(seed & MASK64) ^ index)


@dataclass(frozen=True)
class CampaignConfig:
    seed: int = 0
    count: int = 1
    dims: tuple = (2, 3, 4)
    entry_bound: int = 5
    mode: str = "theorem1"
    max_radius: Fraction = Fraction(3)
    max_spheres: int = 5

    def __post_init__(self):
        if not 0 <= self.seed <= MASK64:
            raise InvalidInputError("seed must be a 64-bit unsigned integer", "seed")
        if self.count < 1:
            raise InvalidInputError("count must be positive", "count")
        if not self.dims or any(d < 1 for d in self.dims):
            raise InvalidInputError("dimensions must be positive", "dim")
        if self.entry_bound < 1:
            raise InvalidInputError("entry_bound must be positive", "entry_bound")
        if self.mode not in MODES:
            raise InvalidInputError(f"mode must be one of {', '.join(MODES)}", "mode")


def _rational(rng, bound, allow_negative=True):
    p = rng.randint(-bound if allow_negative else 0, bound)
    return Fraction(p, rng.randint(1, bound))


def random_basis(rng, d, bound):
    """Shear products (det 1) with one column scaled by 1 or 2."""
    B = [[int(i == j) for j in range(d)] for i in range(d)]
    for _ in range(d if d > 1 else 0):
        i, j = rng.sample(range(d), 2)
        c = rng.randint(-bound, bound)
        for row in B:
            row[i] += c * row[j]
    k = rng.randrange(d)
    s = rng.randint(1, 2)
    for row in B:
        row[k] *= s
    return tuple(tuple(Fraction(v) for v in row) for row in B)


def random_form(rng, d, bound):
    """``AᵀA + I`` for a sparse random rational A, positive definite by construction."""
    A = [[_rational(rng, bound) if rng.random() < 0.5 else Fraction(0) for _ in range(d)] for _ in range(d)]
    AtA = la.matmul(la.transpose(A), A)
    return tuple(tuple(AtA[i][j] + (i == j) for j in range(d)) for i in range(d))


def _radius(rng, cfg):
    den = rng.randint(1, cfg.entry_bound)
    return Fraction(rng.randint(1, int(cfg.max_radius * den)), den)


def _ellipsoid(rng, cfg, dims):
    d = rng.choice(dims)
    lattice = Lattice(random_basis(rng, d, cfg.entry_bound))
    space = InnerProductSpace(random_form(rng, d, cfg.entry_bound))
    if rng.randrange(20) == 0:
        z = [rng.randint(-2, 2) for _ in range(d)]
        ball = Ball(space, lattice.to_ambient(z), 0)
    else:
        r = _radius(rng, cfg)
        ball = Ball(space, tuple(_rational(rng, cfg.entry_bound) for _ in range(d)), r * r)
    return InstanceFile(lattice, space, "ellipsoid", (ball,))


def _spheres(rng, cfg, dims):
    d = rng.choice(dims)
    lattice = Lattice(random_basis(rng, d, cfg.entry_bound))
    space = InnerProductSpace(random_form(rng, d, cfg.entry_bound))
    n = rng.randint(1, cfg.max_spheres)
    while True:
        centers = [tuple(_rational(rng, cfg.entry_bound) for _ in range(d)) for _ in range(n)]
        dummy = SpherePack(space, lattice, tuple(Ball(space, c, 0) for c in centers))
        D = pairwise_coset_distances(dummy)
        gaps = [D[i][j] for i in range(n) for j in range(i + 1, n)]
        if all(g > 0 for g in gaps):
            break
    rho = _radius(rng, cfg)
    if gaps:
        # common radius ρ with (2ρ)² < min d²  =>  rᵢ + rⱼ < d_ij for every pair
        while (2 * rho) ** 2 >= min(gaps):
            rho /= 2
    radii = tuple(rho * Fraction(rng.randint(1, 4), 4) for _ in range(n))
    balls = tuple(Ball(space, c, r * r) for c, r in zip(centers, radii))
    return InstanceFile(lattice, space, "spheres", balls, radii)


def strong_setup(inst):
    """Flag and ``q₁..q_{d+1}`` for an instance lacking overrides.

    The flag comes from the minima of the form and the q-values from the
    largest ball, which makes (C1) hold for every ball; ``q_{d+1} = 1``.
    """
    G = gram(inst.lattice, inst.space)
    if inst.flag is not None:
        flag_e = inst.flag
    else:
        flag_e = extend_to_flag_basis(inst.lattice, successive_minima(G).witnesses).e
    if inst.q_override is not None:
        q = inst.q_override
    else:
        biggest = max(inst.balls, key=lambda b: b.radius_sq)
        q = q_values(body_minima(inst.lattice, biggest)).q + (1,)
    return flag_e, q


def generate_instance(cfg, index):
    rng = random.Random(instance_seed(cfg.seed, index))
    if cfg.mode in ("theorem1",):
        return _ellipsoid(rng, cfg, cfg.dims)
    if cfg.mode == "oracle-diff":
        return _ellipsoid(rng, cfg, tuple(d for d in cfg.dims if d <= 3) or cfg.dims)
    if cfg.mode == "translation":
        return _spheres(rng, cfg, tuple(d for d in cfg.dims if d <= 3) or cfg.dims)
    inst = _spheres(rng, cfg, cfg.dims)
    flag_e, q = strong_setup(inst)
    return InstanceFile(inst.lattice, inst.space, inst.kind, inst.balls, inst.radii, tuple(q), flag_e)


def generate_instances(cfg):
    for index in range(cfg.count):
        yield generate_instance(cfg, index)
