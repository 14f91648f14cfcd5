"""Two-dimensional fans: profiles, (virtual) inscribability, and polygon construction.

A profile lists the angles of the regions counterclockwise.  All conditions
are linear in the angles, so profiles given as rational multiples of pi are
classified exactly; the polygons themselves are built in floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import bisect

from .errors import BadParams, EvenN, NotInscribable, NotPlanar, TriangleInequality
from .exact import FLOAT
from .fan import Fan
from .polytope import Polytope, convex_hull


@dataclass(frozen=True)
class Profile:
    """Region angles; ``exact`` means ``angles`` are Fractions in units of pi."""
    angles: tuple
    exact: bool = True

    def __post_init__(self):
        if self.exact:
            angles = tuple(Fraction(a) for a in self.angles)
            full, half = Fraction(2), Fraction(1)
        else:
            angles = tuple(float(a) for a in self.angles)
            full, half = 2 * math.pi, math.pi
        object.__setattr__(self, "angles", angles)
        if len(angles) < 3:
            raise BadParams("a profile needs at least 3 regions")
        tol = 0 if self.exact else 1e-9
        if any(not (tol < a < half - tol) for a in angles):
            raise BadParams("every angle must lie strictly between 0 and pi")
        if abs(sum(angles) - full) > tol * 10:
            raise BadParams("angles must sum to 2 pi")

    @classmethod
    def from_pi_multiples(cls, multiples):
        return cls(tuple(Fraction(m) for m in multiples), True)

    @classmethod
    def from_radians(cls, radians):
        return cls(tuple(radians), False)

    @property
    def n(self):
        return len(self.angles)

    @property
    def pi(self):
        return Fraction(1) if self.exact else math.pi

    def radians(self):
        return tuple(float(a) * math.pi for a in self.angles) if self.exact else self.angles

    def __getitem__(self, i):
        return self.angles[i % self.n]

    def _positive(self, x):
        return x > 0 if self.exact else x > 1e-9

    def _zero(self, x):
        return x == 0 if self.exact else abs(x) <= 1e-9


# --- fans <-> profiles --------------------------------------------------------------

def _rot(v, quarter):
    x, y = v
    return (-y, x) if quarter > 0 else (y, -x)


def _planar_coordinates(F: Fan):
    """Map a fan with ``dim - len(lineality) == 2`` to 2D normals (float)."""
    if F.dim == 2 and not F.lineality:
        return {k: tuple(float(x) for x in a) for k, a in F.normals.items()}
    if F.dim - len(F.lineality) != 2:
        raise NotPlanar(f"fan has {F.dim - len(F.lineality)} essential dimensions")
    L = np.array([[float(x) for x in v] for v in F.lineality]).reshape(len(F.lineality), F.dim)
    _, _, vt = np.linalg.svd(L)
    basis = vt[len(F.lineality):]
    return {k: tuple(basis @ np.array([float(x) for x in a])) for k, a in F.normals.items()}


def _cyclic_regions(F: Fan):
    for R in F.regions:
        if len(F.neighbors(R)) != 2:
            raise NotPlanar(f"region {R} has {len(F.neighbors(R))} walls")
    order = [F.base_region]
    prev = None
    while True:
        nxt = [S for S in F.neighbors(order[-1]) if S != prev]
        if prev is None:
            nxt = nxt[:1]
        S = nxt[0]
        if S == order[0]:
            break
        prev = order[-1]
        order.append(S)
    if len(order) != len(F.regions):
        raise NotPlanar("dual graph is not a single cycle")
    return order


def profile_of_fan(F: Fan) -> Profile:
    """Counterclockwise region angles, starting at the base region."""
    normals = _planar_coordinates(F)
    order = _cyclic_regions(F)
    for seq in (order, [order[0]] + order[:0:-1]):
        n = len(seq)
        # The wall from R_i to R_{i+1} is the ray alpha rotated clockwise.
        rays = [_rot(normals[(seq[i], seq[(i + 1) % n])], -1) for i in range(n)]
        angles = []
        for i in range(n):
            a, b = rays[i - 1], rays[i]
            angles.append(math.atan2(a[0] * b[1] - a[1] * b[0], a[0] * b[0] + a[1] * b[1]))
        if all(1e-12 < x < math.pi - 1e-12 for x in angles) and abs(sum(angles) - 2 * math.pi) < 1e-6:
            return Profile.from_radians(angles)
    raise NotPlanar("walls do not wind once around the origin")


def fan_from_profile(beta: Profile, rotation=0.0) -> Fan:
    """Float fan with regions ``0..n-1`` counterclockwise; the ray between R_{n-1} and R_0 sits at ``rotation``."""
    rad = beta.radians()
    n = len(rad)
    theta = [rotation]
    for b in rad[:-1]:
        theta.append(theta[-1] + b)
    rays = [(math.cos(t), math.sin(t)) for t in theta]  # ray k starts region k
    walls = []
    for i in range(n):
        r = rays[(i + 1) % n]
        walls.append((i, (i + 1) % n, _rot(r, +1)))
    gens = {i: (rays[i], rays[(i + 1) % n]) for i in range(n)}
    interior = {i: (math.cos(theta[i] + rad[i] / 2), math.sin(theta[i] + rad[i] / 2)) for i in range(n)}
    return Fan.from_walls(2, range(n), walls, FLOAT, link_cycles=(tuple(range(n)),),
                          generators=gens, interior=interior)


# --- classification -----------------------------------------------------------------

def even_sum(beta: Profile):
    return sum(beta.angles[0::2], beta.pi * 0)


def virtually_inscribable_profile(beta: Profile):
    """``(virtually inscribable, dimension of the inscribed space)``."""
    if beta.n % 2:
        return True, 1
    ok = beta._zero(even_sum(beta) - beta.pi)
    return ok, (2 if ok else 0)


def alternating_sum(beta: Profile, j):
    """``beta_j - beta_{j+1} + ... + beta_{j+n-1}``."""
    return sum(((-1) ** k * beta[j + k] for k in range(beta.n)), beta.pi * 0)


def window_sum(beta: Profile, h, j):
    m = beta.n // 2
    return (sum((beta[2 * i + j] for i in range(1, h + 1)), beta.pi * 0)
            + sum((beta[2 * i + 1 + j] for i in range(h + 1, m)), beta.pi * 0))


def inscribable_profile(beta: Profile) -> bool:
    if beta.n % 2:
        return all(beta._positive(alternating_sum(beta, j)) for j in range(beta.n))
    if not virtually_inscribable_profile(beta)[0]:
        return False
    m = beta.n // 2
    return all(beta._positive(beta.pi - window_sum(beta, h, j)) for h in range(m) for j in range(beta.n))


def even_alpha_family(beta: Profile):
    """``(c, (lo, hi))``: central angles are ``c_i + (-1)^i t`` and all positive iff ``lo < t < hi``."""
    if beta.n % 2:
        raise BadParams("odd profiles have a unique solution")
    c = [beta.pi * 0]
    for i in range(1, beta.n):
        c.append(2 * beta[i] - c[-1])
    lo = max(-c[i] for i in range(0, beta.n, 2))
    hi = min(c[i] for i in range(1, beta.n, 2))
    return tuple(c), (lo, hi)


def even_inscribable_by_angles(beta: Profile) -> bool:
    """Direct test: some positive central angles produce the profile."""
    if not virtually_inscribable_profile(beta)[0]:
        return False
    _, (lo, hi) = even_alpha_family(beta)
    return beta._positive(hi - lo)


def alphas_from_profile(beta: Profile):
    """Central angles ``alpha`` with ``2 beta_i = alpha_{i-1} + alpha_i`` (odd ``n``).

    The inverse is ``alpha_i = beta_{i+1} - beta_{i+2} + ... + beta_{i+n}``.
    """
    if beta.n % 2 == 0:
        raise EvenN("for even n the angles form a one-parameter family; see even_alpha_family")
    return tuple(alternating_sum(beta, i + 1) for i in range(beta.n))


def profile_from_alphas(alphas):
    """Forward map: ``beta_i = (alpha_{i-1} + alpha_i) / 2``."""
    n = len(alphas)
    return tuple((alphas[i - 1] + alphas[i]) / 2 for i in range(n))


# --- construction ------------------------------------------------------------------------

def _polygon(central, radius, rotation):
    theta = rotation
    pts = []
    for a in central:
        pts.append((radius * math.cos(theta), radius * math.sin(theta)))
        theta += a
    return convex_hull(pts, FLOAT)


def polygon_from_profile(beta: Profile, radius=1.0, rotation=0.0, t=None) -> Polytope:
    """Inscribed polygon with profile ``beta``; ``t`` picks a member of the even family."""
    if not inscribable_profile(beta):
        raise NotInscribable("profile fails the inscribability inequalities")
    scale = math.pi if beta.exact else 1.0
    if beta.n % 2:
        alphas = [float(a) * scale for a in alphas_from_profile(beta)]
    else:
        c, (lo, hi) = even_alpha_family(beta)
        t = (float(lo) + float(hi)) / 2 * scale if t is None else t
        if not float(lo) * scale < t < float(hi) * scale:
            raise NotInscribable("parameter t outside the admissible interval")
        alphas = [float(ci) * scale + (-1) ** i * t for i, ci in enumerate(c)]
    return _polygon(alphas, radius, rotation)


def circumradius_from_lengths(lengths):
    """Circumradius of the cyclic polygon with the given side lengths (in order)."""
    L = [float(x) for x in lengths]
    if any(x <= 0 for x in L):
        raise BadParams("side lengths must be positive")
    total = sum(L)
    longest = max(L)
    if longest >= total - longest:
        raise TriangleInequality("longest side is at least the sum of the others")
    r0 = longest / 2

    def chord_angles(r):
        return [2 * math.asin(min(1.0, x / (2 * r))) for x in L]

    hi = r0
    while True:  # the circle grows until the chords subtend less than a full turn
        hi *= 2
        if sum(chord_angles(hi)) < 2 * math.pi:
            break
    if sum(chord_angles(r0)) >= 2 * math.pi:
        r = bisect(lambda r: sum(chord_angles(r)) - 2 * math.pi, r0, hi, xtol=1e-15, rtol=1e-14)
        return r, False
    # Center outside: the longest chord spans the sum of the other arcs.
    k = L.index(longest)

    def gap(r):
        a = chord_angles(r)
        return sum(a) - 2 * a[k]
    r = bisect(gap, r0, hi, xtol=1e-15, rtol=1e-14)
    return r, True


def polygon_from_lengths(lengths) -> Polytope:
    """Inscribed polygon with side lengths ``lengths`` in counterclockwise order."""
    L = [float(x) for x in lengths]
    r, obtuse = circumradius_from_lengths(L)
    arcs = [2 * math.asin(min(1.0, x / (2 * r))) for x in L]
    if obtuse:
        k = L.index(max(L))
        arcs[k] = 2 * math.pi - arcs[k]
    return _polygon(arcs, r, 0.0)

