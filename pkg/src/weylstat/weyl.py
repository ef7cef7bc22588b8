"""Weyl group elements, their action on roots, enumeration and sampling.

Elements of classical components are signed permutations stored per component
as a permutation of ``1..n`` plus a sign vector (type A: all signs positive;
type D: evenly many negative signs).  The G2 component uses indices into a
fixed 12-element group table generated once from the two simple reflections.

Composition convention, locked by tests: ``compose(u, v)`` is the map
``x -> u(v(x))``.

Enumeration order is a public contract: per component, lexicographic
permutations crossed with lexicographic sign vectors (``+`` before ``-``,
type D filtered to even parity), components combined most-significant-first;
G2 in table order.
"""

from __future__ import annotations

import hashlib
import itertools
import random
from dataclasses import dataclass, field

from .errors import ComponentMismatchError, TooLargeError, WeylstatError
from .rootsys import Root, RootSystem

DEFAULT_CAP = 10**7


# -- G2 group table ----------------------------------------------------------

def _g2_compose(u, v):
    out = []
    for t in v:
        s = 1 if t > 0 else -1
        img = u[abs(t) - 1]
        out.append(s * img)
    return tuple(out)


def _g2_build_table():
    """Close the two simple reflections under composition, BFS from identity."""
    ident = (1, 2, 3, 4, 5, 6)
    s1 = (-1, 5, 4, 3, 2, 6)  # reflection in the short simple root r1
    s2 = (3, -2, 1, 4, 6, 5)  # reflection in the long simple root r2
    elems = [ident]
    index = {ident: 0}
    queue = [ident]
    while queue:
        g = queue.pop(0)
        for gen in (s1, s2):
            h = _g2_compose(g, gen)
            if h not in index:
                index[h] = len(elems)
                elems.append(h)
                queue.append(h)
    mul = tuple(
        tuple(index[_g2_compose(a, b)] for b in elems) for a in elems
    )
    inv = tuple(next(j for j, b in enumerate(elems) if mul[i][j] == 0) for i, _ in enumerate(elems))
    return tuple(elems), mul, inv, index


_G2_ELEMS, _G2_MUL, _G2_INV, _G2_INDEX = _g2_build_table()
_G2_ORDER = len(_G2_ELEMS)
# Per-element bitmask over the six roots: bit k set iff r_{k+1} is an inversion.
_G2_INV_MASKS = tuple(
    sum(1 << k for k, t in enumerate(g) if t < 0) for g in _G2_ELEMS
)
_G2_SIMPLE_IDX = (_G2_INDEX[(-1, 5, 4, 3, 2, 6)], _G2_INDEX[(3, -2, 1, 4, 6, 5)])


# -- element data model -------------------------------------------------------

@dataclass(frozen=True)
class SignedPermPart:
    """One classical component: ``e_i -> signs[i-1] * e_(perm[i-1])``."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]


@dataclass(frozen=True)
class G2Part:
    index: int


@dataclass(frozen=True)
class WeylElement:
    """Immutable group element of the system it was created for."""

    system: RootSystem = field(compare=False, repr=False)
    parts: tuple[SignedPermPart | G2Part, ...]

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return compose(self, other)


def _check_same_system(w: WeylElement, rs: RootSystem):
    if w.system.spec != rs.spec:
        raise ComponentMismatchError(
            f"element of {w.system.spec} used with system {rs.spec}"
        )


def identity(rs: RootSystem) -> WeylElement:
    parts = []
    for comp in rs.spec.components:
        if comp.family == "G2":
            parts.append(G2Part(0))
        else:
            n = comp.dimension
            parts.append(SignedPermPart(tuple(range(1, n + 1)), (1,) * n))
    return WeylElement(rs, tuple(parts))


def _validated_part(family: str, part):
    if family == "G2":
        if not isinstance(part, G2Part) or not 0 <= part.index < _G2_ORDER:
            raise WeylstatError(f"invalid G2 part {part!r}")
        return part
    if not isinstance(part, SignedPermPart):
        raise WeylstatError(f"expected a signed permutation, got {part!r}")
    n = len(part.perm)
    if sorted(part.perm) != list(range(1, n + 1)) or len(part.signs) != n:
        raise WeylstatError(f"malformed signed permutation {part!r}")
    if any(s not in (1, -1) for s in part.signs):
        raise WeylstatError("signs must be +1/-1")
    if family == "A" and any(s == -1 for s in part.signs):
        raise WeylstatError("type A parts carry no signs")
    if family == "D" and part.signs.count(-1) % 2 != 0:
        raise WeylstatError("type D parts need evenly many negative signs")
    return part


def element(rs: RootSystem, parts) -> WeylElement:
    """Assemble an element from per-component parts, validating invariants."""
    comps = rs.spec.components
    parts = tuple(parts)
    if len(parts) != len(comps):
        raise ComponentMismatchError(f"expected {len(comps)} parts, got {len(parts)}")
    return WeylElement(rs, tuple(
        _validated_part(c.family, p) for c, p in zip(comps, parts)
    ))


# -- action on roots ----------------------------------------------------------

def apply(w: WeylElement, beta: Root) -> tuple[Root, int]:
    """Image of ``beta`` under ``w`` as (canonical positive root, sign)."""
    rs = w.system
    rs.index(beta)  # membership check, raises for stale roots
    part = w.parts[beta.component]
    fam = rs.spec.components[beta.component].family

    if fam == "G2":
        t = _G2_ELEMS[part.index][beta.i - 1]
        return Root(beta.component, "G", abs(t)), (1 if t > 0 else -1)

    perm, signs = part.perm, part.signs
    ci = beta.component
    if beta.form == "O":
        a, sa = perm[beta.i - 1], signs[beta.i - 1]
        return Root(ci, "O", a), sa
    i, j = beta.i, beta.j
    a, sa = perm[i - 1], signs[i - 1]
    b, sb = perm[j - 1], signs[j - 1]
    if beta.form == "N":
        # image is sb*e_b - sa*e_a
        if sa == 1 and sb == 1:
            return (Root(ci, "N", a, b), 1) if a < b else (Root(ci, "N", b, a), -1)
        if sa == -1 and sb == 1:
            return Root(ci, "P", min(a, b), max(a, b)), 1
        if sa == 1 and sb == -1:
            return Root(ci, "P", min(a, b), max(a, b)), -1
        return (Root(ci, "N", b, a), 1) if b < a else (Root(ci, "N", a, b), -1)
    # P root: image is sb*e_b + sa*e_a
    if sa == 1 and sb == 1:
        return Root(ci, "P", min(a, b), max(a, b)), 1
    if sa == -1 and sb == -1:
        return Root(ci, "P", min(a, b), max(a, b)), -1
    if sa == -1:  # e_b - e_a
        return (Root(ci, "N", a, b), 1) if a < b else (Root(ci, "N", b, a), -1)
    return (Root(ci, "N", b, a), 1) if b < a else (Root(ci, "N", a, b), -1)


def is_inversion(w: WeylElement, beta: Root) -> bool:
    """True iff ``w`` sends ``beta`` to a negative root."""
    return apply(w, beta)[1] < 0


def inversion_set(w: WeylElement) -> set[Root]:
    return {beta for beta in w.system.roots if is_inversion(w, beta)}


# -- group structure -----------------------------------------------------------

def compose(u: WeylElement, v: WeylElement) -> WeylElement:
    """The element ``x -> u(v(x))``."""
    _check_same_system(u, v.system)
    parts = []
    for pu, pv in zip(u.parts, v.parts):
        if isinstance(pu, G2Part):
            parts.append(G2Part(_G2_MUL[pu.index][pv.index]))
        else:
            n = len(pu.perm)
            perm = tuple(pu.perm[pv.perm[i] - 1] for i in range(n))
            signs = tuple(pv.signs[i] * pu.signs[pv.perm[i] - 1] for i in range(n))
            parts.append(SignedPermPart(perm, signs))
    return WeylElement(u.system, tuple(parts))


def inverse(w: WeylElement) -> WeylElement:
    parts = []
    for p in w.parts:
        if isinstance(p, G2Part):
            parts.append(G2Part(_G2_INV[p.index]))
        else:
            n = len(p.perm)
            perm = [0] * n
            signs = [1] * n
            for i in range(n):
                perm[p.perm[i] - 1] = i + 1
                signs[p.perm[i] - 1] = p.signs[i]
            parts.append(SignedPermPart(tuple(perm), tuple(signs)))
    return WeylElement(w.system, tuple(parts))


def simple_reflection(rs: RootSystem, alpha: Root) -> WeylElement:
    """Reflection in a simple root (non-simple roots are rejected)."""
    if rs.height(alpha) != 1:
        raise WeylstatError(f"{alpha} is not a simple root")
    parts = list(identity(rs).parts)
    fam = rs.spec.components[alpha.component].family
    if fam == "G2":
        parts[alpha.component] = G2Part(_G2_SIMPLE_IDX[alpha.i - 1])
    else:
        n = rs.spec.components[alpha.component].dimension
        perm = list(range(1, n + 1))
        signs = [1] * n
        if alpha.form == "N":
            perm[alpha.i - 1], perm[alpha.j - 1] = perm[alpha.j - 1], perm[alpha.i - 1]
        elif alpha.form == "O":
            signs[alpha.i - 1] = -1
        else:  # P[i,j]: e_i -> -e_j, e_j -> -e_i
            perm[alpha.i - 1], perm[alpha.j - 1] = perm[alpha.j - 1], perm[alpha.i - 1]
            signs[alpha.i - 1] = -1
            signs[alpha.j - 1] = -1
        parts[alpha.component] = SignedPermPart(tuple(perm), tuple(signs))
    return WeylElement(rs, tuple(parts))


def longest_element(rs: RootSystem) -> WeylElement:
    """The unique element sending every positive root to a negative one."""
    parts = []
    for comp in rs.spec.components:
        fam, n = comp.family, comp.rank
        if fam == "G2":
            full = (1 << 6) - 1
            idx = next(i for i, m in enumerate(_G2_INV_MASKS) if m == full)
            parts.append(G2Part(idx))
        elif fam == "A":
            m = comp.dimension
            parts.append(SignedPermPart(tuple(range(m, 0, -1)), (1,) * m))
        elif fam in ("B", "C"):
            parts.append(SignedPermPart(tuple(range(1, n + 1)), (-1,) * n))
        else:  # type D: negate everything, or all but the first coordinate
            if n % 2 == 0:
                signs = (-1,) * n
            else:
                signs = (1,) + (-1,) * (n - 1)
            parts.append(SignedPermPart(tuple(range(1, n + 1)), signs))
    return WeylElement(rs, tuple(parts))


def group_order(rs: RootSystem) -> int:
    order = 1
    for comp in rs.spec.components:
        fam, n = comp.family, comp.rank
        if fam == "A":
            f = 1
            for k in range(2, n + 2):
                f *= k
            order *= f
        elif fam in ("B", "C", "D"):
            f = 1
            for k in range(2, n + 1):
                f *= k
            order *= f * (2 ** (n if fam != "D" else n - 1))
        else:
            order *= _G2_ORDER
    return order


# -- enumeration ----------------------------------------------------------------

def _component_parts_iter(comp):
    fam, n = comp.family, comp.rank
    if fam == "G2":
        for i in range(_G2_ORDER):
            yield G2Part(i)
        return
    dim = comp.dimension
    if fam == "A":
        for perm in itertools.permutations(range(1, dim + 1)):
            yield SignedPermPart(perm, (1,) * dim)
    elif fam in ("B", "C"):
        for perm in itertools.permutations(range(1, n + 1)):
            for signs in itertools.product((1, -1), repeat=n):
                yield SignedPermPart(perm, signs)
    else:
        for perm in itertools.permutations(range(1, n + 1)):
            for head in itertools.product((1, -1), repeat=n - 1):
                last = 1
                for s in head:
                    last *= s
                yield SignedPermPart(perm, head + (last,))


def enumerate_elements(rs: RootSystem, cap: int = DEFAULT_CAP):
    """Yield every group element exactly once, in the documented order.

    The order is estimated from the order formula up front; exceeding ``cap``
    raises :class:`TooLargeError` before any work is done.
    """
    order = group_order(rs)
    if order > cap:
        raise TooLargeError(order, cap)
    for parts in itertools.product(*(_component_parts_iter(c) for c in rs.spec.components)):
        yield WeylElement(rs, parts)


# -- sampling --------------------------------------------------------------------

def derived_seed(master: int, stream) -> int:
    """Split function for independent rng streams: sha256 of ``master:stream``."""
    digest = hashlib.sha256(f"{master}:{stream}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def sample_uniform(rs: RootSystem, rng: random.Random) -> WeylElement:
    """One exactly uniform draw from the group.

    Per component: unbiased shuffle for the permutation; independent fair
    sign bits for types B/C; type D draws n-1 free bits and fixes the last
    sign to even parity (exact, since the parity classes are equinumerous);
    G2 picks a uniform table index.
    """
    parts = []
    for comp in rs.spec.components:
        fam, n = comp.family, comp.rank
        if fam == "G2":
            parts.append(G2Part(rng.randrange(_G2_ORDER)))
            continue
        dim = comp.dimension
        perm = list(range(1, dim + 1))
        rng.shuffle(perm)
        if fam == "A":
            signs = (1,) * dim
        elif fam in ("B", "C"):
            signs = tuple(1 - 2 * rng.getrandbits(1) for _ in range(n))
        else:
            head = [1 - 2 * rng.getrandbits(1) for _ in range(n - 1)]
            last = 1
            for s in head:
                last *= s
            signs = tuple(head + [last])
        parts.append(SignedPermPart(tuple(perm), signs))
    return WeylElement(rs, tuple(parts))


# -- parabolic decomposition -------------------------------------------------------

def parabolic_decompose(w: WeylElement, gamma: set[Root] | list[Root] | tuple[Root, ...]):
    """Split ``w = wq * wp`` with ``wp`` in the standard parabolic subgroup.

    ``gamma`` must consist of simple roots.  ``wq`` sends every root of
    ``gamma`` to a positive root; computed by greedily peeling reflections
    off the right while some root of ``gamma`` is an inversion.
    """
    rs = w.system
    gamma = sorted(set(gamma), key=rs.index)
    for alpha in gamma:
        if rs.height(alpha) != 1:
            raise WeylstatError(f"{alpha} is not a simple root")
    refl = {alpha: simple_reflection(rs, alpha) for alpha in gamma}
    wq = w
    wp = identity(rs)
    while True:
        desc = next((a for a in gamma if is_inversion(wq, a)), None)
        if desc is None:
            return wq, wp
        wq = compose(wq, refl[desc])
        wp = compose(refl[desc], wp)


# -- rendering ----------------------------------------------------------------------

def render_element(w: WeylElement) -> str:
    """One-line notation, e.g. ``[3,-1,2]`` for a B3 element, ``g7`` for G2."""
    chunks = []
    for p in w.parts:
        if isinstance(p, G2Part):
            chunks.append(f"g{p.index}")
        else:
            vals = [s * t for t, s in zip(p.perm, p.signs)]
            chunks.append("[" + ",".join(str(v) for v in vals) + "]")
    return "x".join(chunks)


def parse_element(rs: RootSystem, text: str) -> WeylElement:
    parts = []
    for comp, chunk in zip(rs.spec.components, text.strip().split("x")):
        chunk = chunk.strip()
        if comp.family == "G2":
            if not chunk.startswith("g"):
                raise WeylstatError(f"expected g<idx> for a G2 part, got {chunk!r}")
            parts.append(G2Part(int(chunk[1:])))
        else:
            vals = [int(v) for v in chunk.strip("[]").split(",")]
            perm = tuple(abs(v) for v in vals)
            signs = tuple(1 if v > 0 else -1 for v in vals)
            parts.append(SignedPermPart(perm, signs))
    return element(rs, parts)
