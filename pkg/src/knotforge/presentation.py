"""
Group presentations of knot groups: free-group words, Fox free differential
calculus, Wirtinger presentations from PD codes, the symmetric-union
presentation template with its epimorphism onto the partial knot's group,
and the 2-bridge one-relator presentation.

Words are freely reduced tuples of (generator index, +-1).  Crossing
relators are stored in the template form  in . o^-s . out^-1 . o^s  (s the
crossing sign), which is trivial exactly when out = o^s . in . o^-s.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import InvalidDiagram


# -- free-group words --------------------------------------------------------

def reduce_word(letters):
    """Freely reduce a sequence of (gen, +-1) letters."""
    out = []
    for g, e in letters:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def inverse_word(w):
    return tuple((g, -e) for g, e in reversed(w))


def concat(*words):
    letters = []
    for w in words:
        letters.extend(w)
    return reduce_word(letters)


def word_exponent_sum(w):
    return sum(e for _, e in w)


def map_word(w, images):
    """Apply a generator substitution (list of Words) to a Word."""
    letters = []
    for g, e in w:
        img = images[g]
        letters.extend(img if e == 1 else inverse_word(img))
    return reduce_word(letters)


def format_word(w, names):
    if not w:
        return "1"
    parts = []
    for g, e in w:
        parts.append(names[g] if e == 1 else names[g] + "^-1")
    return " ".join(parts)


def parse_word(text, names):
    index = {nm: i for i, nm in enumerate(names)}
    letters = []
    for tok in text.split():
        if tok == "1":
            continue
        if tok.endswith("^-1"):
            nm, e = tok[:-3], -1
        else:
            nm, e = tok, 1
        if nm not in index:
            raise ValueError("unknown generator %r" % nm)
        letters.append((index[nm], e))
    return reduce_word(letters)


# -- free group ring ---------------------------------------------------------

class GroupRingElt:
    """Formal Z-linear combination of freely-reduced words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for w, c in (terms or {}).items():
            if c:
                clean[w] = c
        self.terms = clean

    @classmethod
    def from_word(cls, w, c=1):
        return cls({reduce_word(w): c})

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElt(out)

    def __neg__(self):
        return GroupRingElt({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def left_mul_word(self, u):
        return GroupRingElt({concat(u, w): c for w, c in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = concat(w1, w2)
                out[w] = out.get(w, 0) + c1 * c2
        return GroupRingElt(out)

    def __eq__(self, other):
        return isinstance(other, GroupRingElt) and self.terms == other.terms

    def __repr__(self):
        return "GroupRingElt(%r)" % (self.terms,)


def fox_derivative(w, j):
    """Fox free derivative d(w)/d(x_j) in the free group ring.

    d(x_j)/d(x_j) = 1, d(uv) = du + u.dv, hence d(x_j^-1) = -x_j^-1.
    """
    out = {}
    prefix = ()
    for g, e in w:
        if g == j:
            if e == 1:
                key = prefix
                out[key] = out.get(key, 0) + 1
            else:
                key = concat(prefix, ((g, -1),))
                out[key] = out.get(key, 0) - 1
        prefix = concat(prefix, ((g, e),))
    return GroupRingElt(out)


# -- presentations -----------------------------------------------------------

@dataclass(frozen=True)
class GroupPresentation:
    names: tuple
    relators: tuple
    meridian: int = 0
    longitude: tuple | None = None
    is_wirtinger: bool = True

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "relators",
                          tuple(reduce_word(r) for r in self.relators))
        if not (0 <= self.meridian < len(self.names)):
            raise ValueError("meridian index out of range")
        if self.is_wirtinger:
            for r in self.relators:
                if word_exponent_sum(r) != 0:
                    raise ValueError("relator %s has nonzero exponent sum"
                                     % format_word(r, self.names))

    @property
    def num_generators(self):
        return len(self.names)

    @property
    def deficiency(self):
        return len(self.names) - len(self.relators)

    def __repr__(self):
        return "GroupPresentation(<%d gens | %d relators>)" % (
            len(self.names), len(self.relators))


def format_presentation(pres):
    lines = ["gens: %d" % pres.num_generators]
    pos = ["x%d" % (i + 1) for i in range(pres.num_generators)]
    for r in pres.relators:
        lines.append(format_word(r, pos))
    return "\n".join(lines) + "\n"


def parse_presentation(text):
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("gens:"):
        raise ValueError("presentation text must start with 'gens: n'")
    n = int(lines[0].split(":", 1)[1])
    names = tuple("x%d" % (i + 1) for i in range(n))
    relators = tuple(parse_word(ln, names) for ln in lines[1:])
    return GroupPresentation(names, relators)


@dataclass(frozen=True)
class GeneratorMap:
    """Generator-level homomorphism; images of all source relators must be
    target relators or freely reduce to 1 (checked at construction)."""
    source: GroupPresentation
    target: GroupPresentation
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.source.num_generators:
            raise ValueError("need one image per source generator")
        target_rels = set()
        for r in self.target.relators:
            for rr in (r, inverse_word(r)):
                for i in range(len(rr)):
                    target_rels.add(rr[i:] + rr[:i])
        for r in self.source.relators:
            img = map_word(r, self.images)
            if img and img not in target_rels:
                raise ValueError(
                    "relator image %s is neither trivial nor a target relator"
                    % format_word(img, self.target.names))

    def __call__(self, w):
        return map_word(w, self.images)

    def format(self):
        lines = []
        for nm, img in zip(self.source.names, self.images):
            lines.append("%s -> %s" % (nm, format_word(img, self.target.names)))
        return "\n".join(lines) + "\n"


# -- Wirtinger presentation --------------------------------------------------

def _crossing_relator(in_arc, out_arc, over_arc, sign):
    # trivial exactly when out = o^sign . in . o^-sign
    return reduce_word(((in_arc, 1), (over_arc, -sign),
                        (out_arc, -1), (over_arc, sign)))


def wirtinger(pd):
    """Wirtinger presentation: one generator per arc, one conjugation relator
    per crossing; meridian is the first arc's generator; the longitude is the
    signed product of over-arc generators along the knot, corrected by
    meridian^-writhe so its exponent sum is zero."""
    if pd.n == 0:
        return GroupPresentation(("x1",), (), meridian=0, longitude=())
    arcs, arc_of, events = pd.subarcs()
    names = tuple("x%d" % (i + 1) for i in range(len(arcs)))
    relators = []
    for ci, (a, b, c, d) in enumerate(pd.crossings):
        over_in = pd.crossings[ci][pd.over_in_pos(ci)]
        relators.append(_crossing_relator(
            arc_of[(a, "head")], arc_of[(c, "tail")],
            arc_of[(over_in, "head")], pd.sign(ci)))
    lam = []
    for _, ci in events:
        over_in = pd.crossings[ci][pd.over_in_pos(ci)]
        lam.append((arc_of[(over_in, "head")], pd.sign(ci)))
    # the conjugators q_i moving the basepoint meridian along the strand
    # compose as q_n ... q_1, so the walk-order letters are reversed
    lam.reverse()
    w = pd.writhe
    lam.extend([(0, -1 if w > 0 else 1)] * abs(w))
    return GroupPresentation(names, tuple(relators), meridian=0,
                             longitude=reduce_word(lam))


def deficiency_one(pres):
    """Drop the last relator of a deficiency-0 Wirtinger presentation (any
    one crossing relator is a consequence of the others)."""
    if pres.deficiency == 1:
        return pres
    if pres.deficiency != 0 or not pres.relators:
        raise ValueError("expected a deficiency-0 presentation")
    return GroupPresentation(pres.names, pres.relators[:-1],
                             meridian=pres.meridian,
                             longitude=pres.longitude,
                             is_wirtinger=pres.is_wirtinger)


# -- symmetric-union template ------------------------------------------------

def _role_names(base, marks):
    """Assign role-based names to the sub-arcs of the cut diagram."""
    arcs, arc_of, events = base.subarcs(cut_edges=marks, start_cut=marks[0])
    A = len(arcs)
    z1 = next(i for i, ev in enumerate(events) if ev == ("cut", marks[0]))
    z2 = (z1 + 1) % A
    assert z2 == 0
    y1, y2 = {}, {}
    for l, e in enumerate(marks[1:], start=1):
        i = next(i for i, ev in enumerate(events) if ev == ("cut", e))
        y1[l] = i
        y2[l] = (i + 1) % A
    names = [None] * A
    names[z1] = "z1"
    if names[z2] is None:
        names[z2] = "z2"
    for l in range(1, len(marks)):
        if names[y1[l]] is None:
            names[y1[l]] = "y%d_1" % l
        if names[y2[l]] is None:
            names[y2[l]] = "y%d_2" % l
    u = 0
    for i in range(A):
        if names[i] is None:
            u += 1
            names[i] = "u%d" % u
    return arcs, arc_of, events, names, z1, z2, y1, y2


def _cut_crossing_relators(base, arc_of, offset=0):
    rels = []
    for ci, (a, b, c, d) in enumerate(base.crossings):
        over_in = base.crossings[ci][base.over_in_pos(ci)]
        rels.append(_crossing_relator(
            arc_of[(a, "head")] + offset, arc_of[(c, "tail")] + offset,
            arc_of[(over_in, "head")] + offset, base.sign(ci)))
    return rels


def build_symun_presentation(spec):
    """The three outputs of the symmetric-union template: the union group
    presentation (deficiency 1, final v2 z2*^-1 relator dropped), the partial
    knot's presentation (cut Wirtinger plus identification relators), and the
    epimorphism between them (identity on unstarred arcs, star-forgetting,
    tangle generators to the identified arc classes)."""
    if not spec.is_even:
        raise InvalidDiagram("presentation-level construction needs even twists")
    base = spec.partial.base
    marks = spec.partial.marked_edges
    k = spec.partial.k
    ms = [n // 2 for n in spec.twists]
    arcs, arc_of, events, arc_names, z1, z2, y1, y2 = _role_names(base, marks)
    A = len(arcs)

    # partial-knot presentation: all sub-arcs, crossing relators,
    # y_{l,1} = y_{l,2} identifications; the z1 = z2 relator is dropped
    p_rels = _cut_crossing_relators(base, arc_of)
    for l in range(1, k + 1):
        p_rels.append(reduce_word(((y1[l], 1), (y2[l], -1))))
    partial_pres = GroupPresentation(tuple(arc_names), tuple(p_rels),
                                     meridian=z2)

    # union generators: unstarred arcs, starred arcs, v1, v2, tangle chains
    names = list(arc_names) + [nm + "*" for nm in arc_names]
    star = {i: A + i for i in range(A)}
    v1 = len(names)
    names.append("v1")
    v2 = len(names)
    names.append("v2")
    x, xs = {}, {}
    for l in range(1, k + 1):
        M = abs(ms[l - 1])
        for j in range(1, M + 2):
            x[l, j] = len(names)
            names.append("x%d_%d" % (l, j))
        for j in range(1, M + 2):
            xs[l, j] = len(names)
            names.append("x%d_%d*" % (l, j))

    rels = list(_cut_crossing_relators(base, arc_of))
    rels += _cut_crossing_relators(base, {h: star[i] for h, i in arc_of.items()})
    for l in range(1, k + 1):
        m = ms[l - 1]
        M = abs(m)
        for j in range(1, M + 1):
            if m > 0:
                rels.append(reduce_word((
                    (x[l, j], 1), (xs[l, j], 1),
                    (x[l, j + 1], -1), (xs[l, j], -1))))
                rels.append(reduce_word((
                    (xs[l, j], 1), (x[l, j + 1], -1),
                    (xs[l, j + 1], -1), (x[l, j + 1], 1))))
            else:
                rels.append(reduce_word((
                    (xs[l, j], 1), (x[l, j], 1),
                    (xs[l, j + 1], -1), (x[l, j], -1))))
                rels.append(reduce_word((
                    (x[l, j], 1), (xs[l, j + 1], -1),
                    (x[l, j + 1], -1), (xs[l, j + 1], 1))))
        rels.append(reduce_word(((x[l, 1], 1), (y1[l], -1))))
        rels.append(reduce_word(((xs[l, 1], 1), (star[y1[l]], -1))))
        rels.append(reduce_word(((x[l, M + 1], 1), (y2[l], -1))))
        rels.append(reduce_word(((xs[l, M + 1], 1), (star[y2[l]], -1))))
    rels.append(reduce_word(((v1, 1), (z1, -1))))
    rels.append(reduce_word(((v1, 1), (star[z1], -1))))
    rels.append(reduce_word(((v2, 1), (z2, -1))))
    # final relator v2 (z2*)^-1 dropped for deficiency 1

    # longitude carried through the template: walk D from z2, cross the
    # infinity-tangle, walk the reflected copy backwards, return through v2
    lam = []

    def under_letter(ci, starred):
        over_in = base.crossings[ci][base.over_in_pos(ci)]
        g = arc_of[(over_in, "head")]
        s = base.sign(ci)
        if starred:
            return (star[g], -s)
        return (g, s)

    mark_index = {e: l for l, e in enumerate(marks[1:], start=1)}
    for ev in events:
        if ev[0] == "under":
            lam.append(under_letter(ev[1], False))
        else:
            e = ev[1]
            if e == marks[0]:
                break
            l = mark_index[e]
            m = ms[l - 1]
            if m > 0:
                lam.extend((xs[l, i], -1) for i in range(1, m + 1))
            elif m < 0:
                lam.extend((xs[l, i + 1], 1) for i in range(1, -m + 1))
    for ev in reversed(events[:-1]):
        if ev[0] == "under":
            lam.append(under_letter(ev[1], True))
        else:
            l = mark_index[ev[1]]
            m = ms[l - 1]
            if m > 0:
                lam.extend((x[l, i + 1], -1) for i in range(m, 0, -1))
            elif m < 0:
                lam.extend((x[l, i], 1) for i in range(-m, 0, -1))
    # same reversal as in wirtinger(): the per-underpass conjugators compose
    # against the walk order
    lam.reverse()
    e_sum = sum(s for _, s in lam)
    lam.extend([(z2, -1 if e_sum > 0 else 1)] * abs(e_sum))
    longitude = reduce_word(lam)

    union_pres = GroupPresentation(tuple(names), tuple(rels), meridian=z2,
                                   longitude=longitude)

    images = []
    for i in range(A):
        images.append(((i, 1),))
    for i in range(A):
        images.append(((i, 1),))
    images.append(((z1, 1),))  # v1
    images.append(((z2, 1),))  # v2
    for l in range(1, k + 1):
        M = abs(ms[l - 1])
        for _ in range(M + 1):
            images.append(((y1[l], 1),))
        for _ in range(M + 1):
            images.append(((y1[l], 1),))
    phi = GeneratorMap(union_pres, partial_pres, tuple(images))
    return union_pres, partial_pres, phi


def lamm_pullback(phi, rho):
    """Pull a representation of phi.target back along phi; verifies that all
    source relators map to the identity matrix."""
    from .reps import Representation, evaluate_word, identity_matrix

    mats = tuple(evaluate_word(phi(((i, 1),)), rho.matrices, rho.p)
                 for i in range(phi.source.num_generators))
    ident = identity_matrix(rho.d)
    for r in phi.source.relators:
        if evaluate_word(r, mats, rho.p) != ident:
            raise ValueError("pullback fails a relator; invalid GeneratorMap")
    return Representation(presentation=phi.source, p=rho.p, d=rho.d,
                          matrices=mats)


# -- 2-bridge presentation ---------------------------------------------------

def two_bridge_presentation(p, q):
    """One-relator presentation of the 2-bridge knot group b(p, q):
    <a, b | w a w^-1 b^-1> with w = a^e1 b^e2 a^e3 ... b^e_{p-1},
    e_i = (-1)^floor(i*q/p)."""
    from math import gcd
    if p % 2 == 0 or p < 3 or not (0 < q < p) or gcd(p, q) != 1:
        raise ValueError("b(%d, %d) is not a 2-bridge knot" % (p, q))
    eps = [(-1) ** ((i * q) // p) for i in range(1, p)]
    w = []
    for i, e in enumerate(eps, start=1):
        g = 0 if i % 2 == 1 else 1  # a for odd positions, b for even
        w.append((g, e))
    w = reduce_word(w)
    relator = concat(w, ((0, 1),), inverse_word(w), ((1, -1),))
    return GroupPresentation(("a", "b"), (relator,), meridian=0)
