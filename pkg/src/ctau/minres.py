"""Minimal free resolutions over A(1) and the Adams charts read off from them.

Over F2[tau] the algebra A(1) is free on eight words in Sq1, Sq2.  A free
A(1)-module element in internal bidegree (t, w) is a sum of basis triples
``(k, u, g)`` standing for tau^k * word_u * g.  Minimality is taken with
respect to the ideal generated by tau and the positive-degree words, so
generator counts give Ext over A(1)/tau, and the tau-power coefficients of
the unit word give the Hom complex whose cohomology is Ext over A(1) with
its tau-module structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chart import ChartDocument, ChartEdge, ExtChartEntry, Tag
from .linalg.f2 import Echelon, bits
from .linalg.tau import GradedMatrix, graded_homology, homology_coordinates
from .steenrod import A1Algebra

UNIT_WORD = 0


class ResolutionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Generator:
    s: int
    index: int
    t: int
    w: int
    image: frozenset  # d(g) as a set of (tau power, word index, generator index) in F_{s-1}


@dataclass
class MinimalResolution:
    algebra: A1Algebra
    stem_max: int
    filtration_max: int
    t_max: int
    gens: list[list[Generator]] = field(default_factory=list)

    @property
    def mod_tau(self) -> bool:
        return self.algebra.mod_tau

    @property
    def s_max(self) -> int:
        return len(self.gens) - 1

    def generators(self, s: int, t: int | None = None) -> list[Generator]:
        return [g for g in self.gens[s] if t is None or g.t == t]

    def counts(self) -> dict[tuple[int, int, int], int]:
        """Number of generators at (s, t, w)."""
        out: dict = {}
        for s, gs in enumerate(self.gens):
            for g in gs:
                out[(s, g.t, g.w)] = out.get((s, g.t, g.w), 0) + 1
        return out

    def rank(self, s: int, t: int) -> int:
        return sum(1 for g in self.gens[s] if g.t == t)

    # -- module arithmetic ---------------------------------------------------
    def basis(self, s: int, t: int, w: int, upto: int | None = None) -> list[tuple[int, int, int]]:
        alg = self.algebra
        gens = self.gens[s] if upto is None else self.gens[s][:upto]
        out = []
        for g in gens:
            if g.t > t:
                continue
            for u in range(len(alg)):
                ut, uw = alg.degree(u)
                if ut != t - g.t:
                    continue
                k = w - g.w - uw
                if k < 0 or (self.mod_tau and k):
                    continue
                out.append((k, u, g.index))
        return out

    def act(self, k: int, u: int, elem) -> set:
        """tau^k * word_u * elem for an element given as an iterable of triples."""
        acc: set = set()
        for k1, v, h in elem:
            for k2, z in self.algebra.mul(u, v):
                acc ^= {(k + k1 + k2, z, h)}
        return acc

    def d(self, s: int, triple) -> set:
        k, u, g = triple
        if s == 0:
            return {(k, 0, 0)} if u == UNIT_WORD else set()
        return self.act(k, u, self.gens[s][g].image)

    def weight_range(self, s: int, t: int) -> range:
        ws = [
            g.w + self.algebra.degree(u)[1]
            for g in self.gens[s]
            if g.t <= t
            for u in range(len(self.algebra))
            if self.algebra.degree(u)[0] == t - g.t
        ]
        if not ws:
            return range(0)
        return range(min(ws), max(ws) + 1)

    # -- Hom complex ------------------------------------------------------------
    def hom_differential(self, s: int, t: int) -> GradedMatrix:
        """delta: Hom(F_s, M) -> Hom(F_{s+1}, M) at internal degree t."""
        src = self.generators(s, t)
        tgt = self.generators(s + 1, t)
        col_of = {g.index: j for j, g in enumerate(src)}
        cols = [0] * len(src)
        for i, g in enumerate(tgt):
            for k, u, h in g.image:
                if u == UNIT_WORD and h in col_of:
                    cols[col_of[h]] ^= 1 << i
        return GradedMatrix(tuple(g.w for g in tgt), tuple(g.w for g in src), tuple(cols))

    def ext(self, s: int, t: int):
        if s >= self.s_max:
            raise ValueError(f"Ext^{s} needs stage {s + 1}; resolved through {self.s_max}")
        weights = tuple(g.w for g in self.generators(s, t))
        d_in = self.hom_differential(s - 1, t) if s > 0 else None
        return graded_homology(d_in, self.hom_differential(s, t), weights)

    # -- checks -------------------------------------------------------------------
    def check_minimality(self) -> None:
        for gs in self.gens[1:]:
            for g in gs:
                for k, u, h in g.image:
                    if k == 0 and u == UNIT_WORD:
                        raise ResolutionError(f"unit entry in d(g) for generator {g.index} at stage {g.s}")

    def check_exactness(self) -> None:
        """ker d_s = im d_{s+1} at every (t, w) with t <= t_max, for s < s_max."""
        for s in range(0, self.s_max):
            for t in range(0, self.t_max + 1):
                for w in self.weight_range(s, t):
                    B = self.basis(s, t, w)
                    ker = len(B) - _rank_images(self, s, B, t, w)
                    im = _rank_images(self, s + 1, self.basis(s + 1, t, w), t, w)
                    if ker != im:
                        raise ResolutionError(f"not exact at stage {s}, (t, w) = ({t}, {w}): ker {ker}, im {im}")

    def euler_characteristic_check(self) -> None:
        """sum_s (-1)^s (generator series of F_s) = 1 / (Poincare series of A(1)/tau) for t <= s_max."""
        expected = _inverse_series(self.algebra, self.s_max)
        got: dict = {}
        for s, gs in enumerate(self.gens):
            for g in gs:
                if g.t <= self.s_max:
                    got[(g.t, g.w)] = got.get((g.t, g.w), 0) + (-1) ** s
        got = {k: v for k, v in got.items() if v}
        if got != expected:
            raise ResolutionError(f"Euler characteristic mismatch: {got} != {expected}")


def _rank_images(res: MinimalResolution, s: int, B, t: int, w: int) -> int:
    ech = Echelon()
    index: dict = {}
    for b in B:
        v = 0
        for x in res.d(s, b):
            if x not in index:
                index[x] = len(index)
            v ^= 1 << index[x]
        ech.add(v)
    return len(ech)


def _inverse_series(alg: A1Algebra, t_max: int) -> dict:
    """Coefficients of 1 / P(x, y) through x^t_max, P the Poincare series of A(1)/tau."""
    P: dict = {}
    for u in range(len(alg)):
        P[alg.degree(u)] = P.get(alg.degree(u), 0) + 1
    inv = {(0, 0): 1}
    for t in range(1, t_max + 1):
        for w in range(0, t + 1):
            acc = 0
            for (pt, pw), c in P.items():
                if (pt, pw) != (0, 0):
                    acc -= c * inv.get((t - pt, w - pw), 0)
            if acc:
                inv[(t, w)] = acc
    return inv


def _check_algebra(alg: A1Algebra) -> None:
    n = len(alg)

    def mul_elem(x, j):
        acc: set = set()
        for k, i in x:
            for k2, z in alg.mul(i, j):
                acc ^= {(k + k2, z)}
        return acc

    for a in range(n):
        for b in range(n):
            for c in range(n):
                left = mul_elem(mul_elem({(0, a)}, b), c)
                right: set = set()
                for k, z in alg.mul(b, c):
                    for k2, y in alg.mul(a, z):
                        right ^= {(k + k2, y)}
                if left != right:
                    raise ResolutionError(f"algebra is not associative on {alg.words[a]!r}, {alg.words[b]!r}, {alg.words[c]!r}")
        if alg.degree(a)[0] == 0 and a != UNIT_WORD:
            raise ResolutionError("algebra is not connected")


def resolve(
    algebra: A1Algebra | None = None,
    coefficients: str = "trivial",
    stem_max: int = 12,
    filtration_max: int = 8,
    mod_tau: bool = False,
) -> MinimalResolution:
    """Minimal resolution of the ground ring through stem ``stem_max`` and filtration ``filtration_max``.

    Stage ``filtration_max + 1`` is also built so that Ext in the top
    filtration is known with its tau-module structure.
    """
    if coefficients != "trivial":
        raise ValueError("only trivial coefficients are supported")
    algebra = algebra or A1Algebra(mod_tau)
    _check_algebra(algebra)
    S = filtration_max + 1
    T = stem_max + S
    res = MinimalResolution(algebra, stem_max, filtration_max, T, [[Generator(0, 0, 0, 0, frozenset())]])
    for s in range(0, S):
        res.gens.append([])
        new = res.gens[s + 1]
        for t in range(0, T + 1):
            for w in res.weight_range(s, t):
                B = res.basis(s, t, w)
                if not B:
                    continue
                kernel = _kernel(res, s, B)
                if not kernel:
                    continue
                img = Echelon()
                for b in res.basis(s + 1, t, w):
                    img.add(_vector(res.d(s + 1, b), B))
                for kv in kernel:
                    if img.add(kv):
                        image = frozenset(B[i] for i in bits(kv))
                        new.append(Generator(s + 1, len(new), t, w, image))
    res.check_minimality()
    return res


def _vector(elem, B) -> int:
    index = {b: i for i, b in enumerate(B)}
    v = 0
    for x in elem:
        v ^= 1 << index[x]
    return v


def _kernel(res: MinimalResolution, s: int, B) -> list[int]:
    """Kernel of d_s on the span of ``B``, lowest basis index first."""
    index: dict = {}
    ech = Echelon()
    out = []
    for j, b in enumerate(B):
        v = 0
        for x in res.d(s, b):
            if x not in index:
                index[x] = len(index)
            v ^= 1 << index[x]
        residual, combo = ech.reduce(v)
        if residual:
            ech.add(residual, combo ^ (1 << j))
        else:
            out.append(combo ^ (1 << j))
    return out


# -- charts ----------------------------------------------------------------------

_FACTOR_ORDER = ("h0", "h1", "tilde(h1^3)", "a", "b")


def _parse_name(name: str) -> dict:
    out: dict = {}
    if name in ("", "1"):
        return out
    for part in name.split(" "):
        base, _, exp = part.rpartition("^")
        if base and exp.isdigit():
            out[base] = out.get(base, 0) + int(exp)
        else:
            out[part] = out.get(part, 0) + 1
    return out


def _format_name(d: dict) -> str:
    if not d:
        return "1"
    order = {f: i for i, f in enumerate(_FACTOR_ORDER)}
    parts = []
    for f in sorted(d, key=lambda x: (order.get(x, len(order)), x)):
        parts.append(f if d[f] == 1 else f"{f}^{d[f]}")
    return " ".join(parts)


def times(name: str, factor: str) -> str:
    d = _parse_name(name)
    for f, e in _parse_name(factor).items():
        d[f] = d.get(f, 0) + e
    return _format_name(d)


def base_name(stem: int, filtration: int, weight: int, ctau: bool = False) -> str | None:
    """Chart names fixed by position: 1, b^k, a b^k and, for the Ctau chart, tilde(h1^3) b^k."""
    if (stem, filtration, weight) == (0, 0, 0):
        return "1"
    if stem % 8 == 0 and stem > 0 and filtration == stem // 2 and weight == stem // 2:
        return _format_name({"b": stem // 8})
    if stem % 8 == 4:
        k = stem // 8
        if filtration == 4 * k + 3 and weight == 4 * k + 2:
            return _format_name({"a": 1, "b": k} if k else {"a": 1})
        if ctau and filtration == 4 * k + 2 and weight == 4 * k + 2:
            return _format_name({"tilde(h1^3)": 1, "b": k} if k else {"tilde(h1^3)": 1})
    return None


def assign_names(entries: list[ExtChartEntry], edges: list[ChartEdge], ctau: bool) -> list[ExtChartEntry]:
    by_key = {e.key: e for e in entries}
    count: dict = {}
    for e in entries:
        count[e.coords()] = count.get(e.coords(), 0) + 1
    incoming: dict = {}
    for ed in edges:
        if ed.tau_power == 0 and ed.label in ("h0", "h1"):
            incoming.setdefault(ed.target, []).append(ed)
    names: dict = {}
    for e in sorted(entries, key=lambda e: (e.filtration, e.stem, e.weight, e.key)):
        name = base_name(*e.coords(), ctau=ctau) if count[e.coords()] == 1 else None
        if name is None:
            for ed in sorted(incoming.get(e.key, []), key=lambda x: (x.label, x.source)):
                if ed.source in names:
                    name = times(names[ed.source], ed.label)
                    break
        if name is None:
            name = base_name(*e.coords(), ctau=ctau) or f"x[{e.stem},{e.filtration},{e.weight}]"
        names[e.key] = name
    taken: dict = {}
    out = []
    for e in entries:
        n = names[e.key]
        taken[n] = taken.get(n, 0) + 1
        out.append(ExtChartEntry(e.stem, e.filtration, e.weight, e.tag, n if taken[n] == 1 else f"{n}#{taken[n]}", e.key, e.order, e.source))
    return out


def tilde_name(name: str) -> str:
    """Name of the lift of a tau-torsion class: tilde(h1^3) absorbs three factors of h1."""
    if not name:
        return ""
    d = _parse_name(name)
    if d.get("h1", 0) >= 3:
        d["h1"] -= 3
        if not d["h1"]:
            del d["h1"]
        d["tilde(h1^3)"] = d.get("tilde(h1^3)", 0) + 1
        return _format_name(d)
    return f"tilde({name})"


def _key(stem, filt, w, n):
    return f"{stem},{filt},{w}#{n}"


def ext_chart(res: MinimalResolution, title: str | None = None) -> ChartDocument:
    """One entry per F2[tau]-module generator of Ext (per resolution generator mod tau)."""
    F = res.filtration_max
    entries: list[ExtChartEntry] = []
    edges: list[ChartEdge] = []
    homs: dict = {}
    keys: dict = {}  # (s, t, kind, idx) -> key
    for s in range(0, F + 1):
        for t in range(s, s + res.stem_max + 1):
            h = res.ext(s, t)
            homs[(s, t)] = h
            n = 0
            for idx, (v, w) in enumerate(h.free_generators):
                tag = Tag.TAU_TORSION if res.mod_tau else Tag.TAU_FREE
                k = _key(t - s, s, w, n)
                n += 1
                keys[(s, t, "free", idx)] = k
                entries.append(ExtChartEntry(t - s, s, w, tag, "", k, 1 if res.mod_tau else 0))
            for idx, (v, w, e) in enumerate(h.torsion_generators):
                k = _key(t - s, s, w, n)
                n += 1
                keys[(s, t, "torsion", idx)] = k
                entries.append(ExtChartEntry(t - s, s, w, Tag.TAU_TORSION, "", k, e))
    # h0 and h1 multiplications through the Sq1 / Sq2 coefficients of the differential
    for s in range(0, F):
        for t in range(s, s + res.stem_max + 1):
            h = homs[(s, t)]
            src = res.generators(s, t)
            classes = [("free", i, v, w) for i, (v, w) in enumerate(h.free_generators)]
            classes += [("torsion", i, v, w) for i, (v, w, _) in enumerate(h.torsion_generators)]
            for label, word, dt, dw in (("h0", "1", 1, 0), ("h1", "2", 2, 1)):
                t2 = t + dt
                if t2 - (s + 1) > res.stem_max:
                    continue
                tgt = res.generators(s + 1, t2)
                u = res.algebra.words.index(word)
                for kind, idx, v, w in classes:
                    coeff = {src[j].index: src[j].w - w for j in bits(v)}
                    out = 0
                    for i, g in enumerate(tgt):
                        par = 0
                        for k, uu, hh in g.image:
                            if uu == u and hh in coeff:
                                par ^= 1
                        if par:
                            out |= 1 << i
                    if not out:
                        continue
                    target_h = homs[(s + 1, t2)]
                    weights = tuple(g.w for g in tgt)
                    d_in = res.hom_differential(s, t2)
                    coords = homology_coordinates(target_h, d_in, weights, out, w + dw)
                    if coords is None:
                        raise ResolutionError(f"{label} product is not a cocycle at stage {s + 1}")
                    for tkind, tidx, power in coords:
                        edges.append(
                            ChartEdge(keys[(s, t, kind, idx)], keys[(s + 1, t2, tkind, tidx)], label, power)
                        )
    entries = assign_names(entries, edges, ctau=res.mod_tau)
    ring = "F2" if res.mod_tau else "F2[tau]"
    doc = ChartDocument(
        title or ("Ext over A(1)/tau" if res.mod_tau else "Ext over A(1)"),
        "stem-filtration-weight",
        entries,
        edges,
        {
            "ground_ring": ring,
            "stem_max": res.stem_max,
            "filtration_max": F,
            "engine": "minres",
        },
    )
    return doc.sorted()


# -- the tau long exact sequence --------------------------------------------------


def tau_les_assemble(chart: ChartDocument) -> ChartDocument:
    """Additive chart of X smash Ctau from the tau-module chart of X.

    Cokernel copies sit in place; each tau-torsion class tau^(e-1) x of
    order e at (stem, f, w) contributes a class at (stem + 1, f - 1, w - e).
    Pairs in one stem and weight, torsion-sourced at filtration f under a
    cokernel class at f + 1, are flagged as possible hidden 2-extensions.
    """
    if any(e.tag is None for e in chart.entries):
        raise ValueError("chart entries need tau-module tags")
    F = chart.metadata.get("filtration_max")
    # shifted classes past the input's stem bound would sit beside an incomplete cokernel
    stem_max = chart.metadata.get("stem_max")
    entries: list[ExtChartEntry] = []
    edges: list[ChartEdge] = []
    cok: dict = {}
    tor: dict = {}
    n = 0
    for e in chart.sorted().entries:
        k = f"c:{e.key}"
        cok[e.key] = k
        entries.append(ExtChartEntry(e.stem, e.filtration, e.weight, Tag.TAU_TORSION, e.name, k, 1, "cokernel"))
        if e.tag == Tag.TAU_TORSION and e.filtration >= 1 and (stem_max is None or e.stem + 1 <= stem_max):
            k2 = f"t:{e.key}"
            tor[e.key] = k2
            name = tilde_name(e.name)
            entries.append(
                ExtChartEntry(e.stem + 1, e.filtration - 1, e.weight - e.order, Tag.TAU_TORSION, name, k2, 1, "torsion")
            )
        n += 1
    for ed in chart.edges:
        if ed.tau_power or ed.label not in ("h0", "h1"):
            continue
        edges.append(ChartEdge(cok[ed.source], cok[ed.target], ed.label))
        if ed.source in tor and ed.target in tor:
            edges.append(ChartEdge(tor[ed.source], tor[ed.target], ed.label))
    flags = []
    torsion_side = [e for e in entries if e.source == "torsion"]
    cokernel_side = [e for e in entries if e.source == "cokernel"]
    for x in torsion_side:
        for y in cokernel_side:
            if y.stem == x.stem and y.weight == x.weight and y.filtration == x.filtration + 1:
                flags.append([x.key, y.key])
    md = dict(chart.metadata)
    md.update({"flags": sorted(flags), "assembled_from": chart.title})
    if F is not None:
        md["filtration_max"] = F
    doc = ChartDocument(chart.title + " smash Ctau", chart.convention, entries, edges, md)
    return doc.sorted()


def les_rank_check(chart: ChartDocument, assembled: ChartDocument) -> bool:
    """Rank at each (stem, weight) equals cokernel rank plus shifted torsion rank."""
    want: dict = {}
    for e in chart.entries:
        want[(e.stem, e.weight)] = want.get((e.stem, e.weight), 0) + 1
        if e.tag == Tag.TAU_TORSION and e.filtration >= 1 and e.stem + 1 <= chart.metadata.get("stem_max", e.stem + 1):
            key = (e.stem + 1, e.weight - e.order)
            want[key] = want.get(key, 0) + 1
    got: dict = {}
    for e in assembled.entries:
        got[(e.stem, e.weight)] = got.get((e.stem, e.weight), 0) + 1
    return want == got


class CertificateError(ValueError):
    pass


def resolve_hidden_extension(doc: ChartDocument, pair, certificate, name: str = "") -> ChartDocument:
    """Record the hidden 2-extension on a flagged pair, given a Massey bracket certificate.

    The certificate must evaluate to a nonzero class without indeterminacy in
    the tridegree of the upper (cokernel) member of the pair.
    """
    pair = list(pair)
    flags = [list(p) for p in doc.metadata.get("flags", [])]
    if pair not in flags:
        raise CertificateError(f"pair {pair} is not flagged")
    if certificate is None:
        raise CertificateError("no certificate; the pair stays flagged")
    rep = certificate.representative
    upper = doc.entry(pair[1])
    if (rep.t - rep.s, rep.s, rep.w) != upper.coords():
        raise CertificateError("bracket lands in the wrong tridegree")
    if certificate.has_indeterminacy or certificate.is_zero():
        raise CertificateError("bracket is zero or has indeterminacy")
    ref = name or rep.name or "massey"
    edge = ChartEdge(pair[0], pair[1], "hidden-h0", 0, ref)
    md = dict(doc.metadata)
    md["flags"] = [p for p in flags if p != pair]
    md.setdefault("resolved", []).append({"pair": pair, "certificate": ref})
    return ChartDocument(doc.title, doc.convention, list(doc.entries), list(doc.edges) + [edge], md).sorted()


def propagate_hidden_extensions(doc: ChartDocument, factor: str = "b") -> ChartDocument:
    """Carry resolved hidden extensions along multiplication by a tau-free cokernel class.

    A flagged pair (x b^k, y b^k) is resolved when (x, y) is resolved; the
    certificate records the multiplicativity step.
    """
    by_name = {e.name: e for e in doc.entries if e.name}
    resolved = [r["pair"] for r in doc.metadata.get("resolved", [])]
    out = doc
    for x, y in resolved:
        nx, ny = doc.entry(x).name, doc.entry(y).name
        for k in range(1, 32):
            mult = _format_name({factor: k})
            px, py = by_name.get(times(nx, mult)), by_name.get(times(ny, mult))
            if px is None or py is None:
                break
            pair = [px.key, py.key]
            if pair not in [list(p) for p in out.metadata.get("flags", [])]:
                continue
            md = dict(out.metadata)
            md["flags"] = [p for p in md["flags"] if list(p) != pair]
            ref = f"{mult} * ({nx} -> {ny})"
            md.setdefault("resolved", []).append({"pair": pair, "certificate": ref})
            out = ChartDocument(out.title, out.convention, list(out.entries), list(out.edges) + [ChartEdge(pair[0], pair[1], "hidden-h0", 0, ref)], md)
    return out.sorted()


def h0_towers(doc: ChartDocument) -> list[list[ExtChartEntry]]:
    """Connected chains under h0 and hidden-h0 edges, bottom first."""
    up: dict = {}
    down: set = set()
    for e in doc.edges:
        if e.label in ("h0", "hidden-h0") and e.tau_power == 0:
            up[e.source] = e.target
            down.add(e.target)
    towers = []
    for e in doc.entries:
        if e.key in down:
            continue
        chain = [e]
        while chain[-1].key in up:
            chain.append(doc.entry(up[chain[-1].key]))
        towers.append(chain)
    return towers
