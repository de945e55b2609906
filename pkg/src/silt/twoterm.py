"""Two-term complexes of projectives and the rigidity machinery on them.

A complex ``P_{-1} -> P_0`` is stored as the lists of indecomposable
projective summand vertices in each degree together with a block matrix of
algebra elements: the ``(r, c)`` block lies in ``e_{rows[r]} . A . e_{cols[c]}``
and acts on ``P_{cols[c]} -> P_{rows[r]}`` by left multiplication.  Keeping
the differential at the algebra level is what makes block cancellation and
the mapping-cone constructions exact and cheap; the representation-level
view is derived on demand.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exactmat as em
from . import repmod as rm
from .algebra import AlgebraElement, FiniteDimAlgebra


@dataclass(frozen=True)
class TwoTermComplex:
    algebra: FiniteDimAlgebra
    rows: tuple[int, ...]   # degree-0 summand vertices
    cols: tuple[int, ...]   # degree -1 summand vertices
    d: tuple[tuple[AlgebraElement, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "cols", tuple(self.cols))
        object.__setattr__(self, "d", tuple(tuple(row) for row in self.d))
        if len(self.d) != len(self.rows):
            raise ValueError("differential has wrong number of block rows")
        for r, row in enumerate(self.d):
            if len(row) != len(self.cols):
                raise ValueError("differential has wrong number of block columns")
            for c, entry in enumerate(row):
                if (entry.src, entry.tgt) != (self.rows[r], self.cols[c]):
                    raise ValueError(f"block ({r},{c}) has endpoints "
                                     f"{(entry.src, entry.tgt)}, expected "
                                     f"{(self.rows[r], self.cols[c])}")

    @property
    def mult_0(self) -> tuple[int, ...]:
        return _mult_vector(self.algebra, self.rows)

    @property
    def mult_neg1(self) -> tuple[int, ...]:
        return _mult_vector(self.algebra, self.cols)

    def __repr__(self):
        return f"TwoTermComplex(rows={self.rows}, cols={self.cols})"


def _mult_vector(alg: FiniteDimAlgebra, verts: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * alg.quiver.n_vertices
    for v in verts:
        out[v] += 1
    return tuple(out)


def g_vector(t: TwoTermComplex) -> tuple[int, ...]:
    """Class of the complex in the projective Grothendieck group."""
    return tuple(a - b for a, b in zip(t.mult_0, t.mult_neg1))


# ---- constructors -------------------------------------------------------------


def stalk(alg: FiniteDimAlgebra, v: int) -> TwoTermComplex:
    """``0 -> P_v``."""
    return TwoTermComplex(alg, (v,), (), ((),))


def shifted_stalk(alg: FiniteDimAlgebra, v: int) -> TwoTermComplex:
    """``P_v -> 0``."""
    return TwoTermComplex(alg, (), (v,), ())


def zero_complex(alg: FiniteDimAlgebra) -> TwoTermComplex:
    return TwoTermComplex(alg, (), (), ())


def lambda_stalk(alg: FiniteDimAlgebra) -> TwoTermComplex:
    verts = tuple(range(alg.quiver.n_vertices))
    return TwoTermComplex(alg, verts, (), tuple(() for _ in verts))


def lambda_shift(alg: FiniteDimAlgebra) -> TwoTermComplex:
    verts = tuple(range(alg.quiver.n_vertices))
    return TwoTermComplex(alg, (), verts, ())


def direct_sum(*parts: TwoTermComplex) -> TwoTermComplex:
    assert parts, "need at least one summand"
    alg = parts[0].algebra
    rows = tuple(v for t in parts for v in t.rows)
    cols = tuple(v for t in parts for v in t.cols)
    blocks = []
    for ti, t in enumerate(parts):
        for r in range(len(t.rows)):
            row = []
            for tj, u in enumerate(parts):
                for c in range(len(u.cols)):
                    if ti == tj:
                        row.append(t.d[r][c])
                    else:
                        row.append(alg.zero_elem(t.rows[r], u.cols[c]))
            blocks.append(tuple(row))
    return TwoTermComplex(alg, rows, cols, tuple(blocks))


# ---- representation view ------------------------------------------------------


def left_mult_matrix(alg: FiniteDimAlgebra, u: AlgebraElement, w: int) -> np.ndarray:
    """Matrix of ``q -> u * q`` from ``(P_{u.tgt})_w`` to ``(P_{u.src})_w``."""
    src_basis = alg.pair_basis(u.tgt, w)
    tgt_basis = alg.pair_basis(u.src, w)
    out = em.zeros(len(tgt_basis), len(src_basis))
    for col, q in enumerate(src_basis):
        acc: dict[int, int] = {}
        for g, cu in u.coeffs.items():
            for g2, c in alg.mult_basis(g, q).items():
                acc[g2] = acc.get(g2, 0) + cu * c
        for g2, c in acc.items():
            out[alg.pair_pos(g2), col] = c % alg.p
    return out


def complex_repmap(t: TwoTermComplex) -> tuple[rm.Rep, rm.Rep, rm.RepMap]:
    """Evaluate the differential as a map of representations."""
    alg = t.algebra
    nv = alg.quiver.n_vertices
    neg1, col_offs = rm.rep_direct_sum(alg, [alg.projective(v) for v in t.cols])
    deg0, row_offs = rm.rep_direct_sum(alg, [alg.projective(v) for v in t.rows])
    comps = [em.zeros(deg0.dims[w], neg1.dims[w]) for w in range(nv)]
    for r in range(len(t.rows)):
        for c in range(len(t.cols)):
            entry = t.d[r][c]
            if entry.is_zero():
                continue
            for w in range(nv):
                block = left_mult_matrix(alg, entry, w)
                if block.size:
                    ro, co = row_offs[r][w], col_offs[c][w]
                    comps[w][ro:ro + block.shape[0], co:co + block.shape[1]] = block
    return neg1, deg0, rm.RepMap(neg1, deg0, comps)


# ---- rigidity ------------------------------------------------------------------


def _hom_entries(alg: FiniteDimAlgebra, tverts, sverts):
    """Basis of block morphisms ``(+)P_s -> (+)P_t`` as (row, col, gid) triples."""
    out = []
    for i, tv in enumerate(tverts):
        for j, sv in enumerate(sverts):
            for gid in alg.pair_basis(tv, sv):
                out.append((i, j, gid))
    return out


def hom_shift_vanishes(p: TwoTermComplex, q: TwoTermComplex) -> bool:
    """Whether every degree-1 morphism ``p -> q[1]`` is null-homotopic.

    The obstruction space is the cokernel of
    ``(f, g) -> g . d_p - d_q . f`` landing in ``Hom(P_-1, Q_0)``; the test
    is one surjectivity rank computation.
    """
    if p.algebra is not q.algebra:
        raise ValueError("complexes live over different algebras")
    alg = p.algebra
    cod = _hom_entries(alg, q.rows, p.cols)
    if not cod:
        return True
    cod_pos = {key: n for n, key in enumerate(cod)}
    dom_f = _hom_entries(alg, q.cols, p.cols)   # f : P_-1 -> Q_-1
    dom_g = _hom_entries(alg, q.rows, p.rows)   # g : P_0  -> Q_0
    mat = em.zeros(len(cod), len(dom_f) + len(dom_g))
    for n, (i, j, gid) in enumerate(dom_f):
        # beta . f lands in block (k, j) as d_q[k][i] * elem
        elem = alg.basis_elem(gid)
        for k in range(len(q.rows)):
            prod = q.d[k][i] * elem
            for g2, c in prod.coeffs.items():
                mat[cod_pos[(k, j, g2)], n] = (-c) % alg.p
    off = len(dom_f)
    for n, (i, j, gid) in enumerate(dom_g):
        # g . alpha lands in block (i, m) as elem * d_p[j][m]
        elem = alg.basis_elem(gid)
        for m in range(len(p.cols)):
            prod = elem * p.d[j][m]
            for g2, c in prod.coeffs.items():
                mat[cod_pos[(i, m, g2)], off + n] = c % alg.p
    return em.rank(mat, alg.p) == len(cod)


def is_presilting(p: TwoTermComplex) -> bool:
    """Self-rigidity; for two-term complexes only the first shift can obstruct."""
    return hom_shift_vanishes(p, p)


def silt_leq(p: TwoTermComplex, q: TwoTermComplex) -> bool:
    """``p >= q`` in the silting order, i.e. the shifted Homs from p to q vanish."""
    return hom_shift_vanishes(p, q)


# ---- minimality ----------------------------------------------------------------


def minimality_reduce(t: TwoTermComplex) -> TwoTermComplex:
    """Cancel invertible blocks until the differential is radical.

    A block ``P_v -> P_v`` whose trivial-path coefficient is nonzero is an
    isomorphism up to radical; one Schur-complement step removes the pair and
    strictly drops the total multiplicity, so the loop terminates.
    """
    alg = t.algebra
    rows = list(t.rows)
    cols = list(t.cols)
    d = [list(row) for row in t.d]
    while True:
        pivot = None
        for r in range(len(rows)):
            for c in range(len(cols)):
                if rows[r] == cols[c] and d[r][c].unit_coefficient():
                    pivot = (r, c)
                    break
            if pivot:
                break
        if pivot is None:
            break
        r, c = pivot
        u_inv = d[r][c].local_inverse()
        new_rows = [rows[i] for i in range(len(rows)) if i != r]
        new_cols = [cols[j] for j in range(len(cols)) if j != c]
        new_d = []
        for i in range(len(rows)):
            if i == r:
                continue
            left = d[i][c] * u_inv
            new_d.append([d[i][j] - left * d[r][j]
                          for j in range(len(cols)) if j != c])
        rows, cols, d = new_rows, new_cols, new_d
    return TwoTermComplex(alg, tuple(rows), tuple(cols), tuple(tuple(r) for r in d))


def rho1(t: TwoTermComplex) -> tuple[int, ...]:
    """Multiplicities of shifted-projective stalk summands, per vertex."""
    red = minimality_reduce(t)
    out = [0] * t.algebra.quiver.n_vertices
    for c, v in enumerate(red.cols):
        if all(red.d[r][c].is_zero() for r in range(len(red.rows))):
            out[v] += 1
    return tuple(out)


def h0(t: TwoTermComplex) -> rm.Rep:
    """Cokernel of the (reduced) differential as a representation."""
    red = minimality_reduce(t)
    _, _, dmap = complex_repmap(red)
    cok, _ = rm.cokernel(dmap)
    return cok


# ---- completions ---------------------------------------------------------------


def _coker_free_indices(mat: np.ndarray, p: int) -> list[int]:
    """Standard coordinates that descend to a basis of the cokernel."""
    _, pivots = em.rref(mat.T % p, p)
    pivot_set = set(pivots)
    return [k for k in range(mat.shape[0]) if k not in pivot_set]


def bongartz_completion(t: TwoTermComplex, registry) -> TwoTermComplex:
    """Maximal completion: add the co-cone of a right approximation of ``L[1]``.

    ``Hom(t, P_v[1])`` is the cokernel of composing with the differential;
    lifted basis vectors assemble the approximation, whose shifted cone is
    glued onto ``t``, reduced, and validated.
    """
    alg = t.algebra
    nv = alg.quiver.n_vertices
    copies = []  # (vertex v, block col j, gid) one per approximation copy
    for v in range(nv):
        entries = _hom_entries(alg, (v,), t.cols)
        if not entries:
            continue
        pos = {key: n for n, key in enumerate(entries)}
        dom = _hom_entries(alg, (v,), t.rows)
        mat = em.zeros(len(entries), len(dom))
        for n, (_, i, gid) in enumerate(dom):
            elem = alg.basis_elem(gid)  # phi_i in Hom(P_rows[i], P_v)
            for j in range(len(t.cols)):
                prod = elem * t.d[i][j]
                for g2, c in prod.coeffs.items():
                    mat[pos[(0, j, g2)], n] = c % alg.p
        for k in _coker_free_indices(mat, alg.p):
            _, j, gid = entries[k]
            copies.append((v, j, gid))

    m = len(copies)
    rows = list(t.rows) + list(t.rows) * m + list(range(nv))
    cols = list(t.cols) + list(t.cols) * m
    nr0, nc0 = len(t.rows), len(t.cols)
    blocks = [[alg.zero_elem(rv, cv) for cv in cols] for rv in rows]
    for r in range(nr0):
        for c in range(nc0):
            blocks[r][c] = t.d[r][c]
    for k in range(m):
        for r in range(nr0):
            for c in range(nc0):
                blocks[nr0 + k * nr0 + r][nc0 + k * nc0 + c] = t.d[r][c]
    for k, (v, j, gid) in enumerate(copies):
        blocks[nr0 + m * nr0 + v][nc0 + k * nc0 + j] = alg.basis_elem(gid)
    result = TwoTermComplex(alg, tuple(rows), tuple(cols),
                            tuple(tuple(r) for r in blocks))
    result = minimality_reduce(result)
    if not is_silting(result, registry):
        raise RuntimeError("Bongartz completion failed silting validation")
    return result


def co_bongartz_completion(t: TwoTermComplex, registry) -> TwoTermComplex:
    """Minimal completion: add the cone of a left approximation of ``L``."""
    alg = t.algebra
    nv = alg.quiver.n_vertices
    copies = []  # (vertex v, block row i, gid)
    for v in range(nv):
        entries = _hom_entries(alg, t.rows, (v,))   # u0 : P_v -> P_0
        if not entries:
            continue
        pos = {key: n for n, key in enumerate(entries)}
        dom = _hom_entries(alg, t.cols, (v,))       # s : P_v -> P_-1
        mat = em.zeros(len(entries), len(dom))
        for n, (j, _, gid) in enumerate(dom):
            elem = alg.basis_elem(gid)
            for i in range(len(t.rows)):
                prod = t.d[i][j] * elem
                for g2, c in prod.coeffs.items():
                    mat[pos[(i, 0, g2)], n] = c % alg.p
        for k in _coker_free_indices(mat, alg.p):
            i, _, gid = entries[k]
            copies.append((v, i, gid))

    # the cone of L -> p^m has all of L in degree -1; vertices that receive
    # no approximation copy survive as shifted stalks
    m = len(copies)
    rows = list(t.rows) + list(t.rows) * m
    cols = list(t.cols) + list(range(nv)) + list(t.cols) * m
    nr0, nc0 = len(t.rows), len(t.cols)
    blocks = [[alg.zero_elem(rv, cv) for cv in cols] for rv in rows]
    for r in range(nr0):
        for c in range(nc0):
            blocks[r][c] = t.d[r][c]
    for k in range(m):
        for r in range(nr0):
            for c in range(nc0):
                blocks[nr0 + k * nr0 + r][nc0 + nv + k * nc0 + c] = t.d[r][c]
    for k, (v, i, gid) in enumerate(copies):
        blocks[nr0 + k * nr0 + i][nc0 + v] = alg.basis_elem(gid)
    result = TwoTermComplex(alg, tuple(rows), tuple(cols),
                            tuple(tuple(r) for r in blocks))
    result = minimality_reduce(result)
    if not is_silting(result, registry):
        raise RuntimeError("co-Bongartz completion failed silting validation")
    return result


# ---- the silting test ----------------------------------------------------------


def summand_descriptors(t: TwoTermComplex, registry) -> set:
    """Distinct indecomposable summands as ``("shift", v)`` / ``("mod", id)`` tags.

    Valid under the provenance contract: the complex is a summand of some
    silting complex, so its zeroth cohomology splits into modules the
    registry can recognise (new pieces are registered on sight).
    """
    red = minimality_reduce(t)
    descs = set()
    for c, v in enumerate(red.cols):
        if all(red.d[r][c].is_zero() for r in range(len(red.rows))):
            descs.add(("shift", v))
    _, _, dmap = complex_repmap(red)
    cok, _ = rm.cokernel(dmap)
    for mid in registry.split(cok, register_remainder=True):
        descs.add(("mod", mid))
    return descs


def is_silting(t: TwoTermComplex, registry) -> bool:
    """Presilting + summand count + unimodular g-vector matrix.

    The count criterion replaces a thick-subcategory generation test and is
    sound exactly when ``t`` arose as a summand of a silting complex, which
    holds for everything the explorer and the completions produce.
    """
    if not is_presilting(t):
        return False
    nv = t.algebra.quiver.n_vertices
    descs = summand_descriptors(t, registry)
    if len(descs) != nv:
        return False
    gmat = []
    for kind, x in sorted(descs):
        if kind == "shift":
            row = [0] * nv
            row[x] = -1
        else:
            row = list(registry.gvector(x))
        gmat.append(row)
    return abs(em.int_det(gmat)) == 1
