"""Representations of a built algebra and their module-level linear algebra.

Everything here reduces to exact eliminations over the prime field: Hom
spaces are kernels of commuting-square systems, tops and cokernels are
quotient projections, projective covers lift bases of the top.  All values
are immutable after construction and all operations are pure, so any number
of workers may share them.

The zero module (all dimensions zero) is a first-class citizen; every
operation accepts it.
"""

from __future__ import annotations

import numpy as np

from . import exactmat as em
from .algebra import AlgebraElement, FiniteDimAlgebra


class Rep:
    """A module as a quiver representation.

    ``dims[v]`` is the dimension at vertex ``v`` and ``arrow_maps[k]`` the
    matrix of arrow ``k: i -> j`` with shape ``dims[j] x dims[i]``.  On
    construction every relation of the algebra is checked to act as zero.
    """

    __slots__ = ("algebra", "dims", "arrow_maps", "total_dim")

    def __init__(self, algebra: FiniteDimAlgebra, dims, arrow_maps, check: bool = True):
        q = algebra.quiver
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != q.n_vertices or any(d < 0 for d in self.dims):
            raise ValueError("bad dimension vector")
        maps = []
        for k in range(q.n_arrows):
            m = np.asarray(arrow_maps[k], dtype=np.int64) % algebra.p
            want = (self.dims[q.arrow_target(k)], self.dims[q.arrow_source(k)])
            if m.shape != want:
                raise ValueError(f"arrow {k} matrix has shape {m.shape}, expected {want}")
            maps.append(m)
        self.arrow_maps = tuple(maps)
        self.total_dim = sum(self.dims)
        if check:
            self._check_relations()

    def _check_relations(self):
        for idx, rel in enumerate(self.algebra.presentation.relations):
            acc = None
            for coeff, word in rel:
                if coeff % self.algebra.p == 0:
                    continue
                src = self.algebra.quiver.arrow_source(word[0])
                m = (path_matrix(self, src, word) * coeff) % self.algebra.p
                acc = m if acc is None else (acc + m) % self.algebra.p
            if acc is not None and np.any(acc):
                raise ValueError(f"relation {idx} does not vanish on the representation")

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __repr__(self):
        return f"Rep(dims={self.dims})"


def zero_rep(algebra: FiniteDimAlgebra) -> Rep:
    q = algebra.quiver
    dims = (0,) * q.n_vertices
    maps = tuple(em.zeros(0, 0) for _ in range(q.n_arrows))
    return Rep(algebra, dims, maps, check=False)


def path_matrix(rep: Rep, src: int, path: tuple[int, ...]) -> np.ndarray:
    """Action of a path on the representation (walking order)."""
    m = em.identity(rep.dims[src])
    for a in path:
        m = em.matmul(rep.arrow_maps[a], m, rep.algebra.p)
    return m


def elem_matrix(rep: Rep, elem: AlgebraElement) -> np.ndarray:
    """Action ``M_src -> M_tgt`` of an algebra element on the representation."""
    alg = rep.algebra
    out = em.zeros(rep.dims[elem.tgt], rep.dims[elem.src])
    for gid, c in elem.coeffs.items():
        b = alg.basis[gid]
        out = (out + c * path_matrix(rep, b.src, b.path)) % alg.p
    return out


class RepMap:
    """A homomorphism of representations; vertex components commute with arrows."""

    __slots__ = ("source", "target", "comps")

    def __init__(self, source: Rep, target: Rep, comps, check: bool = True):
        if source.algebra is not target.algebra:
            raise ValueError("source and target live over different algebras")
        alg = source.algebra
        q = alg.quiver
        self.source = source
        self.target = target
        cs = []
        for v in range(q.n_vertices):
            m = np.asarray(comps[v], dtype=np.int64) % alg.p
            want = (target.dims[v], source.dims[v])
            if m.shape != want:
                raise ValueError(f"component {v} has shape {m.shape}, expected {want}")
            cs.append(m)
        self.comps = tuple(cs)
        if check:
            for k in range(q.n_arrows):
                i, j = q.arrow_source(k), q.arrow_target(k)
                lhs = em.matmul(target.arrow_maps[k], self.comps[i], alg.p)
                rhs = em.matmul(self.comps[j], source.arrow_maps[k], alg.p)
                if not np.array_equal(lhs, rhs):
                    raise ValueError(f"square at arrow {k} does not commute")

    def is_zero(self) -> bool:
        return not any(np.any(c) for c in self.comps)

    def __repr__(self):
        return f"RepMap({self.source.dims} -> {self.target.dims})"


def zero_map(source: Rep, target: Rep) -> RepMap:
    comps = [em.zeros(target.dims[v], source.dims[v])
             for v in range(source.algebra.quiver.n_vertices)]
    return RepMap(source, target, comps, check=False)


def identity_map(m: Rep) -> RepMap:
    return RepMap(m, m, [em.identity(d) for d in m.dims], check=False)


def compose(g: RepMap, f: RepMap) -> RepMap:
    """``g after f``."""
    if f.target is not g.source and f.target.dims != g.source.dims:
        raise ValueError("maps do not compose")
    p = f.source.algebra.p
    comps = [em.matmul(g.comps[v], f.comps[v], p) for v in range(len(f.comps))]
    return RepMap(f.source, g.target, comps)


def rep_direct_sum(algebra: FiniteDimAlgebra, parts: list[Rep]) -> tuple[Rep, list[tuple[int, ...]]]:
    """Direct sum plus, per part, the offset of its block at each vertex."""
    q = algebra.quiver
    nv = q.n_vertices
    offsets = []
    run = [0] * nv
    for part in parts:
        offsets.append(tuple(run))
        run = [run[v] + part.dims[v] for v in range(nv)]
    dims = tuple(run)
    maps = []
    for k in range(q.n_arrows):
        i, j = q.arrow_source(k), q.arrow_target(k)
        m = em.zeros(dims[j], dims[i])
        for part, off in zip(parts, offsets):
            m[off[j]:off[j] + part.dims[j], off[i]:off[i] + part.dims[i]] = part.arrow_maps[k]
        maps.append(m)
    return Rep(algebra, dims, maps, check=False), offsets


def vstack_maps(target: Rep, maps: list[RepMap]) -> RepMap:
    """Stack maps with a common source into one map to the direct sum target."""
    assert maps, "need at least one map"
    src = maps[0].source
    comps = [np.concatenate([h.comps[v] for h in maps], axis=0)
             for v in range(len(src.dims))]
    return RepMap(src, target, comps)


def hom_basis(m: Rep, n: Rep) -> list[RepMap]:
    """Deterministic basis of ``Hom(m, n)``.

    Unknowns are the vertex components flattened row-major and concatenated
    in vertex order; each arrow contributes one commuting-square block.
    """
    if m.algebra is not n.algebra:
        raise ValueError("modules live over different algebras")
    alg = m.algebra
    q = alg.quiver
    nv = q.n_vertices
    sizes = [n.dims[v] * m.dims[v] for v in range(nv)]
    offs = np.concatenate([[0], np.cumsum(sizes)])
    total = int(offs[-1])
    if total == 0:
        return []
    blocks = []
    for k in range(q.n_arrows):
        i, j = q.arrow_source(k), q.arrow_target(k)
        rows = n.dims[j] * m.dims[i]
        if rows == 0:
            continue
        block = em.zeros(rows, total)
        # n.arrow @ phi_i  contributes  kron(N_b, I)
        block[:, offs[i]:offs[i + 1]] = np.kron(n.arrow_maps[k], em.identity(m.dims[i]))
        # phi_j @ m.arrow  contributes  kron(I, M_b^T), subtracted
        block[:, offs[j]:offs[j + 1]] = (block[:, offs[j]:offs[j + 1]]
                                         - np.kron(em.identity(n.dims[j]),
                                                   m.arrow_maps[k].T)) % alg.p
        blocks.append(block)
    system = np.concatenate(blocks, axis=0) if blocks else em.zeros(0, total)
    basis = em.kernel_basis(system, alg.p)
    out = []
    for col in range(basis.shape[1]):
        comps = []
        for v in range(nv):
            flat = basis[offs[v]:offs[v + 1], col]
            comps.append(flat.reshape(n.dims[v], m.dims[v]))
        out.append(RepMap(m, n, comps))
    return out


def is_isomorphic(m: Rep, n: Rep) -> bool:
    """Isomorphism test, complete for indecomposables.

    When ``m`` and ``n`` are indecomposable and isomorphic, the
    non-isomorphisms form a proper subspace of ``Hom(m, n)``, so some basis
    vector must be invertible; for decomposable inputs the test is only
    conservative (no false positives).
    """
    if m.algebra is not n.algebra:
        raise ValueError("modules live over different algebras")
    if m.dims != n.dims:
        return False
    if m.total_dim == 0:
        return True
    p = m.algebra.p
    for h in hom_basis(m, n):
        if all(em.is_invertible(c, p) for c in h.comps):
            return True
    return False


def top(m: Rep) -> tuple[Rep, RepMap]:
    """``m / rad m`` together with the quotient map; all arrow maps vanish."""
    alg = m.algebra
    q = alg.quiver
    nv = q.n_vertices
    projs = []
    for j in range(nv):
        incoming = [m.arrow_maps[k] for k in range(q.n_arrows) if q.arrow_target(k) == j]
        rad = np.concatenate(incoming, axis=1) if incoming else em.zeros(m.dims[j], 0)
        projs.append(em.quotient_projection(rad, alg.p))
    dims = tuple(pr.shape[0] for pr in projs)
    maps = tuple(em.zeros(dims[q.arrow_target(k)], dims[q.arrow_source(k)])
                 for k in range(q.n_arrows))
    t = Rep(alg, dims, maps, check=False)
    return t, RepMap(m, t, projs)


def projective_cover(m: Rep) -> tuple[tuple[int, ...], Rep, RepMap]:
    """``P -> m`` lifted from a basis of the top; returns (multiplicities, P, epi)."""
    alg = m.algebra
    nv = alg.quiver.n_vertices
    t, pi = top(m)
    mult = t.dims
    parts = []
    sections = {}
    for v in range(nv):
        if mult[v] == 0:
            continue
        sec = em.solve_right(pi.comps[v], em.identity(mult[v]), alg.p)
        assert sec is not None, "top projection must be surjective"
        sections[v] = sec
        parts.extend([alg.projective(v)] * mult[v])
    order = [(v, k) for v in range(nv) for k in range(mult[v])]
    psum, offsets = rep_direct_sum(alg, parts)
    comps = [em.zeros(m.dims[w], psum.dims[w]) for w in range(nv)]
    for part_idx, (v, k) in enumerate(order):
        x = sections[v][:, k]
        off = offsets[part_idx]
        for w in range(nv):
            for col, gid in enumerate(alg.pair_basis(v, w)):
                vec = em.matmul(path_matrix(m, v, alg.basis[gid].path),
                                x.reshape(-1, 1), alg.p)
                comps[w][:, off[w] + col] = vec[:, 0]
    epi = RepMap(psum, m, comps)
    for w in range(nv):
        assert em.rank(epi.comps[w], alg.p) == m.dims[w], "cover is not surjective"
    return mult, psum, epi


def kernel(h: RepMap) -> tuple[Rep, RepMap]:
    """Vertex-wise kernel with the induced arrow maps and its inclusion."""
    alg = h.source.algebra
    q = alg.quiver
    nv = q.n_vertices
    bases = [em.kernel_basis(h.comps[v], alg.p) for v in range(nv)]
    dims = tuple(b.shape[1] for b in bases)
    maps = []
    for k in range(q.n_arrows):
        i, j = q.arrow_source(k), q.arrow_target(k)
        img = em.matmul(h.source.arrow_maps[k], bases[i], alg.p)
        sol = em.solve_right(bases[j], img, alg.p)
        assert sol is not None, "kernel is not arrow-stable"
        maps.append(sol)
    ker = Rep(alg, dims, maps, check=False)
    return ker, RepMap(ker, h.source, bases)


def cokernel(h: RepMap) -> tuple[Rep, RepMap]:
    """Vertex-wise cokernel with the induced arrow maps and its projection."""
    alg = h.source.algebra
    q = alg.quiver
    nv = q.n_vertices
    projs = [em.quotient_projection(h.comps[v], alg.p) for v in range(nv)]
    dims = tuple(pr.shape[0] for pr in projs)
    maps = []
    for k in range(q.n_arrows):
        i, j = q.arrow_source(k), q.arrow_target(k)
        rhs = em.matmul(projs[j], h.target.arrow_maps[k], alg.p)
        solT = em.solve_right(projs[i].T, rhs.T, alg.p)
        assert solT is not None, "image is not arrow-stable"
        maps.append(solT.T)
    cok = Rep(alg, dims, maps, check=False)
    return cok, RepMap(h.target, cok, projs)


def min_projective_presentation(m: Rep):
    """Minimal two-term presentation ``P_{-1} -> P_0`` with cokernel ``m``.

    Built from two successive projective covers; the differential is
    re-expressed with entries in the algebra, one block per pair of
    indecomposable summands.
    """
    from .twoterm import TwoTermComplex

    alg = m.algebra
    nv = alg.quiver.n_vertices
    mult0, p0, epi = projective_cover(m)
    ker, incl = kernel(epi)
    mult1, p1, epi2 = projective_cover(ker)
    d = compose(incl, epi2)
    rows = tuple(v for v in range(nv) for _ in range(mult0[v]))
    cols = tuple(v for v in range(nv) for _ in range(mult1[v]))
    row_offsets = _copy_offsets(alg, rows)
    col_offsets = _copy_offsets(alg, cols)
    blocks = []
    for r, w in enumerate(rows):
        row = []
        for c, v in enumerate(cols):
            # image of the generator e_v of column copy c, read at vertex v
            gen = col_offsets[c][v] + alg.pair_pos(alg.unit_gid(v))
            vec = d.comps[v][:, gen]
            coeffs = {}
            for pos, gid in enumerate(alg.pair_basis(w, v)):
                val = int(vec[row_offsets[r][v] + pos])
                if val:
                    coeffs[gid] = val
            row.append(AlgebraElement(alg, w, v, coeffs))
        blocks.append(tuple(row))
    return TwoTermComplex(alg, rows, cols, tuple(blocks))


def _copy_offsets(alg: FiniteDimAlgebra, verts: tuple[int, ...]) -> list[tuple[int, ...]]:
    nv = alg.quiver.n_vertices
    out = []
    run = [0] * nv
    for v in verts:
        out.append(tuple(run))
        run = [run[w] + alg.pair_dim(v, w) for w in range(nv)]
    return out


def fac_contains(generators: Rep, x: Rep) -> bool:
    """Whether ``x`` is a factor of a finite direct sum of the generators."""
    if generators.algebra is not x.algebra:
        raise ValueError("modules live over different algebras")
    if x.total_dim == 0:
        return True
    alg = x.algebra
    basis = hom_basis(generators, x)
    for v in range(alg.quiver.n_vertices):
        if x.dims[v] == 0:
            continue
        stacked = (np.concatenate([h.comps[v] for h in basis], axis=1)
                   if basis else em.zeros(x.dims[v], 0))
        if em.rank(stacked, alg.p) < x.dims[v]:
            return False
    return True


def direct_summand_split(big: Rep, small: Rep) -> tuple[RepMap, RepMap] | None:
    """Find ``(rho, phi)`` with ``rho . phi == id_small``, or ``None``.

    Scans pairs of Hom-basis elements for an invertible composite; this is
    exhaustive whenever ``End(small)`` has scalar residue field, which holds
    for every module the mutation machinery produces here.
    """
    if small.total_dim == 0 or any(s > b for s, b in zip(small.dims, big.dims)):
        return None
    alg = big.algebra
    into = hom_basis(small, big)
    back = hom_basis(big, small)
    for phi in into:
        for psi in back:
            comp = compose(psi, phi)
            if all(em.is_invertible(c, alg.p) for c in comp.comps):
                inv = RepMap(small, small,
                             [em.invert(c, alg.p) for c in comp.comps])
                rho = compose(inv, psi)
                return rho, phi
    return None
