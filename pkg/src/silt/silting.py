"""Module-level silting theory: pairs, mutation, and the silting order.

A silting pair is a basic set of indecomposable module summands plus a set
of vertices whose shifted projectives make up the complex's degree -1 stalk
part.  The summands live in a shared registry which hands out stable ids,
keyed by (dimension vector, g-vector) with isomorphism confirmation, so
deduplication never trusts the numeric key alone.

The rigidity pairing ``rigid(i, j)`` (surjectivity of Hom against the
minimal presentation differential) is cached per ordered id pair; the
whole partial order on discovered pairs reduces to lookups in that table
plus a support condition.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from . import exactmat as em
from . import repmod as rm
from . import twoterm as tt
from .algebra import FiniteDimAlgebra


@dataclass(frozen=True, order=True)
class SiltingPair:
    """(module summand registry ids, shifted-projective vertices), canonical."""

    summands: tuple[int, ...]
    proj_part: tuple[int, ...]

    def __repr__(self):
        return f"SiltingPair(summands={self.summands}, proj_part={self.proj_part})"


@dataclass(frozen=True)
class Validation:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


class Registry:
    """Shared store of discovered indecomposable modules with stable ids.

    Projectives are registered first, in vertex order, so the ids
    ``0..n_vertices-1`` always denote them.  Insertion is atomic; two
    threads racing on isomorphic modules receive the same id.
    """

    def __init__(self, algebra: FiniteDimAlgebra):
        self.algebra = algebra
        self._lock = threading.RLock()
        self._reps: list[rm.Rep] = []
        self._pres: list[tt.TwoTermComplex] = []
        self._gvec: list[tuple[int, ...]] = []
        self._by_key: dict[tuple, list[int]] = {}
        for v in range(algebra.quiver.n_vertices):
            self.get_or_insert(algebra.projective(v))

    def __len__(self):
        return len(self._reps)

    def rep(self, i: int) -> rm.Rep:
        return self._reps[i]

    def presentation(self, i: int) -> tt.TwoTermComplex:
        return self._pres[i]

    def gvector(self, i: int) -> tuple[int, ...]:
        return self._gvec[i]

    def dims(self, i: int) -> tuple[int, ...]:
        return self._reps[i].dims

    def key(self, i: int) -> tuple:
        return (self._reps[i].dims, self._gvec[i])

    def get_or_insert(self, rep: rm.Rep) -> int:
        if rep.is_zero():
            raise ValueError("the zero module is not registrable")
        pres = rm.min_projective_presentation(rep)
        gvec = tt.g_vector(pres)
        key = (rep.dims, gvec)
        with self._lock:
            for i in self._by_key.get(key, []):
                if rm.is_isomorphic(self._reps[i], rep):
                    return i
            i = len(self._reps)
            self._reps.append(rep)
            self._pres.append(pres)
            self._gvec.append(gvec)
            self._by_key.setdefault(key, []).append(i)
            return i

    def split(self, rep: rm.Rep, candidate_ids=None,
              register_remainder: bool = False) -> list[int] | None:
        """Peel registered indecomposables off ``rep``; ids with multiplicity.

        Candidates are tried in ascending id order and the scan restarts
        after every successful split, so the result is deterministic.  When
        nothing known splits off a nonzero remainder, either the remainder
        is registered as a new indecomposable (``register_remainder``) or
        the split fails with ``None``.
        """
        pieces: list[int] = []
        current = rep
        while not current.is_zero():
            with self._lock:
                ids = sorted(candidate_ids) if candidate_ids is not None \
                    else list(range(len(self._reps)))
            for i in ids:
                got = rm.direct_summand_split(current, self._reps[i])
                if got is not None:
                    rho, _ = got
                    pieces.append(i)
                    current, _ = rm.kernel(rho)
                    break
            else:
                if not register_remainder:
                    return None
                pieces.append(self.get_or_insert(current))
                break
        return pieces


class SiltingWorkspace:
    """An algebra, its registry, and all mutation-level operations."""

    def __init__(self, algebra: FiniteDimAlgebra, registry: Registry | None = None):
        self.algebra = algebra
        self.registry = registry if registry is not None else Registry(algebra)
        self._lock = threading.RLock()
        self._hom: dict[tuple[int, int], list[rm.RepMap]] = {}
        self._rigid: dict[tuple[int, int], bool] = {}

    # ---- cached primitives -----------------------------------------------

    def module(self, i: int) -> rm.Rep:
        return self.registry.rep(i)

    def hom(self, i: int, j: int) -> list[rm.RepMap]:
        key = (i, j)
        got = self._hom.get(key)
        if got is None:
            got = rm.hom_basis(self.registry.rep(i), self.registry.rep(j))
            with self._lock:
                self._hom.setdefault(key, got)
        return self._hom[key]

    def rigid(self, i: int, j: int) -> bool:
        """Surjectivity of Hom(d_i, m_j); the two-term shifted-Hom vanishing."""
        key = (i, j)
        got = self._rigid.get(key)
        if got is None:
            got = self._rigid_compute(i, j)
            with self._lock:
                self._rigid.setdefault(key, got)
        return self._rigid[key]

    def _rigid_compute(self, i: int, j: int) -> bool:
        pres = self.registry.presentation(i)
        m = self.registry.rep(j)
        p = self.algebra.p
        dom = sum(m.dims[v] for v in pres.rows)
        cod = sum(m.dims[v] for v in pres.cols)
        if cod == 0:
            return True
        mat = em.zeros(cod, dom)
        roff = np.concatenate([[0], np.cumsum([m.dims[v] for v in pres.rows])]).astype(int)
        coff = np.concatenate([[0], np.cumsum([m.dims[v] for v in pres.cols])]).astype(int)
        for r in range(len(pres.rows)):
            for c in range(len(pres.cols)):
                block = rm.elem_matrix(m, pres.d[r][c])
                mat[coff[c]:coff[c + 1], roff[r]:roff[r + 1]] = block
        return em.rank(mat, p) == cod

    # ---- pair plumbing ------------------------------------------------------

    def make_pair(self, summands, proj_part) -> SiltingPair:
        ids = list(summands)
        if len(set(ids)) != len(ids):
            raise ValueError("pair summands must be pairwise distinct")
        keys = [self.registry.key(i) for i in ids]
        if len(set(keys)) != len(keys):
            raise RuntimeError("two summands share dimension and g-vector; "
                               "registry corruption?")
        order = sorted(range(len(ids)), key=lambda k: keys[k])
        return SiltingPair(tuple(ids[k] for k in order),
                           tuple(sorted(set(int(v) for v in proj_part))))

    def lambda_pair(self) -> SiltingPair:
        return self.make_pair(range(self.algebra.quiver.n_vertices), ())

    def zero_pair(self) -> SiltingPair:
        return self.make_pair((), range(self.algebra.quiver.n_vertices))

    def summand_dims(self, pair: SiltingPair) -> tuple[int, ...]:
        nv = self.algebra.quiver.n_vertices
        out = [0] * nv
        for i in pair.summands:
            for v, d in enumerate(self.registry.dims(i)):
                out[v] += d
        return tuple(out)

    def module_rep(self, pair: SiltingPair) -> rm.Rep:
        if not pair.summands:
            return rm.zero_rep(self.algebra)
        rep, _ = rm.rep_direct_sum(self.algebra,
                                   [self.registry.rep(i) for i in pair.summands])
        return rep

    # ---- predicates ----------------------------------------------------------

    def is_presilting_module(self, m: rm.Rep) -> bool:
        """Rigidity of a raw module, without touching the registry."""
        pres = rm.min_projective_presentation(m)
        p = self.algebra.p
        dom = sum(m.dims[v] for v in pres.rows)
        cod = sum(m.dims[v] for v in pres.cols)
        if cod == 0:
            return True
        mat = em.zeros(cod, dom)
        roff = np.concatenate([[0], np.cumsum([m.dims[v] for v in pres.rows])]).astype(int)
        coff = np.concatenate([[0], np.cumsum([m.dims[v] for v in pres.cols])]).astype(int)
        for r in range(len(pres.rows)):
            for c in range(len(pres.cols)):
                mat[coff[c]:coff[c + 1], roff[r]:roff[r + 1]] = \
                    rm.elem_matrix(m, pres.d[r][c])
        return em.rank(mat, p) == cod

    def is_presilting_ids(self, ids) -> bool:
        ids = list(ids)
        return all(self.rigid(i, j) for i in ids for j in ids)

    def validate_silting_pair(self, pair: SiltingPair) -> Validation:
        """Count, exact support, rigidity, and the approximation sequence."""
        nv = self.algebra.quiver.n_vertices
        if len(pair.summands) + len(pair.proj_part) != nv:
            return Validation(False, "count")
        dims = self.summand_dims(pair)
        proj = set(pair.proj_part)
        for v in range(nv):
            if (dims[v] == 0) != (v in proj):
                return Validation(False, "support")
        if not self.is_presilting_ids(pair.summands):
            return Validation(False, "rigidity")
        for v in range(nv):
            _, h, _ = self.left_minimal_approximation(v, pair.summands)
            cok, _ = rm.cokernel(h)
            if not cok.is_zero():
                if self.registry.split(cok, candidate_ids=pair.summands) is None:
                    return Validation(False, "approximation")
        return Validation(True)

    def is_sincere_silting(self, pair: SiltingPair) -> bool:
        return len(pair.summands) == self.algebra.quiver.n_vertices

    # ---- approximations -------------------------------------------------------

    def left_minimal_approximation(self, x: int, target_ids):
        """Left approximation of module ``x`` by sums of the targets.

        Starts from one copy per Hom-basis element and greedily strips
        copies, re-testing the approximation property after each removal;
        the scan order is deterministic.  Returns (copy list, map, target).
        """
        targets = sorted(target_ids)
        copies = [(t, b) for t in targets for b in range(len(self.hom(x, t)))]
        copies = self._strip_copies(x, targets, copies)
        h, target = self._assemble_approximation(x, copies)
        return copies, h, target

    def _assemble_approximation(self, x: int, copies):
        xrep = self.registry.rep(x)
        if not copies:
            z = rm.zero_rep(self.algebra)
            return rm.zero_map(xrep, z), z
        parts = [self.registry.rep(t) for (t, _) in copies]
        target, _ = rm.rep_direct_sum(self.algebra, parts)
        h = rm.vstack_maps(target, [self.hom(x, t)[b] for (t, b) in copies])
        return h, target

    def _strip_copies(self, x: int, targets, copies):
        copies = list(copies)
        i = 0
        while i < len(copies):
            trial = copies[:i] + copies[i + 1:]
            if self._is_approximation(x, targets, trial):
                copies = trial
                i = 0
            else:
                i += 1
        return copies

    def _is_approximation(self, x: int, targets, copies) -> bool:
        p = self.algebra.p
        for t in targets:
            xbasis = self.hom(x, t)
            if not xbasis:
                continue
            bmat = np.concatenate(
                [_vec_map(h).reshape(-1, 1) for h in xbasis], axis=1)
            cols = []
            for (tk, b) in copies:
                hk = self.hom(x, tk)[b]
                for psi in self.hom(tk, t):
                    cols.append(_vec_map(rm.compose(psi, hk)).reshape(-1, 1))
            if not cols:
                return False
            cmat = np.concatenate(cols, axis=1)
            coords = em.solve_right(bmat, cmat, p)
            assert coords is not None, "composite escaped the Hom space"
            if em.rank(coords, p) < len(xbasis):
                return False
        return True

    # ---- mutation ---------------------------------------------------------------

    def mutate_left(self, pair: SiltingPair, at: int) -> SiltingPair | None:
        """Irreducible left mutation at the ``at``-th module summand.

        Follows the cokernel formula; when the approximation is onto, the
        summand moves to the shifted-projective part at the unique newly
        unsupported vertex.  Candidates are accepted only if they validate
        and sit strictly below the input, which keeps the operation total
        when the input happens to be the minimal completion already.
        """
        if not 0 <= at < len(pair.summands):
            raise IndexError(f"summand index {at} out of range")
        x = pair.summands[at]
        rest = tuple(i for k, i in enumerate(pair.summands) if k != at)
        _, h, _ = self.left_minimal_approximation(x, rest)
        cok, _ = rm.cokernel(h)
        if not cok.is_zero():
            cid = self.registry.get_or_insert(cok)
            if cid in rest:
                return None
            candidate = self.make_pair(rest + (cid,), pair.proj_part)
        else:
            nv = self.algebra.quiver.n_vertices
            rest_dims = [0] * nv
            for i in rest:
                for v, d in enumerate(self.registry.dims(i)):
                    rest_dims[v] += d
            vacant = [v for v in range(nv)
                      if v not in pair.proj_part and rest_dims[v] == 0]
            if not vacant:
                return None
            if len(vacant) > 1:
                raise RuntimeError(
                    f"multiple support vertices {vacant} qualify after removing "
                    "one summand; the input cannot be a valid silting pair")
            candidate = self.make_pair(rest, pair.proj_part + (vacant[0],))
        if not self.validate_silting_pair(candidate):
            return None
        if not (self.pair_leq(candidate, pair) and not self.pair_leq(pair, candidate)):
            return None
        return candidate

    # ---- order --------------------------------------------------------------------

    def pair_leq(self, a: SiltingPair, b: SiltingPair) -> bool:
        """``a <= b`` in the silting order: the factor class of a sits inside b's."""
        for v in b.proj_part:
            for i in a.summands:
                if self.registry.dims(i)[v]:
                    return False
        return all(self.rigid(i, j) for i in b.summands for j in a.summands)

    # ---- pair <-> complex bridges ---------------------------------------------------

    def complex_of(self, pair: SiltingPair) -> tt.TwoTermComplex:
        parts = [self.registry.presentation(i) for i in pair.summands]
        parts += [tt.shifted_stalk(self.algebra, v) for v in pair.proj_part]
        if not parts:
            return tt.zero_complex(self.algebra)
        return tt.direct_sum(*parts)

    def pair_of(self, t: tt.TwoTermComplex) -> SiltingPair:
        """The pair of the additive equivalence class: summands deduplicated."""
        red = tt.minimality_reduce(t)
        shift_verts = []
        for c, v in enumerate(red.cols):
            if all(red.d[r][c].is_zero() for r in range(len(red.rows))):
                shift_verts.append(v)
        _, _, dmap = tt.complex_repmap(red)
        cok, _ = rm.cokernel(dmap)
        pieces = self.registry.split(cok)
        if pieces is None:
            raise ValueError("zeroth cohomology does not split over the registry")
        return self.make_pair(sorted(set(pieces)), shift_verts)


def _vec_map(h: rm.RepMap) -> np.ndarray:
    if not h.comps:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate([c.reshape(-1) for c in h.comps])
