"""Seeded random instances and the registry of named identity checks.

Every check takes a :class:`CheckSpec`, builds its instance stream from
``numpy.random.default_rng([seed, i])`` and compares dimensions, subspaces
or matrices exactly.  Reports are plain data and serialize
deterministically to JSON and to an aligned text table.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from . import algebra as alg_mod
from .algebra import Algebra
from .exactlin import Subspace, annihilator, is_invertible
from .functors import (
    annihilator_eval,
    annihilator_map,
    annihilator_presentation,
    d_functor_eval,
    dual_functor_eval,
    eval_pp_pair,
    eval_presentation,
    g_functor,
    is_perfect_pairing,
    pair_to_presentation,
    pairing_matrix,
    pp_pair_map,
    presentation_map,
    presentation_witness,
)
from .homology import (
    ext_dims,
    radical_submodule,
    ext_shift,
    hom_sequence_exact,
    cover,
    stable_hom,
    t_dual_tensor_map,
    tau,
)
from .jsonio import algebra_to_dict, formula_to_dict, map_to_dict, module_to_dict
from .modules import (
    LEFT,
    Module,
    ModuleError,
    ModuleMap,
    TensorProduct,
    direct_sum,
    dual_map,
    dual_module,
    eta_map,
    free_module,
    generated_submodule,
    hom_space,
    indecomposable_projective,
    interval_module,
    is_projective,
    other_side,
    quotient_module,
    submodule,
    zero_map,
)
from .pp import NotAPair, PpFormula, PpPair, dual_formula, implies, make_pair, solution_set


class GenerationError(RuntimeError):
    pass


class UnknownCheck(KeyError):
    pass


@dataclass(frozen=True)
class Sizes:
    algebra_dim: int = 6
    module_dim: int = 8
    arity: int = 4
    instances: int = 50
    p: int = 2

    @classmethod
    def parse(cls, text: str) -> "Sizes":
        """``"key=value,..."`` with keys ``algebra_dim, module_dim, arity, instances, p``."""
        values = {}
        for part in filter(None, (s.strip() for s in text.split(","))):
            key, sep, val = part.partition("=")
            key = key.strip().replace("-", "_")
            if not sep or key not in cls.__dataclass_fields__:
                raise ValueError(f"bad size entry {part!r}")
            values[key] = int(val)
        return cls(**values)

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


@dataclass(frozen=True)
class CheckSpec:
    name: str
    seed: int = 0
    sizes: Sizes = field(default_factory=Sizes)


@dataclass
class CheckReport:
    name: str
    seed: int
    sizes: Sizes
    columns: tuple[str, ...]
    instances_run: int = 0
    failures: list[dict] = field(default_factory=list)
    dims_table: list[tuple] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "seed": self.seed,
            "sizes": self.sizes.to_dict(),
            "passed": self.passed,
            "instances_run": self.instances_run,
            "columns": list(self.columns),
            "dims_table": [list(row) for row in self.dims_table],
            "failures": self.failures,
        }

    def to_text(self) -> str:
        head = f"== {self.name}  seed={self.seed}  instances={self.instances_run}  {'PASS' if self.passed else 'FAIL'}"
        rows = [("#", "algebra") + tuple(self.columns)] + [tuple(str(x) for x in row) for row in self.dims_table]
        widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
        lines = [head] + ["  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
        for f in self.failures:
            lines.append(f"  failure at instance {f['instance']}: {f['message']}")
        return "\n".join(lines) + "\n"


# Instances


def algebra_family(p: int = 2) -> list[tuple[str, Callable[[], Algebra]]]:
    fam = [
        ("K", lambda: alg_mod.field_algebra(p)),
        ("K[eps]/eps^2", lambda: alg_mod.dual_numbers(p)),
        ("K[t]/t^3", lambda: alg_mod.truncated_polynomial(3, p)),
        ("A2", lambda: alg_mod.a2(p)),
        ("A3/rel", lambda: alg_mod.a3(p, zero_relation=True)),
        ("A3", lambda: alg_mod.a3(p)),
        ("K[t]/(t^3+t^2)", lambda: alg_mod.split_monogenic(p)),
        ("K[t]/(t^3+t+1)", lambda: alg_mod.monogenic([1, 1, 0], p)),
    ]
    if p == 2:
        fam.insert(2, ("GF(4)", alg_mod.gf4))
    return fam


_FAMILY_CACHE: dict[tuple[int, str], Algebra] = {}


def _family(p: int, max_dim: int, quiver_only: bool = False) -> list[tuple[str, Algebra]]:
    out = []
    for name, make in algebra_family(p):
        key = (p, name)
        if key not in _FAMILY_CACHE:
            _FAMILY_CACHE[key] = make()
        a = _FAMILY_CACHE[key]
        if a.dim <= max_dim and (not quiver_only or a.provenance is not None):
            out.append((name, a))
    if not out:
        raise GenerationError(f"no algebra in the family has dimension <= {max_dim}")
    return out


def random_element(a: Algebra, rng, density: float = 0.5) -> np.ndarray:
    mask = rng.random(a.dim) < density
    return (rng.integers(1, a.p, size=a.dim) * mask) % a.p if a.p > 2 else mask.astype(np.int64)


def random_module(a: Algebra, side: str, max_dim: int, rng, tries: int = 200, nested: bool = True) -> Module:
    """Quotient, submodule or dual of a small free module, an interval module, or a sum.

    Zero modules are kept only occasionally so that most instances say something.
    """
    kinds = ["quotient", "quotient", "submodule", "dual"]
    kinds += ["interval"] if a.provenance is not None else []
    kinds += (["sum"] + (["top", "radical"] if a.has_radical else [])) if nested else []
    zero = None
    for _ in range(tries):
        kind = kinds[rng.integers(len(kinds))]
        if kind == "interval":
            n = a.provenance.vertices
            lo = int(rng.integers(n))
            hi = int(rng.integers(lo, n))
            try:
                m = interval_module(a, lo, hi)
            except ModuleError:
                continue
            m = m if side == LEFT else dual_module(m)
        elif kind in ("top", "radical"):
            try:
                base = random_module(a, side, 2 * max_dim, rng, 20, nested=False)
            except GenerationError:
                continue
            rad = radical_submodule(base)
            m = quotient_module(base, rad)[0] if kind == "top" else submodule(base, rad)[0]
        elif kind == "sum":
            if max_dim < 2:
                continue
            half = max_dim // 2
            try:
                m = direct_sum(
                    random_module(a, side, half, rng, 20, nested=False),
                    random_module(a, side, max_dim - half, rng, 20, nested=False),
                )
            except GenerationError:
                continue
        else:
            base_side = side if kind != "dual" else other_side(side)
            k = int(rng.integers(1, 4))
            free = free_module(a, base_side, k)
            count = int(rng.integers(0, k + 2)) if kind != "submodule" else int(rng.integers(1, k + 1))
            vecs = np.array([random_element(a, rng, 0.4) for _ in range(count * k)], dtype=np.int64)
            sub = generated_submodule(free, vecs.reshape(count, k * a.dim))
            if kind == "submodule":
                m, _ = submodule(free, sub)
            else:
                m, _ = quotient_module(free, sub)
            if kind == "dual":
                m = dual_module(m)
        if m.dim == 0:
            zero = m
        if m.dim <= max_dim and (m.dim > 0 or rng.random() < 0.1):
            return m
    if zero is not None:
        return zero
    raise GenerationError(f"no module of dimension <= {max_dim} after {tries} tries")


def random_formula(a: Algebra, side: str, n: int, m: int, rng, max_equations: int = 2) -> PpFormula:
    eqs = int(rng.integers(0, max_equations + 1))
    A = np.array([[random_element(a, rng, 0.4) for _ in range(n)] for _ in range(eqs)], dtype=np.int64)
    B = np.array([[random_element(a, rng, 0.4) for _ in range(m)] for _ in range(eqs)], dtype=np.int64)
    return PpFormula(a, side, A.reshape(eqs, n, a.dim), B.reshape(eqs, m, a.dim))


def random_pair(a: Algebra, side: str, arity: int, rng, tries: int = 5) -> PpPair:
    """Rejection-sample ``phi / psi``; fall back to ``phi / (phi and psi)``."""
    if arity < 1:
        raise GenerationError("formula arity must be at least 1")
    n = int(rng.integers(1, min(2, arity) + 1))
    budget = arity - n
    phi = psi = None
    for _ in range(tries):
        m1 = int(rng.integers(0, budget + 1))
        m2 = int(rng.integers(0, budget - m1 + 1))
        phi = random_formula(a, side, n, m1, rng)
        psi = random_formula(a, side, n, m2, rng)
        try:
            return make_pair(phi, psi)
        except NotAPair:
            continue
    return make_pair(phi, phi.conjoin(psi))


@dataclass(frozen=True, eq=False)
class Instance:
    index: int
    algebra_name: str
    algebra: Algebra
    modules: tuple[Module, ...]
    pair: PpPair
    maps: tuple[ModuleMap, ...]
    formulas: tuple[PpFormula, ...] = ()

    def to_dict(self) -> dict:
        mods = list(self.modules)
        return {
            "instance": self.index,
            "algebra_name": self.algebra_name,
            "algebra": algebra_to_dict(self.algebra),
            "modules": [module_to_dict(m) for m in mods],
            "formulas": [formula_to_dict(f) for f in (self.pair.phi, self.pair.psi) + tuple(self.formulas)],
            "maps": [
                dict(map_to_dict(g), source=_index_of(g.source, mods), target=_index_of(g.target, mods)) for g in self.maps
            ],
        }


def _index_of(m: Module, mods: list[Module]) -> int:
    return next((i for i, x in enumerate(mods) if x is m), -1)


def sample_maps(m0: Module, m1: Module, rng) -> tuple[ModuleMap, ...]:
    """One map each in ``Hom(M0, M1)``, ``Hom(M1, M0)`` and ``End(M0)``."""
    out = []
    for s, t in ((m0, m1), (m1, m0), (m0, m0)):
        h = hom_space(s, t)
        out.append(h.random(rng) if h.dim else zero_map(s, t))
    return tuple(out)


def gen_random_instance(seed: int, sizes: Sizes = Sizes(), index: int = 0, side: str = LEFT) -> Instance:
    """Deterministic instance number ``index`` of the stream for ``seed``."""
    rng = np.random.default_rng([seed, index])
    fam = _family(sizes.p, sizes.algebra_dim)
    name, a = fam[int(rng.integers(len(fam)))]
    m0 = random_module(a, side, sizes.module_dim, rng)
    m1 = random_module(a, side, sizes.module_dim, rng)
    pair = random_pair(a, side, sizes.arity, rng)
    maps = sample_maps(m0, m1, rng)
    extra = tuple(random_formula(a, side, pair.n, int(rng.integers(0, sizes.arity - pair.n + 1)), rng) for _ in range(2))
    return Instance(index, name, a, (m0, m1), pair, maps, extra)


# Checks


@dataclass
class Context:
    """Swappable implementations, so a check can be run against a corrupted one."""

    dual_formula: Callable[[PpFormula], PpFormula] = dual_formula

    def dual_pair(self, pair: PpPair) -> PpPair:
        return make_pair(self.dual_formula(pair.psi), self.dual_formula(pair.phi))


class CheckFailed(AssertionError):
    pass


def _require(cond: bool, message: str):
    if not cond:
        raise CheckFailed(message)


def _commutes(lhs: np.ndarray, rhs: np.ndarray, p: int) -> bool:
    return lhs.shape == rhs.shape and not np.any((lhs - rhs) % p)


def check_dual_annihilator(inst: Instance, ctx: Context) -> tuple:
    pair = inst.pair
    p = inst.algebra.p
    f = pair_to_presentation(pair)
    g = annihilator_presentation(pair)
    row = []
    for m in inst.modules:
        fv, av = eval_pp_pair(pair, m), annihilator_eval(pair, m)
        sv = dual_functor_eval(f, m)
        gv = eval_presentation(g, m)
        _require(fv.dim == av.dim == sv.dim == gv.dim, f"dims differ: F={fv.dim} A={av.dim} F*={sv.dim} G={gv.dim}")
        _require(is_perfect_pairing(fv, av), "evaluation pairing between F and A values is degenerate")
        row.append(fv.dim)
    for gmap in inst.maps:
        src, dst = gmap.source, gmap.target
        fmap = pp_pair_map(pair, gmap)  # F(src) -> F(dst)
        amap = annihilator_map(pair, gmap)  # A(dst) -> A(src)
        g_src = pairing_matrix(eval_pp_pair(pair, src), annihilator_eval(pair, src))
        g_dst = pairing_matrix(eval_pp_pair(pair, dst), annihilator_eval(pair, dst))
        _require(_commutes(fmap.T @ g_dst % p, g_src @ amap % p, p), "pairing is not natural along a sampled map")
    return tuple(row)


def check_annihilator_dual_formula(inst: Instance, ctx: Context) -> tuple:
    row = []
    for m in inst.modules:
        for phi in (inst.pair.phi, inst.pair.psi):
            lhs = annihilator(solution_set(phi, m))
            rhs = solution_set(ctx.dual_formula(phi), dual_module(m))
            _require(lhs == rhs, f"ann(phi(M)) != (D phi)(M*) for {phi}")
            row.append(lhs.dim)
    return tuple(row)


def check_d_duality(inst: Instance, ctx: Context) -> tuple:
    pair = inst.pair
    f = pair_to_presentation(pair)
    dpair = ctx.dual_pair(pair)
    row = []
    for m in inst.modules:
        n = dual_module(m)
        lhs = d_functor_eval(f, n).dim
        rhs = eval_pp_pair(dpair, n).dim
        _require(lhs == rhs, f"dF(N) has dim {lhs} but the dual pair gives {rhs}")
        row.append(lhs)
    return tuple(row)


def check_hom_tensor(inst: Instance, ctx: Context) -> tuple:
    """``(M, N*) = (N (x) M)* = (N, M*)`` for ``M`` left and ``N`` right, as subspaces."""
    m0, m1 = inst.modules
    n = dual_module(m1)
    ten = TensorProduct(n, m0)
    dual_t = ten.dual_space()
    h1 = hom_space(m0, dual_module(n))
    h2 = hom_space(n, dual_module(m0))
    p = inst.algebra.p
    _require(h1.dim == dual_t.dim == h2.dim, f"dims {h1.dim}, {dual_t.dim}, {h2.dim}")
    # h in Hom(M, N*) is the functional n_a (x) m_b -> h[a, b]
    _require(h1.space == dual_t, "Hom(M, N*) is not the space of balanced functionals")
    # k in Hom(N, M*) is the functional n_a (x) m_b -> k[b, a]
    swapped = h2.matrices.transpose(0, 2, 1).reshape(h2.dim, -1) if h2.dim else np.zeros((0, 0), dtype=np.int64)
    _require(Subspace.span(swapped, dual_t.ambient_dim, p) == dual_t, "Hom(N, M*) is not the space of balanced functionals")
    for g in inst.maps:
        if g.source is not m0:
            continue
        tgt_ten = TensorProduct(n, g.target)
        hg = hom_space(g.target, dual_module(n))
        for hmat in hg.matrices:
            pulled = np.kron(np.eye(n.dim, dtype=np.int64), g.matrix).T @ hmat.reshape(-1) % p
            _require(_commutes(pulled, (hmat @ g.matrix % p).reshape(-1), p), "hom-tensor iso is not natural")
            _require(tgt_ten.dual_space().contains(hmat.reshape(-1)), "functional not balanced")
    return (h1.dim, dual_t.dim, h2.dim)


def _sigma(m: Module, n: Module) -> tuple[np.ndarray, TensorProduct, object]:
    """``sigma: M* (x) N -> Hom(N, M)*`` in tensor-quotient and Hom-basis coordinates."""
    ten = TensorProduct(dual_module(m), n)
    hom = hom_space(n, m)
    if hom.dim == 0 or ten.dim == 0:
        return np.zeros((hom.dim, ten.dim), dtype=np.int64), ten, hom
    # (f_a (x) n_b)(g) = f_a(g(n_b)) = g[a, b]
    flat = hom.matrices.reshape(hom.dim, -1)
    return flat @ ten.quotient.lift_matrix() % m.p, ten, hom


def check_sigma_iso(inst: Instance, ctx: Context) -> tuple:
    m0, m1 = inst.modules
    p = inst.algebra.p
    sig, ten, hom = _sigma(m0, m1)
    _require(ten.dim == hom.dim, f"dim M*(x)N = {ten.dim} but dim (N, M) = {hom.dim}")
    _require(sig.shape[0] == 0 or is_invertible(sig, p), "sigma is not invertible")
    rel = ten.relations
    if rel.dim and hom.dim:
        _require(not np.any(hom.matrices.reshape(hom.dim, -1) @ rel.basis.T % p), "sigma does not vanish on relations")
    for g in inst.maps:
        # naturality in N: sigma_{M,N'} (1 (x) g) = (- o g)* sigma_{M,N} for g: N -> N'
        if g.source is not m1:
            continue
        sig2, ten2, hom2 = _sigma(m0, g.target)
        tg = ten.induced(None, g, ten2)  # M*(x)N -> M*(x)N'
        if hom2.dim and hom.dim:
            pre = hom.coords(hom2.matrices @ g.matrix % p).reshape(hom2.dim, hom.dim)  # row k: H'_k o g
            _require(_commutes(sig2 @ tg % p, pre @ sig % p, p), "sigma is not natural in N")
    for g in inst.maps:
        # naturality in M: sigma_{M,N} (g* (x) 1) = (g o -)* sigma_{M',N} for g: M -> M'
        if g.source is not m0 or g.target is not m0:
            continue
        tg = ten.induced(dual_map(g), None, ten)
        if hom.dim:
            post = hom.coords(g.matrix @ hom.matrices % p).reshape(hom.dim, hom.dim)
            _require(_commutes(sig @ tg % p, post @ sig % p, p), "sigma is not natural in M")
    return (ten.dim, hom.dim, sig.shape[0])


def check_double_dual(inst: Instance, ctx: Context) -> tuple:
    p = inst.algebra.p
    for m in inst.modules:
        eta_map(m)
    for g in inst.maps:
        em, en = eta_map(g.source), eta_map(g.target)
        gg = dual_map(dual_map(g)).matrix
        _require(_commutes(gg @ em.matrix % p, en.matrix @ g.matrix % p, p), "eta is not natural")
    return tuple(m.dim for m in inst.modules)


def check_ext_shift(inst: Instance, ctx: Context) -> tuple:
    m0, m1 = inst.modules
    a_mod, m = m0, m1
    sh = ext_shift(a_mod)
    exact, coker = hom_sequence_exact(sh, m)
    _require(exact, "0 -> (M, A) -> (M, P*) -> (M, L*) is not exact")
    e_a = ext_dims(m, a_mod, 3)
    e_l = ext_dims(m, sh.l_dual, 2)
    e_p = ext_dims(m, sh.p_dual, 2)
    _require(e_p[1] == 0 and e_p[2] == 0, f"Ext(M, P*) = {e_p[1:]} but P* is injective")
    _require(coker == e_a[1], f"coker (M, P*) -> (M, L*) has dim {coker}, Ext^1(M, A) = {e_a[1]}")
    for k in (1, 2):
        _require(e_a[k + 1] == e_l[k], f"Ext^{k + 1}(M, A) = {e_a[k + 1]} but Ext^{k}(M, L*) = {e_l[k]}")
    return (e_a[1], e_a[2], e_a[3], e_l[1], e_l[2])


def check_projective_over_epi(inst: Instance, ctx: Context) -> tuple:
    a = inst.algebra
    m0, m1 = inst.modules
    rng = np.random.default_rng([inst.index, 3])
    epis = [cover(m).map for m in inst.modules if m.dim]
    # a quotient map of M1 by the submodule generated by a random vector
    if m1.dim:
        v = rng.integers(0, a.p, size=m1.dim)
        _, proj = quotient_module(m1, generated_submodule(m1, v))
        epis.append(proj)
    projectives = [free_module(a, LEFT, 1), free_module(a, LEFT, 2)]
    if a.has_radical:
        projectives += [indecomposable_projective(a, e)[0] for e in a.idempotents]
    zeros_seen = 0
    for f in epis:
        g = g_functor(f)
        for pm in projectives:
            _require(eval_presentation(g, pm).dim == 0, "G_f(P) != 0 for a projective P and epi f")
            zeros_seen += 1
    # converse along a cover: G_cover(M)(M) = 0 iff M is projective
    flags = []
    for m in inst.modules:
        if m.dim == 0:
            continue
        c = cover(m).map
        vanishes = eval_presentation(g_functor(c), m).dim == 0
        proj_flag = is_projective(m)[0]
        _require(vanishes == proj_flag, "G_f(M) = 0 for the cover f of M disagrees with projectivity of M")
        flags.append(int(proj_flag))
    return (len(epis), zeros_seen) + tuple(flags)


def check_stable_hom_sequence(inst: Instance, ctx: Context) -> tuple:
    row = []
    for m, n in ((inst.modules[0], inst.modules[1]), (inst.modules[1], inst.modules[0])):
        tmap = t_dual_tensor_map(m, n)
        st = stable_hom(m, n, "projective")
        _require(tmap.image == st.relations, "image of M^t (x) N -> (M, N) is not the maps through projectives")
        _require(tmap.cokernel_dim == st.dim, f"cokernel {tmap.cokernel_dim} != stable Hom {st.dim}")
        row.append(st.dim)
    return tuple(row)


def check_ar_formula(inst: Instance, ctx: Context) -> tuple:
    """``N`` is ``modules[0]``; ``M`` runs over all of ``modules``."""
    n = inst.modules[0]
    t = tau(n)
    totals = [0, 0, 0]
    for m in inst.modules:
        e1 = ext_dims(n, m, 1)[1]
        inj = stable_hom(m, t, "injective").dim
        proj = stable_hom(m, t, "projective").dim
        _require(e1 == inj, f"Ext^1(N, M) = {e1} but injectively stable Hom(M, tau N) = {inj} for dim M = {m.dim}")
        totals = [totals[0] + e1, totals[1] + inj, totals[2] + proj]
    return (n.dim, t.dim, len(inst.modules)) + tuple(totals)


def check_zero_kernel(inst: Instance, ctx: Context) -> tuple:
    row = []
    for m in inst.modules:
        fz = eval_pp_pair(inst.pair, m).dim == 0
        az = annihilator_eval(inst.pair, m).dim == 0
        _require(fz == az, "F(M) = 0 and A(M) = 0 disagree")
        row.append(int(fz))
    return tuple(row)


def check_dual_involution(inst: Instance, ctx: Context) -> tuple:
    d = ctx.dual_formula
    forms = (inst.pair.phi, inst.pair.psi) + tuple(inst.formulas)
    checked = 0
    for phi in forms:
        dd = d(d(phi))
        _require(dd.side == phi.side and dd.n == phi.n, "DD phi changed side or arity")
        for m in inst.modules:
            _require(solution_set(dd, m) == solution_set(phi, m), f"DD phi and phi differ on a module: {phi}")
        checked += 1
    implications = 0
    for a in forms:
        for b in forms:
            if a is not b and a.n == b.n and implies(b, a):
                _require(implies(d(a), d(b)), "D does not reverse an implication")
                implications += 1
    return (checked, implications)


def check_presentation_bridge(inst: Instance, ctx: Context) -> tuple:
    pair = inst.pair
    f = pair_to_presentation(pair)
    p = inst.algebra.p
    row = []
    for m in inst.modules:
        w = presentation_witness(f, pair, m)
        row.append(w.shape[0])
    for g in inst.maps:
        w_src = presentation_witness(f, pair, g.source)
        w_dst = presentation_witness(f, pair, g.target)
        lhs = w_dst @ presentation_map(f, g) % p
        rhs = pp_pair_map(pair, g) @ w_src % p
        _require(_commutes(lhs, rhs, p), "presentation isomorphism is not natural")
    return tuple(row)


def _ar_instance(seed: int, sizes: Sizes, index: int) -> Instance:
    """A random interval module ``N`` followed by every interval module of a quiver algebra."""
    rng = np.random.default_rng([seed, index, 7])
    fam = _family(sizes.p, sizes.algebra_dim, quiver_only=True)
    name, a = fam[int(rng.integers(len(fam)))]
    mods = _intervals(a)
    n = mods[int(rng.integers(len(mods)))]
    pair = random_pair(a, LEFT, 1, rng)
    return Instance(index, name, a, (n,) + tuple(m for m in mods if m is not n), pair, ())


def _intervals(a: Algebra) -> list[Module]:
    out = []
    k = a.provenance.vertices
    for lo in range(k):
        for hi in range(lo, k):
            try:
                out.append(interval_module(a, lo, hi))
            except ModuleError:
                pass
    return out


def _homological_instance(seed: int, sizes: Sizes, index: int) -> Instance:
    """Smaller modules: resolutions to degree 3 grow quickly."""
    small = replace(sizes, module_dim=min(sizes.module_dim, 6), algebra_dim=min(sizes.algebra_dim, 6))
    return gen_random_instance(seed, small, index)


@dataclass(frozen=True)
class RegisteredCheck:
    name: str
    run: Callable[[Instance, Context], tuple]
    columns: tuple[str, ...]
    instances: Callable[[int, Sizes, int], Instance] = gen_random_instance
    description: str = ""


REGISTRY: dict[str, RegisteredCheck] = {
    c.name: c
    for c in [
        RegisteredCheck("dual-annihilator", check_dual_annihilator, ("F(M0)", "F(M1)"),
                        description="dim F = dim A = dim F* = dim G, perfect pairing, natural"),
        RegisteredCheck("annihilator-dual-formula", check_annihilator_dual_formula,
                        ("M0 phi", "M0 psi", "M1 phi", "M1 psi"),
                        description="ann(phi(M)) = (D phi)(M*) as subspaces"),
        RegisteredCheck("d-duality", check_d_duality, ("dF(M0*)", "dF(M1*)"),
                        description="dF_(phi/psi) = F_(D psi/D phi) on right modules"),
        RegisteredCheck("hom-tensor", check_hom_tensor, ("(M,N*)", "(N(x)M)*", "(N,M*)"),
                        description="(M, N*) = (N (x) M)* = (N, M*), natural"),
        RegisteredCheck("sigma-iso", check_sigma_iso, ("M*(x)N", "(N,M)", "rank"),
                        description="sigma: M* (x) N -> (N, M)* is a natural isomorphism"),
        RegisteredCheck("double-dual", check_double_dual, ("dim M0", "dim M1"),
                        description="eta: M -> M** is a natural isomorphism"),
        RegisteredCheck("ext-shift", check_ext_shift, ("E1(M,A)", "E2(M,A)", "E3(M,A)", "E1(M,L*)", "E2(M,L*)"),
                        _homological_instance, "Ext^(n+1)(M, A) = Ext^n(M, L*) for 0 -> A -> P* -> L* -> 0"),
        RegisteredCheck("projective-over-epi", check_projective_over_epi, ("epis", "zeros", "proj M0", "proj M1"),
                        _homological_instance, "G_f(P) = 0 for projective P and epi f"),
        RegisteredCheck("stable-hom-sequence", check_stable_hom_sequence, ("(M0,M1)", "(M1,M0)"),
                        _homological_instance, "coker(M^t (x) N -> (M, N)) = projectively stable Hom"),
        RegisteredCheck("ar-formula", check_ar_formula, ("dim N", "dim tauN", "#M", "sum Ext1", "sum inj", "sum proj"),
                        _ar_instance, "Ext^1(N, M) = injectively stable Hom(M, tau N)"),
        RegisteredCheck("zero-kernel", check_zero_kernel, ("F(M0)=0", "F(M1)=0"),
                        description="F(M) = 0 iff A(M) = 0"),
        RegisteredCheck("dual-involution", check_dual_involution, ("formulas", "implications"),
                        description="DD phi = phi on modules; D reverses implication"),
        RegisteredCheck("presentation-bridge", check_presentation_bridge, ("F(M0)", "F(M1)"),
                        description="coker((B,M) -> (A,M)) = phi(M)/psi(M), naturally"),
    ]
}


def check_names() -> list[str]:
    return list(REGISTRY)


def _describe(inst: Instance) -> dict:
    try:
        return inst.to_dict()
    except Exception as exc:  # the counterexample itself must never hide the failure
        return {"instance": inst.index, "serialization_error": str(exc)}


def run_check(spec: CheckSpec, context: Context | None = None) -> CheckReport:
    if spec.name not in REGISTRY:
        raise UnknownCheck(spec.name)
    chk = REGISTRY[spec.name]
    ctx = context or Context()
    report = CheckReport(spec.name, spec.seed, spec.sizes, chk.columns)
    for i in range(spec.sizes.instances):
        try:
            inst = chk.instances(spec.seed, spec.sizes, i)
        except GenerationError as exc:
            report.failures.append({"instance": i, "message": f"instance generation failed: {exc}"})
            report.instances_run += 1
            continue
        try:
            row = chk.run(inst, ctx)
        except (CheckFailed, NotAPair, ModuleError, ValueError, AssertionError) as exc:
            failure = _describe(inst)
            failure["message"] = f"{type(exc).__name__}: {exc}"
            report.failures.append(failure)
            row = ("-",)
        report.instances_run += 1
        report.dims_table.append((i, inst.algebra_name) + tuple(row))
    return report


def run_all(seed: int = 0, sizes: Sizes = Sizes(), names=None) -> list[CheckReport]:
    return [run_check(CheckSpec(n, seed, sizes)) for n in (names or check_names())]


def reports_json(reports: list[CheckReport]) -> str:
    body = {"passed": all(r.passed for r in reports), "checks": [r.to_dict() for r in reports]}
    return json.dumps(body, sort_keys=True, indent=2) + "\n"


def reports_text(reports: list[CheckReport]) -> str:
    parts = [r.to_text() for r in reports]
    ok = sum(r.passed for r in reports)
    parts.append(f"{ok}/{len(reports)} checks passed\n")
    return "\n".join(parts)


def corrupted_dual_formula(phi: PpFormula) -> PpFormula:
    """A wrong D that forgets the ``y B = 0`` equations (mutation-test fixture)."""
    d = dual_formula(phi)
    keep = d.A.shape[0] - phi.m
    return PpFormula(d.algebra, d.side, d.A[:keep], d.B[:keep])


__all__ = [
    "Sizes",
    "CheckSpec",
    "CheckReport",
    "Instance",
    "Context",
    "GenerationError",
    "UnknownCheck",
    "REGISTRY",
    "algebra_family",
    "check_names",
    "corrupted_dual_formula",
    "gen_random_instance",
    "random_element",
    "random_formula",
    "random_module",
    "random_pair",
    "reports_json",
    "reports_text",
    "run_all",
    "run_check",
    "sample_maps",
]
