"""Certification of Temperley-Lieb and Birman-Murakami-Wenzl relations.

Two independent certification routes are provided for each relation
family: a scalar route evaluating the gauge-invariant F/Fbar (and R)
products that control the relation, and a matrix route multiplying the
actual sparse operators on a fusion-path basis.  Reports carry both the
constants and the worst residual found.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

from .errors import PreconditionError, StructuralError
from .system import (
    TOL_RELATION,
    BraidedTensorSystem,
    TensorSystem,
    one_dim_profile,
)
from .paths import (
    ChainSpec,
    PathBasis,
    SparseOperator,
    braid_operator,
    enumerate_basis,
    operator_residual,
    projector,
)

__all__ = ["RelationReport", "TLCertificate", "BMWCertificate",
           "tl_condition", "verify_projector_identity", "best_fit_constant",
           "onedim_tl_constant", "build_tl_chain", "check_homogeneity",
           "channel_sum", "hexagon_variant_scalars",
           "variant_agreement_residual", "bmw_mixed_relations",
           "build_bmw", "check_skein", "principal_sqrt"]


@dataclass
class RelationReport:
    relation: str
    satisfied: bool
    residual: float
    constants: dict = field(default_factory=dict)
    notes: str = ""
    vacuous: bool = False

    def __bool__(self):
        return self.satisfied


@dataclass
class TLCertificate:
    direction: str
    site: int
    nu: str
    nu_prime: str
    condition_set: tuple
    constant: complex | None
    singleton: bool
    vacuous: bool = False
    matrix_residual: float | None = None
    notes: str = ""


@dataclass
class BMWCertificate:
    lam: str
    nu: str
    d: complex
    g_candidates: tuple
    relation_residuals: dict              # g -> {family: residual}
    proof_identity_residual: float
    channel_sum: complex = 0j
    scalar_modulus_residual: float = 0.0  # | |channel sum| - 1/d |
    twists: dict = field(default_factory=dict)  # g -> twist eigenvalue 1/(g R_nu)
    skein_m: complex | None = None
    skein_ok: bool = False
    notes: str = ""

    def passing_roots(self, tol: float = TOL_RELATION):
        return tuple(g for g, fams in self.relation_residuals.items()
                     if max(fams.values()) <= tol)


def principal_sqrt(z: complex) -> complex:
    """Square root with argument in (-pi/2, pi/2]."""
    root = cmath.sqrt(z)
    if root.real < 0 or (root.real == 0 and root.imag < 0):
        root = -root
    return root


def _reachable(sys: TensorSystem, seeds, prefix) -> set[str]:
    """Labels reachable by fusing a seed through the prefix sequence."""
    current = {sys.require_label(s) for s in seeds}
    for lam in prefix:
        lam = sys.require_label(lam)
        current = {c for x in current for c in sys.rules.outcomes(x, lam)}
    return current


def _cluster(values, tol):
    """Group scalars into clusters of pairwise distance <= tol."""
    clusters: list[list[complex]] = []
    for v in values:
        for cl in clusters:
            if abs(v - cl[0]) <= tol:
                cl.append(v)
                break
        else:
            clusters.append([v])
    return clusters


def tl_condition(sys: TensorSystem, lambdas, i: int, nu: str, nu_prime: str,
                 seeds=None, direction: str = "next",
                 tol: float = TOL_RELATION) -> TLCertificate:
    """Scalar condition controlling p_i p_{i±1} p_i = c p_i.

    Collects, over every fusion channel reachable from the seeds, the
    gauge-invariant product of one F and one Fbar entry; a singleton value
    set (after tolerance clustering) certifies the constant c.
    """
    lambdas = tuple(sys.require_label(x) for x in lambdas)
    L = len(lambdas)
    if L == 0:
        raise StructuralError("chain labels must be nonempty")
    nu = sys.require_label(nu)
    nu_prime = sys.require_label(nu_prime)
    if seeds is None:
        seeds = sys.labels
    if direction == "next":
        if not 1 <= i <= L - 2:
            raise StructuralError(f"site {i} out of range 1..{L - 2} for next direction")
        prefix = lambdas[:i - 1]
        a, b, c3 = lambdas[i - 1], lambdas[i], lambdas[i + 1]

        def channels(u2s):
            for u1 in sys.rules.outcomes(nu, c3):
                if any(sys.rules.outcomes(u2, u1) for u2 in u2s):
                    yield u1

        def product(u1):
            return (sys.f_entry(a, b, c3, u1, nu, nu_prime)
                    * sys.fbar_entry(a, b, c3, u1, nu_prime, nu))
        gate = sys.n(a, b, nu)
    elif direction == "prev":
        if not 2 <= i <= L - 1:
            raise StructuralError(f"site {i} out of range 2..{L - 1} for prev direction")
        prefix = lambdas[:i - 2]
        a, b, c3 = lambdas[i - 2], lambdas[i - 1], lambdas[i]

        def channels(u2s):
            for u1 in sys.rules.outcomes(a, nu):
                if any(sys.rules.outcomes(u2, u1) for u2 in u2s):
                    yield u1

        def product(u1):
            return (sys.fbar_entry(a, b, c3, u1, nu, nu_prime)
                    * sys.f_entry(a, b, c3, u1, nu_prime, nu))
        gate = sys.n(b, c3, nu)
    else:
        raise StructuralError("direction must be 'next' or 'prev'")

    if gate == 0:
        return TLCertificate(direction, i, nu, nu_prime, (), None, False,
                             vacuous=True,
                             notes="projector channel not admissible; condition vacuous")
    u2s = _reachable(sys, seeds, prefix)
    values = tuple(product(u1) for u1 in channels(u2s))
    if not values:
        return TLCertificate(direction, i, nu, nu_prime, (), None, False,
                             vacuous=True, notes="no reachable channel; condition vacuous")
    clusters = _cluster(values, tol)
    singleton = len(clusters) == 1
    constant = values[0] if singleton else None
    notes = ""
    if singleton and abs(constant.imag) > tol:
        notes = f"constant has imaginary part {constant.imag:.3e} beyond tol"
    return TLCertificate(direction, i, nu, nu_prime, values, constant,
                         singleton, notes=notes)


def verify_projector_identity(sys: TensorSystem, basis: PathBasis, i: int,
                              j: int, nu: str, nu_prime: str, c: complex,
                              tol: float = TOL_RELATION) -> RelationReport:
    """Matrix check of p_i^{(ν)} p_j^{(ν')} p_i^{(ν)} = c p_i^{(ν)}."""
    if abs(i - j) != 1:
        raise StructuralError("sites must be adjacent (|i-j| = 1)")
    if basis.dimension == 0:
        return RelationReport("projector-identity", True, 0.0, {"c": c},
                              "vacuously satisfied on empty basis", vacuous=True)
    pi = projector(sys, basis, i, nu)
    pj = projector(sys, basis, j, nu_prime)
    res = operator_residual(pi @ pj @ pi, c * pi)
    return RelationReport("projector-identity", res <= tol, res, {"c": c})


def best_fit_constant(sys: TensorSystem, basis: PathBasis, i: int, j: int,
                      nu: str, nu_prime: str) -> complex | None:
    """Least-squares c minimizing || p_i p_j p_i - c p_i ||_F, or None if p_i = 0."""
    pi = projector(sys, basis, i, nu)
    pj = projector(sys, basis, j, nu_prime)
    prod = pi @ pj @ pi
    denom = sum(abs(v) ** 2 for v in pi.entries.values())
    if denom == 0:
        return None
    num = sum(prod.entries.get(k, 0) * v.conjugate() for k, v in pi.entries.items())
    return num / denom


def onedim_tl_constant(sys: TensorSystem, lambdas, i: int, nu: str,
                       nu_prime: str, direction: str = "next") -> complex:
    """Closed-form constant when ν fuses simply with the outer chain label."""
    lambdas = tuple(sys.require_label(x) for x in lambdas)
    L = len(lambdas)
    nu = sys.require_label(nu)
    nu_prime = sys.require_label(nu_prime)
    profile = one_dim_profile(sys, nu)
    if direction == "next":
        if not 1 <= i <= L - 2:
            raise StructuralError(f"site {i} out of range for next direction")
        target = lambdas[i + 1]
        if target not in profile.left_set:
            raise PreconditionError(
                f"{nu} x {target} is not simple; closed-form constant undefined")
        phi = profile.phi_left[target]
        a, b, c3 = lambdas[i - 1], lambdas[i], lambdas[i + 1]
        return (sys.f_entry(a, b, c3, phi, nu, nu_prime)
                * sys.fbar_entry(a, b, c3, phi, nu_prime, nu))
    if direction == "prev":
        if not 2 <= i <= L - 1:
            raise StructuralError(f"site {i} out of range for prev direction")
        target = lambdas[i - 2]
        if target not in profile.right_set:
            raise PreconditionError(
                f"{target} x {nu} is not simple; closed-form constant undefined")
        phi = profile.phi_right[target]
        a, b, c3 = lambdas[i - 2], lambdas[i - 1], lambdas[i]
        return (sys.f_entry(a, b, c3, phi, nu_prime, nu)
                * sys.fbar_entry(a, b, c3, phi, nu, nu_prime))
    raise StructuralError("direction must be 'next' or 'prev'")


def _tl_scalar(sys: TensorSystem, lam: str, nu: str) -> complex:
    """The product (F^{λλλ}_{φ_ν(λ)})^ν_ν (Fbar^{λλλ}_{φ_ν(λ)})^ν_ν."""
    profile = one_dim_profile(sys, nu)
    if lam not in profile.left_set:
        raise PreconditionError(f"{nu} x {lam} is not simple")
    phi = profile.phi_left[lam]
    return (sys.f_entry(lam, lam, lam, phi, nu, nu)
            * sys.fbar_entry(lam, lam, lam, phi, nu, nu))


def build_tl_chain(sys: TensorSystem, lam: str, nu: str, L: int,
                   seeds=None, tol: float = TOL_RELATION):
    """Scaled projectors U_i = d p_i^{(ν)} on the homogeneous λ-chain.

    Returns (d, generators) with d the principal root of the inverse
    squared channel product; the generators satisfy the Temperley-Lieb
    relations whenever the scalar preconditions hold.
    """
    lam = sys.require_label(lam)
    nu = sys.require_label(nu)
    if L < 2:
        raise StructuralError("chain length must be at least 2")
    if not sys.n(lam, lam, nu):
        raise PreconditionError(f"{nu} is not a fusion channel of {lam} x {lam}")
    rhs = _tl_scalar(sys, lam, nu)
    if abs(rhs) <= tol:
        raise PreconditionError(
            f"degenerate channel product {abs(rhs):.3e}; no finite scaling exists")
    d = principal_sqrt(1 / rhs)
    if seeds is None:
        seeds = sys.labels
    basis = enumerate_basis(sys, ChainSpec((lam,) * L, frozenset(seeds)))
    gens = [d * projector(sys, basis, i, nu) for i in range(1, L)]
    return d, gens


def check_homogeneity(sys: TensorSystem, lambdas, nus, seeds=None,
                      tol: float = TOL_RELATION) -> RelationReport:
    """All per-bond constants coincide when every channel label is one-dimensional."""
    lambdas = tuple(sys.require_label(x) for x in lambdas)
    nus = tuple(sys.require_label(x) for x in nus)
    L = len(lambdas)
    if len(nus) != L - 1:
        raise StructuralError(f"need one channel label per bond ({L - 1}), got {len(nus)}")
    profiles = {}
    for nu in nus:
        if nu not in profiles:
            profiles[nu] = one_dim_profile(sys, nu)
        if not profiles[nu].is_one_dimensional:
            raise PreconditionError(f"{nu} is not one-dimensional")
    if seeds is None:
        seeds = sys.labels
    basis = enumerate_basis(sys, ChainSpec(lambdas, frozenset(seeds)))
    for i, nu in enumerate(nus, start=1):
        if not projector(sys, basis, i, nu).entries:
            raise PreconditionError(f"projector at bond {i} onto {nu} is zero")
    if L < 3:
        return RelationReport("homogeneity", True, 0.0, {},
                              "single bond; nothing to compare", vacuous=True)
    cs = {}
    for i in range(1, L - 1):
        phi = profiles[nus[i]].phi_left[lambdas[i + 1]]
        cs[i] = (sys.f_entry(lambdas[i - 1], lambdas[i], lambdas[i + 1], phi,
                             nus[i - 1], nus[i])
                 * sys.fbar_entry(lambdas[i - 1], lambdas[i], lambdas[i + 1], phi,
                                  nus[i], nus[i - 1]))
    vals = list(cs.values())
    spread = max(abs(v - vals[0]) for v in vals)
    return RelationReport("homogeneity", spread <= tol, spread,
                          {f"c_{i}": v for i, v in cs.items()})


# ---------------------------------------------------------------------------
# Braided relation families

def channel_sum(bsys: BraidedTensorSystem, lam: str, nu: str,
                 inverse: bool = False) -> complex:
    """The bracketed channel sum weighting p R_{i±1} p (Rbar when inverse)."""
    sys = bsys.base
    lam = sys.require_label(lam)
    nu = sys.require_label(nu)
    profile = one_dim_profile(sys, nu)
    if lam not in profile.left_set:
        raise PreconditionError(f"{nu} x {lam} is not simple")
    phi = profile.phi_left[lam]
    table = bsys.rbar if inverse else bsys.r
    return sum(sys.f_entry(lam, lam, lam, phi, u, nu)
               * table.get((lam, lam, u), 0j)
               * sys.fbar_entry(lam, lam, lam, phi, nu, u)
               for u in sys.rules.outcomes(lam, lam))


def hexagon_variant_scalars(bsys: BraidedTensorSystem, lam: str, nu: str
                            ) -> tuple[tuple[complex, ...], tuple[complex, ...]]:
    """Single-braiding rewritings of the channel sum and of its inverse partner.

    Returns two groups: (sum, rewriting 1, rewriting 4) for the direct
    channel sum and (inverse sum, rewriting 2, rewriting 3) for the
    inverse-braiding channel sum.  Each group agrees internally on any
    system whose braiding satisfies the hexagon coherence; the two groups
    coincide with each other exactly when the channel sum is real.
    """
    sys = bsys.base
    lam = sys.require_label(lam)
    nu = sys.require_label(nu)
    profile = one_dim_profile(sys, nu)
    if lam not in profile.left_set:
        raise PreconditionError(f"{nu} x {lam} is not simple")
    phi = profile.phi_left[lam]
    s0 = channel_sum(bsys, lam, nu)
    s0_inv = channel_sum(bsys, lam, nu, inverse=True)
    f_nn = sys.f_entry(lam, lam, lam, phi, nu, nu)
    g_nn = sys.fbar_entry(lam, lam, lam, phi, nu, nu)
    v1 = bsys.r_entry(nu, lam, phi) * f_nn * bsys.rbar_entry(lam, lam, nu)
    v2 = bsys.r_entry(lam, lam, nu) * g_nn * bsys.rbar_entry(lam, nu, phi)
    v3 = bsys.rbar_entry(nu, lam, phi) * f_nn * bsys.r_entry(lam, lam, nu)
    v4 = bsys.rbar_entry(lam, lam, nu) * g_nn * bsys.r_entry(lam, nu, phi)
    return (s0, v1, v4), (s0_inv, v2, v3)


def variant_agreement_residual(bsys: BraidedTensorSystem, lam: str, nu: str
                               ) -> float:
    """Worst pairwise disagreement within each rewriting group."""
    direct, inverse = hexagon_variant_scalars(bsys, lam, nu)
    return max(abs(x - y)
               for group in (direct, inverse) for x in group for y in group)


def _braid_family_residuals(bsys, basis, projs, braids, braids_inv, lam, nu,
                            c, s, sbar):
    """Residuals of the six mixed projector/braid relation families."""
    sys = bsys.base
    L = basis.spec.length
    r_nu = bsys.r_entry(lam, lam, nu)
    rb_nu = bsys.rbar_entry(lam, lam, nu)
    res = {k: 0.0 for k in ("eigen", "eigen-inv", "sandwich", "sandwich-inv",
                            "double", "double-inv")}
    for i in range(1, L):
        p, R, Rinv = projs[i], braids[i], braids_inv[i]
        res["eigen"] = max(res["eigen"],
                           operator_residual(R @ p, r_nu * p),
                           operator_residual(p @ R, r_nu * p))
        res["eigen-inv"] = max(res["eigen-inv"],
                               operator_residual(Rinv @ p, rb_nu * p),
                               operator_residual(p @ Rinv, rb_nu * p))
        for j in (i - 1, i + 1):
            if not 1 <= j <= L - 1:
                continue
            q, Rj, Rjinv = projs[j], braids[j], braids_inv[j]
            res["sandwich"] = max(res["sandwich"],
                                  operator_residual(p @ Rj @ p, s * p))
            res["sandwich-inv"] = max(res["sandwich-inv"],
                                      operator_residual(p @ Rjinv @ p, sbar * p))
            qp = q @ p
            res["double"] = max(
                res["double"],
                operator_residual(R @ Rj @ p, q @ R @ Rj),
                operator_residual(R @ Rj @ p, (r_nu * s / c) * qp))
            res["double-inv"] = max(
                res["double-inv"],
                operator_residual(Rinv @ Rjinv @ p, q @ Rinv @ Rjinv),
                operator_residual(Rinv @ Rjinv @ p, (rb_nu * sbar / c) * qp))
    return res


def bmw_mixed_relations(bsys: BraidedTensorSystem, lam: str, nu: str,
                        L: int = 4, seeds=None,
                        tol: float = TOL_RELATION) -> RelationReport:
    """Verify the six mixed projector/braid families and the channel-sum rewritings."""
    sys = bsys.base
    lam = sys.require_label(lam)
    nu = sys.require_label(nu)
    c = _tl_scalar(sys, lam, nu)
    if abs(c) <= tol:
        raise PreconditionError("degenerate channel product; relations undefined")
    s = channel_sum(bsys, lam, nu)
    sbar = channel_sum(bsys, lam, nu, inverse=True)
    var_res = variant_agreement_residual(bsys, lam, nu)
    if seeds is None:
        seeds = sys.labels
    basis = enumerate_basis(sys, ChainSpec((lam,) * L, frozenset(seeds)))
    projs = {i: projector(sys, basis, i, nu) for i in range(1, L)}
    braids = {i: braid_operator(bsys, basis, i) for i in range(1, L)}
    braids_inv = {i: braid_operator(bsys, basis, i, inverse=True)
                  for i in range(1, L)}
    res = _braid_family_residuals(bsys, basis, projs, braids, braids_inv,
                                  lam, nu, c, s, sbar)
    res["variant-agreement"] = var_res
    worst = max(res.values())
    return RelationReport("mixed-projector-braid", worst <= tol, worst,
                          dict(res, c=c, channel_sum=s, channel_sum_inv=sbar))


def build_bmw(bsys: BraidedTensorSystem, lam: str, nu: str, L: int = 4,
              seeds=None, tol: float = TOL_RELATION) -> BMWCertificate:
    """Certify the scaled braid/projector pair against the tangle-algebra relations.

    Scaling conventions: d is the principal root of the inverse TL channel
    product, so d^{-2} equals the diagonal F/Fbar product exactly and
    d^{-1} equals the modulus of the channel sum.  The braid scaling g
    solves g^{-2} = d * S * R^{λλ}_ν with S the channel sum; when S is
    real this reduces to g^{-2} = R^{λλ}_ν.  Both roots are tried and the
    twist eigenvalue l = 1/(g R^{λλ}_ν) (which equals g^{-1} for real S)
    is recorded per root.  Residuals of all nine relation families are
    reported per root.
    """
    sys = bsys.base
    lam = sys.require_label(lam)
    nu = sys.require_label(nu)
    s = channel_sum(bsys, lam, nu)
    sbar = channel_sum(bsys, lam, nu, inverse=True)
    if abs(s) <= tol:
        raise PreconditionError("degenerate channel sum; no finite d exists")
    c = _tl_scalar(sys, lam, nu)
    if abs(c) <= tol:
        raise PreconditionError("degenerate channel product; no finite d exists")
    d = principal_sqrt(1 / c)
    proof_res = abs(s * sbar - c)
    modulus_res = abs(abs(s) - abs(1 / d))
    r_nu = bsys.r_entry(lam, lam, nu)
    if r_nu == 0:
        raise PreconditionError(f"missing braiding scalar for ({lam},{lam})->{nu}")
    g0 = principal_sqrt(1 / (d * s * r_nu))
    g_candidates = (g0, -g0)
    twists = {g: 1 / (g * r_nu) for g in g_candidates}
    if seeds is None:
        seeds = sys.labels
    basis = enumerate_basis(sys, ChainSpec((lam,) * L, frozenset(seeds)))
    projs = {i: projector(sys, basis, i, nu) for i in range(1, L)}
    braids = {i: braid_operator(bsys, basis, i) for i in range(1, L)}
    braids_inv = {i: braid_operator(bsys, basis, i, inverse=True)
                  for i in range(1, L)}
    all_res = {}
    for g in g_candidates:
        twist = twists[g]
        U = {i: d * projs[i] for i in range(1, L)}
        G = {i: g * braids[i] for i in range(1, L)}
        Ginv = {i: (1 / g) * braids_inv[i] for i in range(1, L)}
        fam = {k: 0.0 for k in ("braid", "tl", "mixed-double", "mixed-conj",
                                "mixed-sandwich", "gu-eigen", "u-square",
                                "far-braid", "far-tl")}
        for i in range(1, L - 1):
            fam["braid"] = max(fam["braid"], operator_residual(
                G[i] @ G[i + 1] @ G[i], G[i + 1] @ G[i] @ G[i + 1]))
        for i in range(1, L):
            for j in (i - 1, i + 1):
                if not 1 <= j <= L - 1:
                    continue
                fam["tl"] = max(fam["tl"], operator_residual(
                    U[i] @ U[j] @ U[i], U[i]))
                fam["mixed-double"] = max(
                    fam["mixed-double"],
                    operator_residual(G[i] @ G[j] @ U[i], U[j] @ G[i] @ G[j]),
                    operator_residual(G[i] @ G[j] @ U[i], U[j] @ U[i]))
                fam["mixed-conj"] = max(fam["mixed-conj"], operator_residual(
                    G[j] @ U[i] @ G[j], Ginv[i] @ U[j] @ Ginv[i]))
                fam["mixed-sandwich"] = max(fam["mixed-sandwich"],
                                            operator_residual(
                                                U[i] @ G[j] @ U[i], twist * U[i]))
            fam["gu-eigen"] = max(
                fam["gu-eigen"],
                operator_residual(G[i] @ U[i], (1 / twist) * U[i]),
                operator_residual(U[i] @ G[i], (1 / twist) * U[i]))
            fam["u-square"] = max(fam["u-square"],
                                  operator_residual(U[i] @ U[i], d * U[i]))
        for i in range(1, L):
            for j in range(i + 2, L):
                fam["far-braid"] = max(fam["far-braid"], operator_residual(
                    G[i] @ G[j], G[j] @ G[i]))
                fam["far-tl"] = max(fam["far-tl"], operator_residual(
                    U[i] @ U[j], U[j] @ U[i]))
        all_res[g] = fam
    return BMWCertificate(lam, nu, d, g_candidates, all_res, proof_res,
                          channel_sum=s, scalar_modulus_residual=modulus_res,
                          twists=twists)


def check_skein(bsys: BraidedTensorSystem, lam: str, nu: str, d: complex,
                g: complex, L: int = 3, seeds=None,
                tol: float = TOL_RELATION):
    """Eigenvalue form and matrix form of G - G^{-1} = m(I - U), cross-checked.

    Returns (m, report); m is None when the eigenvalue conditions fail.
    Disagreement between the two routes is flagged as an internal
    consistency failure.
    """
    sys = bsys.base
    lam = sys.require_label(lam)
    nu = sys.require_label(nu)
    if abs(1 - d) <= tol:
        raise PreconditionError("d = 1 makes the skein parameter undefined")
    r_nu = bsys.r_entry(lam, lam, nu)
    if r_nu == 0:
        raise PreconditionError(f"missing braiding scalar for ({lam},{lam})->{nu}")
    # twist eigenvalue of the scaled braid on the projected channel;
    # equals g^{-1} whenever the channel sum is real
    twist = 1 / (g * r_nu)
    m = (1 / twist - twist) / (1 - d)
    scalar_res = 0.0
    for u in sys.rules.outcomes(lam, lam):
        if u == nu:
            continue
        ev = g * bsys.r_entry(lam, lam, u)
        scalar_res = max(scalar_res, abs(ev - 1 / ev - m))
    scalar_ok = scalar_res <= tol

    if seeds is None:
        seeds = sys.labels
    basis = enumerate_basis(sys, ChainSpec((lam,) * L, frozenset(seeds)))
    matrix_res = 0.0
    ident = SparseOperator.identity(basis)
    for i in range(1, L):
        U = d * projector(sys, basis, i, nu)
        G = g * braid_operator(bsys, basis, i)
        Ginv = (1 / g) * braid_operator(bsys, basis, i, inverse=True)
        matrix_res = max(matrix_res,
                         operator_residual(G - Ginv, m * (ident - U)))
    matrix_ok = matrix_res <= tol

    consistent = scalar_ok == matrix_ok
    notes = "" if consistent else (
        "internal consistency failure: eigenvalue route and matrix route disagree")
    report = RelationReport("skein", scalar_ok and matrix_ok and consistent,
                            max(scalar_res, matrix_res),
                            {"m": m, "scalar_residual": scalar_res,
                             "matrix_residual": matrix_res}, notes)
    return (m if report.satisfied else None), report
