"""Built-in tensor systems.

Available entries (``get_system`` accepts the bare name or ``name(arg)``):

- ``su2k(k)``   level-k quantum spin systems; labels are the spins
  "0", "1/2", ..., "k/2".  Braided.
- ``fibonacci`` two labels "1", "τ" with τ x τ = 1 + τ.  Braided.
- ``ising``     three labels "1", "σ", "ψ".  Braided.
- ``cyclic(n)`` group ring of Z_n with trivial associator and braiding.
- ``fib_x_fib`` direct product of two Fibonacci systems.  Braided.
- ``golden_rules`` the Fibonacci fusion rules alone, with no associator
  data attached; requesting F entries raises UnsupportedError.
"""

from __future__ import annotations

import cmath
import math
import re
from functools import lru_cache

from .errors import StructuralError, UnsupportedError
from .system import (
    BraidedTensorSystem,
    FusionRules,
    TensorSystem,
    complete_fbar,
    direct_product,
)

__all__ = ["CATALOG_NAMES", "catalog_names", "get_system", "su2k_system",
           "fibonacci_system", "ising_system", "cyclic_system",
           "fib_x_fib_system", "golden_rules_system"]


# ---------------------------------------------------------------------------
# Level-k quantum spin data via q-deformed recoupling coefficients.
# Labels are jj = 2*j (twice the spin), admissible triples satisfy the
# triangle rule with the level truncation jj1+jj2+jj3 <= 2k.

def _q(k: int) -> complex:
    return cmath.exp(2j * cmath.pi / (k + 2))


def _n_q(n: int, k: int) -> complex:
    q = _q(k)
    return (q ** (n / 2) - q ** (-n / 2)) / (q ** 0.5 - q ** -0.5)


def _n_q_fac(n: int, k: int) -> complex:
    out = 1.0 + 0j
    for m in range(2, n + 1):
        out *= _n_q(m, k)
    return out


def _admissible(k, jj1, jj2, jj3) -> bool:
    return (abs(jj1 - jj2) <= jj3 <= min(jj1 + jj2, 2 * k - jj1 - jj2)
            and (jj1 + jj2 + jj3) % 2 == 0)


def _delta(k, jj1, jj2, jj3) -> complex:
    num = (_n_q_fac((-jj1 + jj2 + jj3) // 2, k)
           * _n_q_fac((jj1 - jj2 + jj3) // 2, k)
           * _n_q_fac((jj1 + jj2 - jj3) // 2, k))
    den = _n_q_fac((jj1 + jj2 + jj3) // 2 + 1, k)
    return cmath.sqrt(num / den)


def _six_j(k, jj1, jj2, jj12, jj3, jj, jj23) -> complex:
    """q-deformed recoupling symbol {jj1 jj2 jj12; jj3 jj jj23} (doubled spins)."""
    for tri in ((jj1, jj2, jj12), (jj1, jj, jj23), (jj3, jj2, jj23), (jj3, jj, jj12)):
        if not _admissible(k, *tri):
            return 0j
    pre = (_delta(k, jj1, jj2, jj12) * _delta(k, jj1, jj, jj23)
           * _delta(k, jj3, jj2, jj23) * _delta(k, jj3, jj, jj12))
    sums = [(jj1 + jj2 + jj12) // 2, (jj1 + jj + jj23) // 2,
            (jj3 + jj2 + jj23) // 2, (jj3 + jj + jj12) // 2]
    crossings = [(jj1 + jj2 + jj3 + jj) // 2, (jj1 + jj3 + jj12 + jj23) // 2,
                 (jj2 + jj + jj12 + jj23) // 2]
    total = 0j
    for z in range(max(sums), min(crossings) + 1):
        den = _n_q_fac(crossings[0] - z, k) * _n_q_fac(crossings[1] - z, k) \
            * _n_q_fac(crossings[2] - z, k)
        for s in sums:
            den *= _n_q_fac(z - s, k)
        total += (-1) ** z * _n_q_fac(z + 1, k) / den
    return pre * total


def _spin_label(jj: int) -> str:
    return str(jj // 2) if jj % 2 == 0 else f"{jj}/2"


@lru_cache(maxsize=None)
def su2k_system(k: int) -> BraidedTensorSystem:
    """Braided level-k spin system on labels "0", "1/2", ..., "k/2"."""
    if k < 1:
        raise StructuralError("level k must be a positive integer")
    jjs = list(range(k + 1))
    lab = {jj: _spin_label(jj) for jj in jjs}
    triples = [(lab[a], lab[b], lab[c])
               for a in jjs for b in jjs for c in jjs if _admissible(k, a, b, c)]
    rules = FusionRules(triples)

    f = {}
    for a in jjs:
        for b in jjs:
            for c in jjs:
                for d in jjs:
                    for e in jjs:  # channel of a x b
                        if not (_admissible(k, a, b, e) and _admissible(k, e, c, d)):
                            continue
                        for f_ in jjs:  # channel of b x c
                            if not (_admissible(k, b, c, f_) and _admissible(k, a, f_, d)):
                                continue
                            val = ((-1) ** ((a + b + c + d) // 2)
                                   * cmath.sqrt(_n_q(e + 1, k) * _n_q(f_ + 1, k))
                                   * _six_j(k, a, b, e, c, d, f_))
                            if abs(val) > 1e-14:
                                f[(lab[a], lab[b], lab[c], lab[d], lab[e], lab[f_])] = val

    q = _q(k)
    r, rbar = {}, {}
    for a in jjs:
        for b in jjs:
            for c in jjs:
                if not _admissible(k, a, b, c):
                    continue
                val = ((-1) ** ((c - a - b) // 2)
                       * q ** ((c * (c + 2) - a * (a + 2) - b * (b + 2)) / 8))
                r[(lab[a], lab[b], lab[c])] = val
                rbar[(lab[b], lab[a], lab[c])] = 1 / val

    aliases = {f"{jj / 2:g}": lab[jj] for jj in jjs if jj % 2 == 1}
    base = TensorSystem([lab[jj] for jj in jjs], rules, f,
                        identity=lab[0], dual={lab[jj]: lab[jj] for jj in jjs},
                        name=f"su2k({k})", aliases=aliases)
    base = complete_fbar(base)
    base.validated = False
    return BraidedTensorSystem(base, r, rbar)


def _relabel(bsys: BraidedTensorSystem, mapping: dict[str, str], name: str,
             aliases: dict[str, str] | None = None,
             keep: set[str] | None = None) -> BraidedTensorSystem:
    """Rename labels (optionally restricting to a closed subsector)."""
    old = bsys.base
    source = set(mapping)
    if keep is not None:
        source = keep

    def m(x):
        return mapping[x]

    labels = [m(x) for x in old.labels if x in source]
    triples = [(m(a), m(b), m(c)) for (a, b, c) in old.rules.triples
               if {a, b, c} <= source]
    f = {tuple(m(x) for x in key): v for key, v in old.f.items()
         if set(key) <= source}
    fbar = {tuple(m(x) for x in key): v for key, v in old.fbar.items()
            if set(key) <= source}
    base = TensorSystem(labels, FusionRules(triples), f, fbar,
                        identity=m(old.identity),
                        dual={m(a): m(b) for a, b in old.dual.items() if a in source},
                        name=name, aliases=aliases)
    r = {tuple(m(x) for x in key): v for key, v in bsys.r.items()
         if set(key) <= source}
    rbar = {tuple(m(x) for x in key): v for key, v in bsys.rbar.items()
            if set(key) <= source}
    return BraidedTensorSystem(base, r, rbar)


@lru_cache(maxsize=None)
def fibonacci_system() -> BraidedTensorSystem:
    """Two labels "1" and "τ" with τ x τ = 1 + τ (integer-spin subsector of su2k(3))."""
    return _relabel(su2k_system(3), {"0": "1", "1": "τ"}, "fibonacci",
                    aliases={"tau": "τ", "I": "1", "id": "1"})


@lru_cache(maxsize=None)
def ising_system() -> BraidedTensorSystem:
    """Three labels "1", "σ", "ψ" with σ x σ = 1 + ψ (relabeled su2k(2))."""
    return _relabel(su2k_system(2), {"0": "1", "1/2": "σ", "1": "ψ"}, "ising",
                    aliases={"sigma": "σ", "psi": "ψ", "I": "1", "id": "1"})


@lru_cache(maxsize=None)
def cyclic_system(n: int) -> BraidedTensorSystem:
    """Group ring of Z_n: a x b = (a+b) mod n, trivial F and R."""
    if n < 1:
        raise StructuralError("cyclic order must be a positive integer")
    labels = [str(i) for i in range(n)]
    triples = [(str(a), str(b), str((a + b) % n))
               for a in range(n) for b in range(n)]
    one = 1.0 + 0j
    f, fbar = {}, {}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                e = (a + b) % n
                f_ = (b + c) % n
                d = (a + b + c) % n
                f[(str(a), str(b), str(c), str(d), str(e), str(f_))] = one
                fbar[(str(a), str(b), str(c), str(d), str(f_), str(e))] = one
    base = TensorSystem(labels, FusionRules(triples), f, fbar,
                        identity="0", dual={str(a): str((n - a) % n) for a in range(n)},
                        name=f"cyclic({n})")
    r = {t: one for t in triples}
    rbar = dict(r)
    return BraidedTensorSystem(base, r, rbar)


@lru_cache(maxsize=None)
def fib_x_fib_system() -> BraidedTensorSystem:
    fib = fibonacci_system()
    from .system import validate_braiding, validate_system
    if not fib.base.validated:
        validate_system(fib.base)
        validate_braiding(fib)
    prod = direct_product(fib, fib)
    prod.base.name = "fib_x_fib"
    prod.base.aliases.update({"1": "(1,1)", "tautau": "(τ,τ)"})
    return prod


class RulesOnlySystem(TensorSystem):
    """Fusion rules without associator data; any table access raises."""

    def __init__(self, labels, rules, identity=None, dual=None, name=""):
        super().__init__(labels, rules, {}, None, identity=identity,
                         dual=dual, name=name)

    def f_entry(self, *args):
        raise UnsupportedError(
            f"system {self.name!r} carries fusion rules only; no associator data")

    fbar_entry = f_entry

    def f_block(self, *args):
        raise UnsupportedError(
            f"system {self.name!r} carries fusion rules only; no associator data")


@lru_cache(maxsize=None)
def golden_rules_system() -> RulesOnlySystem:
    """The golden-ratio fusion table on {1, τ} with no associator attached."""
    triples = [("1", "1", "1"), ("1", "τ", "τ"), ("τ", "1", "τ"),
               ("τ", "τ", "1"), ("τ", "τ", "τ")]
    return RulesOnlySystem(["1", "τ"], FusionRules(triples), identity="1",
                           dual={"1": "1", "τ": "τ"}, name="golden_rules")


CATALOG_NAMES = ("fibonacci", "ising", "su2k(k)", "cyclic(n)", "fib_x_fib",
                 "golden_rules")


def catalog_names() -> tuple[str, ...]:
    return CATALOG_NAMES


_PARAM = re.compile(r"^([a-z_0-9]+)\((\d+)\)$")


def get_system(name: str):
    """Look up a catalog entry by name, e.g. ``fibonacci`` or ``su2k(4)``."""
    name = name.strip()
    plain = {
        "fibonacci": fibonacci_system,
        "fib": fibonacci_system,
        "ising": ising_system,
        "fib_x_fib": fib_x_fib_system,
        "golden_rules": golden_rules_system,
    }
    if name in plain:
        return plain[name]()
    m = _PARAM.match(name)
    if m:
        family, arg = m.group(1), int(m.group(2))
        if family == "su2k":
            return su2k_system(arg)
        if family == "cyclic":
            return cyclic_system(arg)
    raise StructuralError(
        f"unknown catalog entry {name!r}; available: {', '.join(CATALOG_NAMES)}")
