"""Generator sets for the named groups GL, AGL, T, Sp, Delta, Sym_0 and Sym."""

from __future__ import annotations

from math import factorial, prod

import numpy as np

from .errors import DegenerateForm
from .forms import BilinForm, standard_form
from .gf2 import MAX_DIM, Vec2, check_dim
from .perm import GenSet, Perm, transposition

GROUP_NAMES = ("gl", "agl", "t", "sp", "delta", "sym0", "sym")


def _check_n(n, lo=2):
    if not isinstance(n, int) or not lo <= n <= MAX_DIM:
        raise ValueError(f"dimension must be in [{lo}, {MAX_DIM}], got {n!r}")


def elementary_transvection(n, i, j):
    """x -> x + x_j e_i (0-based coordinates, i != j)."""
    pts = np.arange(1 << n, dtype=np.int64)
    return Perm(n, pts ^ (((pts >> j) & 1) << i), check=False)


def gl_gens(n: int) -> GenSet:
    _check_n(n)
    gens = [elementary_transvection(n, i, j) for i in range(n) for j in range(n) if i != j]
    return GenSet(gens, name="gl")


def translation(a: Vec2) -> Perm:
    pts = np.arange(1 << a.dim, dtype=np.int64)
    return Perm(a.dim, pts ^ a.bits, check=False)


def t_gens(n: int) -> GenSet:
    check_dim(n)
    return GenSet([translation(Vec2.unit(n, i + 1)) for i in range(n)], name="t")


def agl_gens(n: int) -> GenSet:
    _check_n(n)
    return GenSet(gl_gens(n).gens + (translation(Vec2.unit(n, 1)),), name="agl")


def symplectic_transvection(F: BilinForm, v: int) -> Perm:
    """x -> x + (x . v) v."""
    pts = np.arange(1 << F.dim, dtype=np.int64)
    gv = F.image(v)
    par = np.zeros(pts.size, dtype=np.int64)
    masked = pts & gv
    while masked.any():
        par ^= masked & 1
        masked >>= 1
    return Perm(F.dim, pts ^ (par * v), check=False)


def sp_gens(F: BilinForm) -> GenSet:
    if F.dim < 2 or not F.nondegenerate:
        raise DegenerateForm("Sp needs a nondegenerate form of dimension >= 2")
    return GenSet([symplectic_transvection(F, v) for v in range(1, 1 << F.dim)], name="sp")


def delta_gens(F: BilinForm) -> GenSet:
    sp = sp_gens(F)
    return GenSet(sp.gens + (translation(Vec2.unit(F.dim, 1)),), name="delta")


def sym0_gens(n: int) -> GenSet:
    _check_n(n)
    N = 1 << n
    cyc = np.arange(N, dtype=np.int32)
    cyc[1:N - 1] = np.arange(2, N)
    cyc[N - 1] = 1
    return GenSet([transposition(n, 1, 2), Perm(n, cyc, check=False)], name="sym0")


def sym_gens(n: int) -> GenSet:
    return GenSet(sym0_gens(n).gens + (transposition(n, 0, 1),), name="sym")


def named_group(name: str, n: int, F: BilinForm | None = None) -> GenSet:
    """Generators for a CLI group name; sp/delta default to the standard form."""
    if name in ("sp", "delta"):
        if F is None:
            if n % 2:
                raise DegenerateForm(f"{name} needs an even dimension, got {n}")
            F = standard_form(n // 2)
        return sp_gens(F) if name == "sp" else delta_gens(F)
    table = {"gl": gl_gens, "agl": agl_gens, "t": t_gens, "sym0": sym0_gens, "sym": sym_gens}
    if name not in table:
        raise ValueError(f"unknown group {name!r}; expected one of {', '.join(GROUP_NAMES)}")
    return table[name](n)


def gl_order(n):
    return prod((1 << n) - (1 << i) for i in range(n))


def sp_order(m):
    return 2 ** (m * m) * prod(4 ** i - 1 for i in range(1, m + 1))


def named_order(name: str, n: int) -> int:
    """Closed-form orders; independent of any generator set."""
    if name == "gl":
        return gl_order(n)
    if name == "agl":
        return 2 ** n * gl_order(n)
    if name == "t":
        return 2 ** n
    if name == "sp":
        return sp_order(n // 2)
    if name == "delta":
        return 2 ** n * sp_order(n // 2)
    if name == "sym0":
        return factorial(2 ** n - 1)
    if name == "sym":
        return factorial(2 ** n)
    raise ValueError(name)
