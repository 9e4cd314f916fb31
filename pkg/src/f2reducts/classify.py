"""Match a generated group against the six named closed groups at finite scale.

The fingerprint is raw preservation data. A label is only reported after
the candidate named group is confirmed by equal order and mutual sifting;
anything else is ``Other``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExhausted
from .forms import BilinForm
from .perm import GenSet, fixed_points, same_group
from .relations import RelSpec, group_preserves
from .stdgroups import named_group

LABELS = ("Sp", "Delta", "GL", "AGL", "Sym0", "Sym", "Other")
_GROUP_OF = {"Sp": "sp", "Delta": "delta", "GL": "gl", "AGL": "agl", "Sym0": "sym0", "Sym": "sym"}


@dataclass(frozen=True)
class Fingerprint:
    fixes_zero: bool
    preserves_parallelogram: bool
    preserves_p0: bool | None  # None: not applicable
    preserves_nabla: bool | None
    order: int | None

    def row(self):
        def fmt(b):
            return "n/a" if b is None else str(b).lower()

        return [fmt(self.fixes_zero), fmt(self.preserves_parallelogram), fmt(self.preserves_p0),
                fmt(self.preserves_nabla), "n/a" if self.order is None else str(self.order)]


FINGERPRINT_COLUMNS = ("fixes_zero", "parallelogram", "p0", "nabla", "order")


@dataclass(frozen=True)
class Classification:
    label: str
    fingerprint: Fingerprint
    candidate: str | None  # label suggested by the decision tree before confirmation


def fingerprint(G: GenSet, F: BilinForm | None = None, workers: int = 1) -> Fingerprint:
    """p0 is only tested for 0-fixing groups; p0 and nabla need a form."""
    n = G.dim
    if F is not None and F.dim != n:
        raise ValueError(f"form dim {F.dim} vs group dim {n}")
    fz = 0 in fixed_points(G)
    par = group_preserves(G, RelSpec.parallelogram(n), workers=workers)
    p0 = None
    nab = None
    if F is not None:
        if fz:
            p0 = group_preserves(G, RelSpec.of_form("p0", F), workers=workers)
        nab = group_preserves(G, RelSpec.of_form("nabla", F), workers=workers)
    try:
        order = G.order()
    except BudgetExhausted:
        order = None
    return Fingerprint(fz, par, p0, nab, order)


def candidate_label(fp: Fingerprint) -> str:
    if fp.fixes_zero:
        if fp.preserves_p0:
            return "Sp"
        return "GL" if fp.preserves_parallelogram else "Sym0"
    if fp.preserves_nabla:
        return "Delta"
    return "AGL" if fp.preserves_parallelogram else "Sym"


def classify(G: GenSet, F: BilinForm | None = None, workers: int = 1) -> Classification:
    fp = fingerprint(G, F, workers)
    cand = candidate_label(fp)
    name = _GROUP_OF[cand]
    if name in ("sp", "delta") and (F is None or not F.nondegenerate):
        return Classification("Other", fp, cand)
    if name in ("gl", "agl", "sym0", "sym") and G.dim < 2:
        return Classification("Other", fp, cand)
    H = named_group(name, G.dim, F)
    if fp.order is None or fp.order != H.order() or not same_group(G, H):
        return Classification("Other", fp, cand)
    return Classification(cand, fp, cand)
