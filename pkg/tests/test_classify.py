import random

import numpy as np
import pytest

from f2reducts.classify import candidate_label, classify, fingerprint
from f2reducts.gf2 import Vec2
from f2reducts.perm import Perm, member, transposition
from f2reducts.stdgroups import (
    agl_gens, delta_gens, gl_gens, named_group, sp_gens, sym_gens, t_gens, translation,
)


def test_fingerprint_examples(F4):
    fp = fingerprint(gl_gens(4), F4)
    assert (fp.fixes_zero, fp.preserves_parallelogram, fp.preserves_p0, fp.preserves_nabla) == \
        (True, True, False, False)
    fp = fingerprint(delta_gens(F4), F4)
    assert (fp.fixes_zero, fp.preserves_parallelogram, fp.preserves_p0, fp.preserves_nabla) == \
        (False, True, None, True)
    fp = fingerprint(sym_gens(3))
    assert (fp.fixes_zero, fp.preserves_parallelogram, fp.preserves_p0, fp.preserves_nabla) == \
        (False, False, None, None)


def test_classify_examples(F4):
    assert classify(sp_gens(F4), F4).label == "Sp"
    assert classify(agl_gens(4), F4).label == "AGL"
    G = gl_gens(4).extended([transposition(4, 1, 3)])
    assert classify(G, F4).label == "Sym0"


@pytest.mark.parametrize("n", [3, 4])
def test_round_trip_without_form(n):
    for name, label in (("gl", "GL"), ("agl", "AGL"), ("sym0", "Sym0"), ("sym", "Sym")):
        assert classify(named_group(name, n)).label == label


def test_translations_leave_zero_fixing_labels(F4):
    for name in ("sp", "gl"):
        G = named_group(name, 4, F4).extended([translation(Vec2(4, 1))])
        assert classify(G, F4).label not in ("Sp", "GL", "Sym0")


def test_proper_subgroup_is_other(F4):
    c = classify(t_gens(4), F4)
    assert c.candidate == "Delta" and c.label == "Other"


def _random_zero_fixing(rng, n):
    rest = list(range(1, 1 << n))
    rng.shuffle(rest)
    return Perm(n, np.array([0] + rest))


@pytest.mark.parametrize("n", [3, 4])
def test_zero_fixing_extensions_of_gl(n):
    """Adding p to GL gives Sym0 exactly when p is odd on the nonzero points;
    even p land in the alternating group and come out as Other."""
    rng = random.Random(n)
    seen = 0
    while seen < 20:
        p = _random_zero_fixing(rng, n)
        if member(gl_gens(n), p):
            continue
        seen += 1
        c = classify(gl_gens(n).extended([p]))
        odd = _parity(p.images[1:]) == 1
        assert c.label == ("Sym0" if odd else "Other")
        assert c.candidate == "Sym0"


def _parity(images):
    images = list(images)
    seen = set()
    par = 0
    idx = {v: i for i, v in enumerate(sorted(images))}
    perm = [idx[v] for v in images]
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        par ^= (length - 1) & 1
    return par


def test_candidate_label_tree():
    from f2reducts.classify import Fingerprint
    assert candidate_label(Fingerprint(True, True, True, True, None)) == "Sp"
    assert candidate_label(Fingerprint(True, True, False, False, None)) == "GL"
    assert candidate_label(Fingerprint(True, False, False, False, None)) == "Sym0"
    assert candidate_label(Fingerprint(False, True, None, True, None)) == "Delta"
    assert candidate_label(Fingerprint(False, True, None, False, None)) == "AGL"
    assert candidate_label(Fingerprint(False, False, None, False, None)) == "Sym"
