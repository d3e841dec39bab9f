"""
Functions to generate families of line and plane arrangements.
"""

import logging
import random
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .errors import HMClassError
from .lattice import Arrangement, format_arrangement

LOGGER = logging.getLogger(__name__)

NamedArrangement = Tuple[str, Arrangement]


def boolean_arrangement(n: int, m: Optional[int] = None) -> Arrangement:
    """The first ``m`` coordinate hyperplanes ``x_i = 0`` of P^n (all ``n + 1`` by default)."""
    m = n + 1 if m is None else m
    if not 1 <= m <= n + 1:
        raise ValueError(f"A Boolean arrangement in P^{n} has 1..{n + 1} hyperplanes, got {m}")
    forms = []
    for i in range(m):
        coeffs = [0] * (n + 1)
        coeffs[i] = 1
        forms.append(coeffs)
    return Arrangement.from_forms(n, forms)


def generic_arrangement(n: int, m: int) -> Arrangement:
    """
    ``m`` hyperplanes in general position.

    The forms are points ``(1, t, t**2, ...)`` of the moment curve; any ``n + 1`` of them
    are independent.
    """
    if m < 1:
        raise ValueError("Number of hyperplanes must be at least 1")
    return Arrangement.from_forms(n, [[t**p for p in range(n + 1)] for t in range(m)])


def pencil_arrangement(m: int, n: int = 2) -> Arrangement:
    """``m`` hyperplanes ``x_0 + t x_1 = 0`` through the codimension-2 subspace ``x_0 = x_1 = 0``."""
    if m < 1:
        raise ValueError("Number of hyperplanes must be at least 1")
    forms = []
    for t in range(m):
        coeffs = [0] * (n + 1)
        coeffs[0], coeffs[1] = (1, t) if t else (0, 1)
        forms.append(coeffs)
    return Arrangement.from_forms(n, forms)


def near_pencil_arrangement(m: int) -> Arrangement:
    """``m - 1`` concurrent lines plus one line missing their common point."""
    if m < 3:
        raise ValueError("A near-pencil needs at least 3 lines")
    return Arrangement.from_forms(2, list(pencil_arrangement(m - 1).forms) + [[0, 0, 1]])


def braid_arrangement(d: int) -> Arrangement:
    """
    Braid arrangement ``x_i - x_j = 0`` for ``0 <= i < j < d`` in P^{d-1}.
    """
    if d < 3:
        raise ValueError("Braid arrangement needs d >= 3")
    forms = []
    for i in range(d):
        for j in range(i + 1, d):
            coeffs = [0] * d
            coeffs[i] = 1
            coeffs[j] = -1
            forms.append(coeffs)
    return Arrangement.from_forms(d - 1, forms)


def deconed_braid_arrangement(d: int) -> Arrangement:
    """Braid arrangement in ``d + 1`` variables restricted to ``x_d = 0``: ``x_i`` and ``x_i - x_j``."""
    if d < 2:
        raise ValueError("Deconed braid arrangement needs d >= 2")
    forms = []
    for i in range(d):
        coeffs = [0] * d
        coeffs[i] = 1
        forms.append(coeffs)
    forms.extend(braid_arrangement(d).forms if d >= 3 else [[1, -1]])
    return Arrangement.from_forms(d - 1, forms)


def cone_arrangement(arr: Arrangement, with_infinity: bool = False) -> Arrangement:
    """
    Cone over an arrangement: each form gains a zero coefficient for a new variable, and
    ``with_infinity`` adds the hyperplane where that variable vanishes.
    """
    forms = [list(form) + [0] for form in arr.forms]
    if with_infinity:
        forms.append([0] * (arr.n + 1) + [1])
    return Arrangement.from_forms(arr.n + 1, forms)


def xyz_xy_arrangement() -> Arrangement:
    """The planes ``x = 0``, ``y = 0``, ``z = 0`` and ``x + y = 0`` in P^3."""
    return Arrangement.from_forms(
        3, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 1, 0, 0]]
    )


def pencil_with_coordinate_planes(m: int, extra: int = 2) -> Arrangement:
    """
    A pencil of ``m`` planes through the line ``x_0 = x_1 = 0`` plus the first ``extra`` of
    the planes ``x_2 = 0``, ``x_3 = 0``. Each added plane meets the pencil line in its own point.
    """
    if not 0 <= extra <= 2:
        raise ValueError(f"Between 0 and 2 coordinate planes can be added, got {extra}")
    forms = list(pencil_arrangement(m, n=3).forms)
    forms += [[0, 0, 1, 0], [0, 0, 0, 1]][:extra]
    return Arrangement.from_forms(3, forms)


def random_arrangement(
    n: int, m: int, seed: int, bound: int = 2, max_tries: int = 1000
) -> Arrangement:
    """
    Sample ``m`` distinct hyperplanes with integer coefficients in ``[-bound, bound]``.

    Small bounds make multiple points and edges likely.
    """
    rng = random.Random(seed)
    forms: List[Sequence[int]] = []
    for _ in range(max_tries):
        if len(forms) == m:
            return Arrangement.from_forms(n, forms)
        candidate = [rng.randint(-bound, bound) for _ in range(n + 1)]
        try:
            Arrangement.from_forms(n, forms + [candidate])
        except HMClassError:
            continue
        forms.append(candidate)
    if len(forms) == m:
        return Arrangement.from_forms(n, forms)
    raise ValueError(f"Could not sample {m} distinct hyperplanes in P^{n} with bound {bound}")


def p2_corpus() -> List[NamedArrangement]:
    """Line arrangements with at most 8 lines: generic, pencils, near-pencils, braid-type, random."""
    corpus: List[NamedArrangement] = [("boolean_p2", boolean_arrangement(2))]
    corpus += [(f"generic_p2_m{m}", generic_arrangement(2, m)) for m in range(1, 9)]
    corpus += [(f"pencil_p2_m{m}", pencil_arrangement(m)) for m in range(1, 9)]
    corpus += [(f"near_pencil_m{m}", near_pencil_arrangement(m)) for m in range(3, 9)]
    corpus += [("braid_d3", braid_arrangement(3)), ("deconed_braid_d3", deconed_braid_arrangement(3))]
    corpus += [
        (f"random_p2_m{m}_s{seed}", random_arrangement(2, m, seed))
        for m in range(3, 9)
        for seed in range(5)
    ]
    return corpus


def p3_corpus() -> List[NamedArrangement]:
    """Plane arrangements with at most 7 planes: Boolean, generic, braid, coned line arrangements, random."""
    corpus: List[NamedArrangement] = [
        ("boolean_p3", boolean_arrangement(3)),
        ("xyz_xy", xyz_xy_arrangement()),
        ("braid_d4", braid_arrangement(4)),
    ]
    corpus += [(f"generic_p3_m{m}", generic_arrangement(3, m)) for m in range(1, 8)]
    corpus += [(f"pencil_p3_m{m}", pencil_arrangement(m, n=3)) for m in range(2, 6)]
    corpus += [
        (f"pencil_p3_m{m}_planes{extra}", pencil_with_coordinate_planes(m, extra))
        for m in (3, 4)
        for extra in (1, 2)
    ]
    corpus += [
        ("cone_near_pencil_m4", cone_arrangement(near_pencil_arrangement(4))),
        ("cone_near_pencil_m4_inf", cone_arrangement(near_pencil_arrangement(4), True)),
        ("cone_generic_m4_inf", cone_arrangement(generic_arrangement(2, 4), True)),
        ("cone_deconed_braid_d3", cone_arrangement(deconed_braid_arrangement(3))),
        ("cone_deconed_braid_d3_inf", cone_arrangement(deconed_braid_arrangement(3), True)),
    ]
    corpus += [
        (f"random_p3_m{m}_s{seed}", random_arrangement(3, m, seed))
        for m in range(4, 7)
        for seed in range(3)
    ]
    return corpus


def write_corpus(directory: Path, corpus: Sequence[NamedArrangement]) -> List[Path]:
    """
    Write each named arrangement to ``<directory>/<name>.arr``.

    Args:
        directory: Target directory, created if missing
        corpus: Named arrangements, e.g. from :func:`p3_corpus`

    Returns:
        List[Path]: The written files in corpus order
    """
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, arr in corpus:
        path = directory / f"{name}.arr"
        path.write_text(format_arrangement(arr, comment=name))
        paths.append(path)
    LOGGER.info("Wrote %d arrangements to %s", len(paths), directory)
    return paths
