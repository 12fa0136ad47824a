"""
Randomized checks of the field-family axioms on finitely presented supports
"""

import logging
import random
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Dict, List, Sequence, Tuple

from ..exceptions import ValidationError
from ..geom import _rank
from ..numbers import RatVec, lcm
from ..orders import WeightOrder, is_well_ordered
from ..support import SemigroupFamily, SupportSpec

logger = logging.getLogger(__name__)

AXIOMS = (1, 2, 3, 4, 5, 6)


@dataclass
class FieldFamilyReport:
    axioms: Dict[int, bool] = field(default_factory=lambda: {k: True for k in AXIOMS})
    failures: List[str] = field(default_factory=list)

    def fail(self, axiom: int, message: str) -> None:
        self.axioms[axiom] = False
        self.failures.append(f"axiom {axiom}: {message}")

    @property
    def passed(self) -> bool:
        return all(self.axioms.values())


def _sub_spec(s: SupportSpec, rng: random.Random) -> SupportSpec:
    def pick(items: Sequence[Any]) -> Tuple[Any, ...]:
        return tuple(x for x in items if rng.random() < 0.5)

    return SupportSpec(
        s.n, pick(s.points), pick(s.rays), pick(s.semigroups), pick(s.ptails), s.lattice_scale
    )


def _elements_nonnegative(s: SupportSpec, o: WeightOrder) -> bool:
    vectors: List[RatVec] = list(s.points)
    for r in s.rays:
        vectors.append(r.base)
    for sg in s.semigroups:
        vectors.append(sg.base)
    for t in s.ptails:
        vectors.extend((t.point(1), t.limit))
    return all(o.sign_of(v) >= 0 for v in vectors)


def _generated_semigroup(s: SupportSpec) -> SupportSpec:
    """The semigroup spanned by the family: its anchors plus its directions as generators"""
    gens: List[RatVec] = list(s.points) + s.directions(with_tail_dirs=False)
    for r in s.rays:
        gens.append(r.base)
    for sg in s.semigroups:
        gens.append(sg.base)
    for t in s.ptails:
        gens.extend((t.point(1), t.limit))
    scale = reduce(lcm, (g.denominator for g in gens), 1)
    semigroup = SemigroupFamily(RatVec.zero(s.n), tuple(gens))
    return SupportSpec(s.n, semigroups=(semigroup,), lattice_scale=scale)


def field_family_check(
    families: Sequence[SupportSpec], o: WeightOrder, samples: int = 20, seed: int = 0
) -> FieldFamilyReport:
    """Check axioms (1)-(6) on the given supports, randomizing sub-specs and translations"""
    if not families:
        raise ValidationError("no families to check")
    n = families[0].n
    if any(s.n != n for s in families) or o.n != n:
        raise ValidationError("families and order live in different dimensions")
    rng = random.Random(seed)
    report = FieldFamilyReport()

    for i, s in enumerate(families):
        if not is_well_ordered(o, s):
            report.fail(1, f"family {i} is not well-ordered")

    sample = [x for s in families for x in s.sample_points(3)]
    if _rank(sample, n) < n:
        report.fail(2, "family elements do not span the lattice")

    for i in range(len(families)):
        for j in range(i + 1, len(families)):
            if not is_well_ordered(o, families[i].union(families[j])):
                report.fail(3, f"union of families {i} and {j} is not well-ordered")

    for _ in range(samples):
        s = families[rng.randrange(len(families))]
        sub = _sub_spec(s, rng)
        if not sub.is_empty() and not is_well_ordered(o, sub):
            report.fail(4, "a sub-support left the class")
            break

    for _ in range(samples):
        s = families[rng.randrange(len(families))]
        shift = RatVec(rng.randint(-3, 3) for _ in range(n))
        if not is_well_ordered(o, s.translated(shift)):
            report.fail(5, f"translation by {shift!r} left the class")
            break

    for i, s in enumerate(families):
        if s.is_empty() or not _elements_nonnegative(s, o):
            continue
        if not is_well_ordered(o, _generated_semigroup(s)):
            report.fail(6, f"semigroup generated by family {i} is not well-ordered")
    logger.debug("field-family check: %s", report.axioms)
    return report


