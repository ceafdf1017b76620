"""Framed-link state: linking matrix, characteristic mask, counters, verdict.

The state is the abstract side of a Kirby diagram: an ordered list of
components with framings, the symmetric linking matrix over the live
components (framings on the diagonal), the tracked characteristic mask,
and the ambient counters b2 and sigma.

In full mode the matrix is the whole diagram: b2 equals the component
count and sigma equals the exact signature of the matrix.  In reduced
mode only part of the diagram is retained (the paper-style bookkeeping),
so b2 >= component count and |sigma| <= b2, with the counters maintained
incrementally by the move engine.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field, replace

from .signature import exact_signature

MODE_FULL = "full"
MODE_REDUCED = "reduced"

UNKNOT_VERIFIED = "verified"
UNKNOT_ASSERTED = "asserted"
UNKNOT_UNKNOWN = "unknown"

ORIGIN_INITIAL = "initial_knot"
ORIGIN_BLOWUP = "blowup_circle"
ORIGIN_SLIDE = "slide_result"
ORIGIN_REPLACEMENT = "replacement"

VERDICT_OBSTRUCTED = "not_smoothly_slice"
VERDICT_INCONCLUSIVE = "inconclusive"

ARF_CONSISTENT = "consistent"
ARF_INCONSISTENT = "inconsistent"
ARF_UNCHECKED = "unchecked"

SPIN_STRUCTURE_TAG = "s1"


class StateError(ValueError):
    """A structural invariant of the framed state failed."""


@dataclass
class Component:
    """One link component: framing, mask membership, and what we know of it.

    ``round_circle`` records that the component is still a geometrically
    round circle sitting in its own ball (true for every blow-up circle
    and declared unknot piece until it is itself slid); two such circles
    with linking number 0 form a split unlink, which is what lets a slide
    of one over the other produce a verified unknot.
    """

    id: str
    framing: int
    characteristic: bool
    unknot: str = UNKNOT_UNKNOWN
    origin: str = ORIGIN_INITIAL
    round_circle: bool = False

    def to_doc(self) -> dict:
        return {
            "id": self.id,
            "framing": self.framing,
            "characteristic": self.characteristic,
            "unknot": self.unknot,
            "origin": self.origin,
            "round": self.round_circle,
        }

    @staticmethod
    def from_doc(doc: dict) -> "Component":
        return Component(
            id=doc["id"],
            framing=doc["framing"],
            characteristic=doc["characteristic"],
            unknot=doc["unknot"],
            origin=doc["origin"],
            round_circle=doc.get("round", False),
        )


@dataclass
class FramedLinkState:
    components: list[Component]
    linking: list[list[int]]
    b2: int
    sigma: int
    mode: str = MODE_FULL

    def copy(self) -> "FramedLinkState":
        return FramedLinkState(
            components=[replace(c) for c in self.components],
            linking=[row[:] for row in self.linking],
            b2=self.b2,
            sigma=self.sigma,
            mode=self.mode,
        )

    def index_of(self, component_id: str) -> int:
        for i, c in enumerate(self.components):
            if c.id == component_id:
                return i
        raise KeyError(component_id)

    def component(self, component_id: str) -> Component:
        return self.components[self.index_of(component_id)]

    def mask_indices(self) -> list[int]:
        return [i for i, c in enumerate(self.components) if c.characteristic]

    def mask_ids(self) -> list[str]:
        return [c.id for c in self.components if c.characteristic]

    def margin(self) -> int:
        return 4 * self.b2 - 5 * abs(self.sigma) - 12

    def check(self, full_signature: bool = False) -> None:
        """Assert the structural invariants; raise StateError on violation.

        ``full_signature`` additionally recomputes the exact signature in
        full mode (an O(n^3) exact computation, so it is opt-in).
        """
        m = len(self.components)
        if len(self.linking) != m or any(len(row) != m for row in self.linking):
            raise StateError("linking matrix shape does not match components")
        for i in range(m):
            for j in range(i + 1, m):
                if self.linking[i][j] != self.linking[j][i]:
                    raise StateError(f"linking matrix not symmetric at ({i}, {j})")
        for i, c in enumerate(self.components):
            if self.linking[i][i] != c.framing:
                raise StateError(
                    f"diagonal/framing mismatch on {c.id}: "
                    f"{self.linking[i][i]} != {c.framing}"
                )
        mask = self.mask_indices()
        for i in range(m):
            total = sum(self.linking[i][j] for j in mask)
            if (total - self.linking[i][i]) % 2 != 0:
                raise StateError(
                    f"characteristic congruence fails at {self.components[i].id}"
                )
        if self.mode == MODE_FULL:
            if self.b2 != m:
                raise StateError(f"full mode: b2 {self.b2} != component count {m}")
            if full_signature and self.sigma != exact_signature(self.linking):
                raise StateError("full mode: tracked sigma differs from exact signature")
        else:
            if self.b2 < m:
                raise StateError(f"reduced mode: b2 {self.b2} < component count {m}")
            if abs(self.sigma) > self.b2:
                raise StateError("reduced mode: |sigma| exceeds b2")

    def to_doc(self) -> dict:
        return {
            "mode": self.mode,
            "b2": self.b2,
            "sigma": self.sigma,
            "margin": self.margin(),
            "components": [c.to_doc() for c in self.components],
            "linking": [x for row in self.linking for x in row],
        }

    @staticmethod
    def from_doc(doc: dict) -> "FramedLinkState":
        components = [Component.from_doc(d) for d in doc["components"]]
        m = len(components)
        flat = doc["linking"]
        if len(flat) != m * m:
            raise StateError("linking array length does not match component count")
        linking = [list(flat[i * m : (i + 1) * m]) for i in range(m)]
        return FramedLinkState(
            components=components,
            linking=linking,
            b2=doc["b2"],
            sigma=doc["sigma"],
            mode=doc["mode"],
        )


def is_spin(state: FramedLinkState) -> bool:
    """True iff the tracked characteristic mask is empty.

    In full mode an empty mask forces the linking form to be even; a
    mismatch means the state is corrupted, so it raises rather than
    answering.
    """
    if state.mask_indices():
        return False
    if state.mode == MODE_FULL:
        for i, c in enumerate(state.components):
            if state.linking[i][i] % 2 != 0:
                raise StateError(
                    f"empty mask but odd framing on {c.id}: corrupted state"
                )
    return True


@dataclass(frozen=True)
class TrustPoint:
    """A recorded assertion the pipeline could not verify itself."""

    kind: str  # "isotopy" or "unknot"
    component: str
    label: str | None = None
    detail: str | None = None

    def to_doc(self) -> dict:
        return {
            "kind": self.kind,
            "component": self.component,
            "label": self.label,
            "detail": self.detail,
        }

    @staticmethod
    def from_doc(doc: dict) -> "TrustPoint":
        return TrustPoint(doc["kind"], doc["component"], doc.get("label"), doc.get("detail"))

    def describe(self) -> str:
        return f"{self.kind}: {self.label or self.component}"


@dataclass(frozen=True)
class ObstructionReport:
    """Final verdict data for a spin 2-handlebody bounding 0-surgery."""

    b2: int
    sigma: int
    margin: int
    verdict: str
    spin_structure: str = SPIN_STRUCTURE_TAG
    trust_points: tuple[TrustPoint, ...] = ()
    arf_consistency: str = ARF_UNCHECKED
    warnings: tuple[str, ...] = ()

    def to_doc(self) -> dict:
        return {
            "b2": self.b2,
            "sigma": self.sigma,
            "margin": self.margin,
            "verdict": self.verdict,
            "spin_structure": self.spin_structure,
            "trust_points": [t.to_doc() for t in self.trust_points],
            "arf_consistency": self.arf_consistency,
            "warnings": list(self.warnings),
        }

    @staticmethod
    def from_doc(doc: dict) -> "ObstructionReport":
        return ObstructionReport(
            b2=doc["b2"],
            sigma=doc["sigma"],
            margin=doc["margin"],
            verdict=doc["verdict"],
            spin_structure=doc.get("spin_structure", SPIN_STRUCTURE_TAG),
            trust_points=tuple(TrustPoint.from_doc(t) for t in doc.get("trust_points", [])),
            arf_consistency=doc.get("arf_consistency", ARF_UNCHECKED),
            warnings=tuple(doc.get("warnings", [])),
        )

    def summary(self) -> str:
        line = (
            f"b2={self.b2} sigma={self.sigma} margin={self.margin} "
            f"verdict={self.verdict} trust_points={len(self.trust_points)}"
        )
        if self.trust_points:
            details = ", ".join(t.describe() for t in self.trust_points)
            line += f" ({details})"
        return line


def obstruction_verdict(
    b2: int,
    sigma: int,
    trust_points: tuple[TrustPoint, ...] = (),
    warnings: tuple[str, ...] = (),
) -> ObstructionReport:
    """Apply the spin bound 4*b2 >= 5*|sigma| + 12 to certified counters.

    The caller certifies (b2, sigma) come from a spin state bounding
    0-surgery with the non-extending spin structure.  b2 = 1 is always
    inconclusive (the bound admits it); b2 = 0 is treated as inconclusive
    with a warning since no such handlebody actually arises.
    """
    if b2 < 0:
        raise ValueError(f"b2 must be nonnegative, got {b2}")
    margin = 4 * b2 - 5 * abs(sigma) - 12
    if b2 == 0:
        warnings = warnings + (
            "b2=0 cannot bound 0-surgery on a knot; verdict forced inconclusive",
        )
    if b2 > 1 and margin < 0:
        verdict = VERDICT_OBSTRUCTED
    else:
        verdict = VERDICT_INCONCLUSIVE
    return ObstructionReport(
        b2=b2,
        sigma=sigma,
        margin=margin,
        verdict=verdict,
        trust_points=trust_points,
        warnings=warnings,
    )
