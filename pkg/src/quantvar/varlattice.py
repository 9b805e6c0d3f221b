"""Variables over a finite labelled point space and their partial order.

A variable is a total map from points to value labels, equivalently a
labelled partition of the point space.  The ordering ``alpha <= beta``
holds exactly when some function sends beta-values to alpha-values, i.e.
when beta's partition refines alpha's.  The accessible family of a system
is the closure of its generators under taking functions; since taking a
function can only coarsen a partition, every accessible variable is a
coarsening of some generator, which keeps all queries finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Optional, Sequence

from .groupaction import GroupAction, Permutation, verify_group, identity as identity_perm

Label = Hashable

ENUMERATION_POINT_CAP = 12


class DomainMismatchError(ValueError):
    """Two variables (or a group) do not share the same point space."""


class NotAccessibleError(ValueError):
    """A variable is not in the accessible closure of the system."""


class ClosureTooLargeError(ValueError):
    """Explicit closure enumeration was requested beyond the point cap."""


@dataclass(frozen=True)
class PhiSpace:
    """Ordered finite set of point identifiers, optionally embedded.

    ``embedding`` maps points to unit vectors in the plane or in space;
    it is only needed by the geometric spin model.
    """

    points: tuple[str, ...]
    embedding: Optional[dict[str, tuple[float, ...]]] = field(default=None, hash=False)

    def __post_init__(self) -> None:
        if len(set(self.points)) != len(self.points):
            raise ValueError("point identifiers must be unique")
        if not self.points:
            raise ValueError("point space must be nonempty")
        if self.embedding is not None:
            for p, vec in self.embedding.items():
                if p not in self.points:
                    raise ValueError(f"embedded point {p!r} is not in the space")
                if len(vec) not in (2, 3):
                    raise ValueError("embeddings must be 2- or 3-dimensional")
                norm = math.sqrt(sum(x * x for x in vec))
                if abs(norm - 1.0) > 1e-12:
                    raise ValueError(f"embedding of {p!r} is not a unit vector")

    @property
    def size(self) -> int:
        return len(self.points)

    def index(self, point: str) -> int:
        return self.points.index(point)


@dataclass(frozen=True)
class Variable:
    """A total map from points to value labels plus an accessibility flag."""

    name: str
    space: PhiSpace
    values: dict[str, Label] = field(hash=False)
    accessible: bool = True

    def __post_init__(self) -> None:
        missing = [p for p in self.space.points if p not in self.values]
        if missing:
            raise ValueError(f"variable {self.name!r} undefined on points {missing}")
        extra = [p for p in self.values if p not in self.space.points]
        if extra:
            raise ValueError(f"variable {self.name!r} defined on unknown points {extra}")

    def labels(self) -> tuple[Label, ...]:
        """Values in point order."""
        return tuple(self.values[p] for p in self.space.points)

    def value_set(self) -> set[Label]:
        return set(self.values.values())

    def partition_signature(self) -> tuple[int, ...]:
        """Canonical partition form: blocks numbered by first occurrence.

        Two variables induce the same partition iff their signatures match,
        regardless of the labels used.
        """
        seen: dict[Label, int] = {}
        out = []
        for lab in self.labels():
            if lab not in seen:
                seen[lab] = len(seen)
            out.append(seen[lab])
        return tuple(out)

    def blocks(self) -> list[tuple[str, ...]]:
        """Preimage classes in order of first occurrence."""
        by_label: dict[Label, list[str]] = {}
        for p in self.space.points:
            by_label.setdefault(self.values[p], []).append(p)
        return [tuple(ps) for ps in by_label.values()]

    def is_constant(self) -> bool:
        return len(self.value_set()) == 1


def variable_from_labels(
    space: PhiSpace, name: str, labels: Sequence[Label], accessible: bool = True
) -> Variable:
    if len(labels) != space.size:
        raise ValueError("one label per point required")
    return Variable(name=name, space=space, values=dict(zip(space.points, labels)), accessible=accessible)


def identity_variable(space: PhiSpace, name: str = "phi", accessible: bool = False) -> Variable:
    """The finest variable: each point is its own value.

    This is the inaccessible upper bound of the ordering on its space.
    """
    return Variable(name=name, space=space, values={p: p for p in space.points}, accessible=accessible)


def constant_variable(space: PhiSpace, name: str = "const", value: Label = 0) -> Variable:
    return Variable(name=name, space=space, values={p: value for p in space.points})


def coarsen(beta: Variable, mapping: dict[Label, Label], name: Optional[str] = None) -> Variable:
    """Apply a function to the values of ``beta`` (closure under functions)."""
    vals = {p: mapping[beta.values[p]] for p in beta.space.points}
    return Variable(
        name=name or f"{beta.name}*", space=beta.space, values=vals, accessible=beta.accessible
    )


def _require_same_space(alpha: Variable, beta: Variable) -> None:
    if alpha.space.points != beta.space.points:
        raise DomainMismatchError(
            f"variables {alpha.name!r} and {beta.name!r} live on different point spaces"
        )


def less_or_equal(alpha: Variable, beta: Variable) -> bool:
    """True iff alpha is a function of beta (beta's partition refines alpha's).

    Checked by building the would-be function beta-value -> alpha-value and
    failing on the first inconsistency.
    """
    _require_same_space(alpha, beta)
    mapping: dict[Label, Label] = {}
    for p in alpha.space.points:
        b, a = beta.values[p], alpha.values[p]
        if mapping.setdefault(b, a) != a:
            return False
    return True


def equivalent(alpha: Variable, beta: Variable) -> bool:
    """Same partition up to relabelling (a bijection between value sets)."""
    _require_same_space(alpha, beta)
    return alpha.partition_signature() == beta.partition_signature()


def strictly_below(alpha: Variable, beta: Variable) -> bool:
    return less_or_equal(alpha, beta) and not less_or_equal(beta, alpha)


def is_related(
    theta: Variable,
    eta: Variable,
    group: GroupAction,
    up_to_relabeling: bool = False,
) -> Optional[Permutation]:
    """Search the group for k with eta(p) = theta(k.p) at every point.

    By default value labels must match exactly (the two variables are the
    same function read at transformed points).  With ``up_to_relabeling``
    a bijective relabelling of theta's values is also allowed; this is a
    documented extension, not the default reading.

    Returns the first witnessing element in group order, or None.
    """
    _require_same_space(theta, eta)
    if group.degree != theta.space.size:
        raise DomainMismatchError("group degree does not match the point space")
    theta_at = theta.labels()
    eta_at = eta.labels()
    n = theta.space.size
    for perm in group.elements:
        if up_to_relabeling:
            fwd: dict[Label, Label] = {}
            bwd: dict[Label, Label] = {}
            ok = True
            for i in range(n):
                t, e = theta_at[perm[i]], eta_at[i]
                if fwd.setdefault(t, e) != e or bwd.setdefault(e, t) != t:
                    ok = False
                    break
            if ok:
                return perm
        else:
            if all(eta_at[i] == theta_at[perm[i]] for i in range(n)):
                return perm
    return None


def _set_partitions(items: Sequence[Label]) -> Iterator[list[list[Label]]]:
    """All partitions of a finite sequence into nonempty blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in _set_partitions(rest):
        for i in range(len(smaller)):
            yield smaller[:i] + [[first] + smaller[i]] + smaller[i + 1 :]
        yield [[first]] + smaller


@dataclass
class VariableSystem:
    """A point space, accessible generators, and a declared symmetry group.

    The accessible family is the closure of the generators under taking
    functions of their values; it is represented implicitly and queried
    through the refinement criterion.  The identity-partition variable is
    a member, inaccessible unless it happens to coincide with a generator.
    """

    phi: PhiSpace
    generators: list[Variable]
    group: Optional[GroupAction] = None

    def __post_init__(self) -> None:
        if self.group is None:
            self.group = verify_group([identity_perm(self.phi.size)])
        if self.group.degree != self.phi.size:
            raise DomainMismatchError("group degree does not match the point space")
        for g in self.generators:
            if g.space.points != self.phi.points:
                raise DomainMismatchError(f"generator {g.name!r} lives on a different space")
            if not g.accessible:
                raise ValueError(f"generator {g.name!r} must be marked accessible")

    @property
    def phi_variable(self) -> Variable:
        accessible = any(
            g.partition_signature() == tuple(range(self.phi.size)) for g in self.generators
        )
        return identity_variable(self.phi, accessible=accessible)

    def members(self) -> list[Variable]:
        return [self.phi_variable] + list(self.generators)

    def is_accessible(self, v: Variable) -> bool:
        """True iff v is a function of some generator."""
        return any(less_or_equal(v, g) for g in self.generators)

    def accessible_variables(self) -> list[Variable]:
        """Explicit closure: every distinct coarsening of every generator.

        Only the partition content matters, so each coarsening is emitted
        once with canonical block-index labels.  Enumeration is capped to
        small spaces; larger systems must use ``is_accessible`` directly.
        """
        if self.phi.size > ENUMERATION_POINT_CAP:
            raise ClosureTooLargeError(
                f"explicit closure enumeration is limited to "
                f"{ENUMERATION_POINT_CAP} points; use is_accessible instead"
            )
        seen: dict[tuple[int, ...], Variable] = {}
        for g in self.generators:
            block_list = g.blocks()
            for part in _set_partitions(list(range(len(block_list)))):
                values: dict[str, Label] = {}
                for new_label, merged in enumerate(part):
                    for old_index in merged:
                        for p in block_list[old_index]:
                            values[p] = new_label
                cand = Variable(
                    name=f"{g.name}/c{len(seen)}", space=self.phi, values=values
                )
                sig = cand.partition_signature()
                if sig not in seen:
                    seen[sig] = cand
        return list(seen.values())

    def is_maximal(self, theta: Variable) -> bool:
        """True iff no accessible variable strictly refines theta.

        Coarsening closure only coarsens, so any closure member refining
        theta strictly is itself refined by a generator that already
        refines theta strictly; scanning generators is exhaustive.
        """
        if not self.is_accessible(theta):
            raise NotAccessibleError(f"{theta.name!r} is not accessible in this system")
        return not any(strictly_below(theta, g) for g in self.generators)


@dataclass
class MaximalityVerdict:
    """Per-variable maximality analysis inside a system."""

    variable: str
    accessible: bool
    maximal: Optional[bool]
    refined_by: Optional[str] = None

    @property
    def is_maximal_accessible(self) -> bool:
        return self.accessible and bool(self.maximal)


@dataclass
class ExclusionReport:
    """Outcome of the maximality-exclusion check on a variable triple.

    ``status`` is ``hypotheses_not_met`` when the stated hypotheses fail
    (with the failures listed), ``confirmed`` when they hold and the third
    variable is indeed not maximal, and ``counterexample`` if the third
    variable were maximal anyway, which would signal a logic error.
    """

    status: str
    failed_hypotheses: tuple[str, ...]
    witnesses: dict[str, Optional[Permutation]]
    maximality: dict[str, MaximalityVerdict]


def _maximality_verdict(system: VariableSystem, v: Variable) -> MaximalityVerdict:
    accessible = system.is_accessible(v)
    if not accessible:
        return MaximalityVerdict(variable=v.name, accessible=False, maximal=None)
    refined_by = next((g.name for g in system.generators if strictly_below(v, g)), None)
    return MaximalityVerdict(
        variable=v.name, accessible=True, maximal=refined_by is None, refined_by=refined_by
    )


def check_exclusion(
    system: VariableSystem, theta: Variable, eta: Variable, lam: Variable
) -> ExclusionReport:
    """Check that a variable related to one of a related maximal pair but
    unrelated to the other cannot itself be a maximal accessible variable.

    Hypotheses verified against the system: theta and eta are maximal
    accessible and related under the declared group; lam is related to
    theta and unrelated to eta.  The report always carries the maximality
    analysis of all three variables, so a failed hypothesis still comes
    with the refinement evidence for lam.
    """
    group = system.group
    assert group is not None
    witnesses = {
        "theta_eta": is_related(theta, eta, group),
        "theta_lambda": is_related(theta, lam, group),
        "eta_lambda": is_related(eta, lam, group),
    }
    maximality = {
        "theta": _maximality_verdict(system, theta),
        "eta": _maximality_verdict(system, eta),
        "lambda": _maximality_verdict(system, lam),
    }
    failed = []
    if not maximality["theta"].is_maximal_accessible:
        failed.append("theta is not a maximal accessible variable")
    if not maximality["eta"].is_maximal_accessible:
        failed.append("eta is not a maximal accessible variable")
    if witnesses["theta_eta"] is None:
        failed.append("theta and eta are not related under the declared group")
    if witnesses["theta_lambda"] is None:
        failed.append("lambda is not related to theta under the declared group")
    if witnesses["eta_lambda"] is not None:
        failed.append("lambda is related to eta under the declared group")
    if failed:
        status = "hypotheses_not_met"
    elif maximality["lambda"].is_maximal_accessible:
        status = "counterexample"
    else:
        status = "confirmed"
    return ExclusionReport(
        status=status,
        failed_hypotheses=tuple(failed),
        witnesses=witnesses,
        maximality=maximality,
    )


def system_to_document(system: VariableSystem) -> dict:
    """Plain-dict form of a system: point list, embeddings, generator
    tables, and group elements as index arrays."""
    doc: dict = {"points": list(system.phi.points)}
    if system.phi.embedding is not None:
        doc["embeddings"] = {p: list(v) for p, v in system.phi.embedding.items()}
    assert system.group is not None
    doc["group"] = {"elements": [list(p) for p in system.group.elements]}
    doc["generators"] = [
        {"name": g.name, "values": {p: g.values[p] for p in system.phi.points}}
        for g in system.generators
    ]
    return doc


def system_from_document(doc: dict) -> VariableSystem:
    """Inverse of :func:`system_to_document`; validates the group."""
    points = tuple(str(p) for p in doc["points"])
    embedding = None
    if doc.get("embeddings"):
        embedding = {str(p): tuple(float(x) for x in v) for p, v in doc["embeddings"].items()}
    space = PhiSpace(points=points, embedding=embedding)
    group = None
    if doc.get("group"):
        group = verify_group([tuple(int(i) for i in e) for e in doc["group"]["elements"]])
    generators = [
        Variable(name=str(g["name"]), space=space, values=dict(g["values"]))
        for g in doc.get("generators", [])
    ]
    return VariableSystem(phi=space, generators=generators, group=group)
