"""Membership graphs on partitions: vertices are shapes whose degree-i
cohomology is nonzero in the chosen sense (p divides the integral group
order, or the mod-p dimension is positive), edges are add-a-node arrows
between members.

A computed graph is a truncation of the infinite one, so successor existence
is only asserted below the frontier and predecessor existence only when the
prime does not divide n.  Shapes in the principal block with no computed
record are tracked as "unknown" and never count as violations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .partitions import Partition, partitions_of, predecessors, successors
from .theory import cp1_membership, principal_block

INTEGRAL = "integral"  # p divides |H^degree|
MODP = "modp"  # dim H^degree over F_p is positive


@dataclass(frozen=True)
class CohomologyGraph:
    p: int
    degree: int
    kind: str  # integral | modp
    max_n: int
    vertices: frozenset[Partition]
    edges: frozenset[tuple[Partition, Partition]]
    frontier: frozenset[Partition]
    unknown: frozenset[Partition]

    @property
    def name(self) -> str:
        base = f"C{self.p}^{self.degree}" if self.kind == INTEGRAL else f"C^{self.degree}(F{self.p})"
        return base


def _membership(record_for, lam: Partition, p: int, degree: int, kind: str):
    """True/False membership, or None when it cannot be decided."""
    if p > lam.n:
        return False  # group order is coprime to p, degree >= 1 vanishes
    if not principal_block(lam, p):
        return False
    if kind == INTEGRAL and degree == 1:
        return cp1_membership(lam, p)
    rec = record_for(lam, degree)
    if kind == INTEGRAL:
        if rec is None:
            return None
        return rec.order_divisible_by(p)
    # modp: positive mod-p dimension
    if rec is None or p not in rec.modp_dims:
        return None
    return rec.modp_dims[p] > 0


def build_graph(record_for, p: int, degree: int, max_n: int, *, kind: str = INTEGRAL) -> CohomologyGraph:
    """Build the induced subgraph over all shapes of 2..max_n boxes.

    `record_for(lam, degree)` returns a cohomology record or None; shapes
    outside the principal block are excluded without needing records."""
    if kind not in (INTEGRAL, MODP):
        raise ValueError(f"unknown graph kind {kind!r}")
    members: set[Partition] = set()
    unknown: set[Partition] = set()
    for n in range(2, max_n + 1):
        for lam in partitions_of(n):
            got = _membership(record_for, lam, p, degree, kind)
            if got is None:
                unknown.add(lam)
            elif got:
                members.add(lam)
    edges = {
        (lam, mu)
        for lam in members
        for mu in successors(lam)
        if mu in members
    }
    frontier = frozenset(v for v in members if v.n == max_n)
    return CohomologyGraph(
        p, degree, kind, max_n, frozenset(members), frozenset(edges), frontier, frozenset(unknown)
    )


@dataclass(frozen=True)
class StructureReport:
    successor_violations: tuple[Partition, ...]
    predecessor_violations: tuple[Partition, ...]
    checked: int
    unknown_skipped: int

    @property
    def ok(self) -> bool:
        return not self.successor_violations and not self.predecessor_violations


def check_structure(graph: CohomologyGraph) -> StructureReport:
    """Every non-frontier member must have a successor in the graph; every
    member with p not dividing n must have a predecessor.  A vertex whose
    relevant neighbour could be an unknown shape is skipped, not flagged."""
    succ_bad = []
    pred_bad = []
    checked = 0
    skipped = 0
    for lam in sorted(graph.vertices):
        if lam.n < graph.max_n:
            checked += 1
            nbrs = successors(lam)
            if not (nbrs & graph.vertices):
                if nbrs & graph.unknown:
                    skipped += 1
                else:
                    succ_bad.append(lam)
        if lam.n % graph.p != 0 and lam.n > 2:
            checked += 1
            nbrs = predecessors(lam)
            if not (nbrs & graph.vertices):
                if nbrs & graph.unknown:
                    skipped += 1
                else:
                    pred_bad.append(lam)
    return StructureReport(tuple(succ_bad), tuple(pred_bad), checked, skipped)


@dataclass(frozen=True)
class PathCheck:
    description: str
    required: tuple[Partition, ...]
    ok: bool
    detail: str = ""


def _segment_edges(graph: CohomologyGraph, seg: list[Partition]) -> tuple[bool, str]:
    for v in seg:
        if v not in graph.vertices:
            return False, f"missing vertex {v.exp_text()}"
    for a, b in zip(seg, seg[1:]):
        if (a, b) not in graph.edges:
            return False, f"missing edge {a.exp_text()} -> {b.exp_text()}"
    return True, ""


def verify_path_lemmas(graph: CohomologyGraph) -> list[PathCheck]:
    """Assert the known initial path segments inside the computed range.

    For p > 3 the hook-chain steps are additionally the unique successors.
    Only segments that fit entirely below the frontier (plus their final
    vertex at most at max_n) are asserted."""
    p = graph.p
    out: list[PathCheck] = []
    if graph.degree != 2 or graph.kind != INTEGRAL:
        return out
    max_n = graph.max_n

    def in_range(seg):
        return seg and all(v.n <= max_n for v in seg)

    if p > 3:
        m = 1
        while m * p <= max_n:
            seg = []
            for j in range(0, p - 2):
                lam = Partition((m * p - 2, 1 + j, 1)) if j else Partition((m * p - 2, 1, 1))
                if lam.n > max_n:
                    break
                seg.append(lam)
            if len(seg) >= 2:
                ok, detail = _segment_edges(graph, seg)
                uniq_ok = True
                uniq_detail = ""
                for a, b in zip(seg, seg[1:]):
                    others = (successors(a) & graph.vertices) - {b}
                    if others:
                        uniq_ok = False
                        uniq_detail = f"{a.exp_text()} has extra successors {[o.exp_text() for o in others]}"
                        break
                out.append(
                    PathCheck(
                        f"hook chain from ({m*p-2},1^2), p={p}",
                        tuple(seg),
                        ok and uniq_ok,
                        detail or uniq_detail,
                    )
                )
            if m == 1:
                cont = [
                    Partition((p - 2, p - 2, 1)),
                    Partition((p - 2, p - 2, 1, 1)),
                    Partition((p - 1, p - 2, 1, 1)),
                ]
                cont = [v for v in cont if v.n <= max_n]
                if len(cont) >= 2:
                    ok, detail = _segment_edges(graph, cont)
                    out.append(PathCheck(f"m=1 continuation, p={p}", tuple(cont), ok, detail))
            m += 1
    if p == 3:
        m = 1
        while 3 * m <= max_n:
            shapes = [
                Partition((3 * m - 2, 1, 1)),
                Partition((3 * m - 2, 1, 1, 1)),
                Partition((3 * m - 1, 1, 1, 1)),
                Partition((3 * m - 1, 1, 1, 1, 1)),
                Partition((3 * m - 1, 2, 1, 1, 1)),
            ]
            seg = [v for v in shapes if v.n <= max_n]
            if len(seg) >= 2:
                ok, detail = _segment_edges(graph, seg)
                out.append(PathCheck(f"column chain from ({3*m-2},1^2), p=3", tuple(seg), ok, detail))
            m += 1
    if p > 2:
        m = 1
        while m * p + p <= max_n:
            shapes = [Partition((m * p + i, p)) for i in range(0, p - 1)]
            shapes.append(Partition((m * p + p - 2, p, 1)))
            seg = [v for v in shapes if v.n <= max_n]
            if len(seg) >= 2:
                ok, detail = _segment_edges(graph, seg)
                out.append(PathCheck(f"two-part chain from ({m*p},{p}), p={p}", tuple(seg), ok, detail))
            m += 1
    return out


def edge_set_bruteforce(graph: CohomologyGraph) -> frozenset:
    """Recompute the edge set directly from the definition (test helper)."""
    return frozenset(
        (a, b) for a in graph.vertices for b in graph.vertices if b in successors(a)
    )


def export_dot(graph: CohomologyGraph, path) -> None:
    """Deterministic DOT dump: vertices ranked by box count, sorted labels."""
    lines = [f'digraph "{graph.name}" {{', "  rankdir=TB;", '  node [shape=box, fontsize=10];']
    by_n: dict[int, list[Partition]] = {}
    for v in sorted(graph.vertices):
        by_n.setdefault(v.n, []).append(v)
    for n in sorted(by_n):
        names = " ".join(f'"{v.exp_text()}";' for v in by_n[n])
        lines.append(f"  {{ rank=same; {names} }}")
    for a, b in sorted(graph.edges):
        lines.append(f'  "{a.exp_text()}" -> "{b.exp_text()}";')
    for v in sorted(graph.unknown):
        lines.append(f'  "{v.exp_text()}" [style=dashed, label="{v.exp_text()}?"];')
    lines.append("}")
    text = "\n".join(lines) + "\n"
    with open(path, "w") as fh:
        fh.write(text)


def graph_to_json(graph: CohomologyGraph) -> dict:
    return {
        "p": graph.p,
        "degree": graph.degree,
        "kind": graph.kind,
        "max_n": graph.max_n,
        "vertices": [v.exp_text() for v in sorted(graph.vertices)],
        "edges": [[a.exp_text(), b.exp_text()] for a, b in sorted(graph.edges)],
        "frontier": [v.exp_text() for v in sorted(graph.frontier)],
        "unknown": [v.exp_text() for v in sorted(graph.unknown)],
    }
