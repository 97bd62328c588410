"""Witness-tree construction, validation, and serialization.

A split tree is a rooted strict binary tree whose two child edges under
every internal vertex carry positive integer lengths summing to the fixed
budget ``k``.  ``reconstruct`` replays a solver witness chain backwards,
growing the single surviving vertex back into a full tree whose leaf
depths respect the requested bounds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import InputError
from .signature import LeafSignature, canonicalize, omega, truncate, validate_k
from .solver import MergeRecord


@dataclass
class TreeNode:
    node_id: int
    depth: int
    leaf_label: int | None = None
    children: list[tuple[int, "TreeNode"]] = field(default_factory=list)

    def is_leaf(self) -> bool:
        return not self.children


@dataclass
class SplitTree:
    k: int
    root: TreeNode

    def leaves(self) -> list[TreeNode]:
        out: list[TreeNode] = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.is_leaf():
                out.append(node)
            else:
                stack.extend(child for _, child in reversed(node.children))
        return out

    def leaf_depths(self) -> list[int]:
        return sorted(leaf.depth for leaf in self.leaves())


@dataclass
class ValidationReport:
    valid: bool
    violations: list[tuple[int, str, str]]
    leaf_depths: list[int]
    signature_check: bool


def child_edge_lengths(k: int, p: int, d_lo: int, d_hi: int) -> tuple[int, int]:
    """Edge lengths for expanding a leaf at depth ``p`` into two leaves
    with bounds ``d_lo`` <= ``d_hi``.

    Returns (a, b) with a = min(k-1, d_lo - p) and b = k - a, so that both
    lengths lie in 1..k-1 and the new depths p+a, p+b stay within the
    bounds.  Requires p <= omega(k, d_lo, d_hi).
    """
    validate_k(k)
    if d_lo > d_hi:
        raise InputError(f"expected d_lo <= d_hi, got {d_lo} > {d_hi}")
    if p > omega(k, d_lo, d_hi):
        raise InputError(
            f"leaf depth {p} too deep to split towards bounds ({d_lo}, {d_hi})"
        )
    a = min(k - 1, d_lo - p)
    b = k - a
    assert 1 <= a <= k - 1 and 1 <= b <= k - 1
    assert p + a <= d_lo and p + b <= d_hi
    return a, b


def _remove_one(values: list[int], v: int) -> list[int]:
    out = list(values)
    out.remove(v)
    return out


def reconstruct(k: int, d, chain: list[MergeRecord]) -> SplitTree:
    """Build a witness tree for bounds ``d`` from a decide() witness chain.

    The chain is replayed in reverse: the final singleton becomes the root,
    and each record expands the leaf carrying its inserted value into the
    two bounds it merged.  Remaining leaves are relabeled step by step from
    the child signature back to the parent signature (labels only grow, so
    every leaf keeps depth <= label).  The result carries the original
    bounds of ``d`` as leaf labels and passes ``validate``.
    """
    validate_k(k)
    sig = canonicalize(d)
    if sig.min_value < 0:
        raise InputError("depth bounds must be >= 0")

    if not chain:
        if len(sig) != 1:
            raise ValueError("witness chain missing for a multi-leaf signature")
        return SplitTree(k, TreeNode(0, 0, leaf_label=sig[0]))

    singleton = chain[-1].child
    if len(singleton) != 1 or singleton[0] < 0:
        raise ValueError(f"witness chain must end in a non-negative singleton, got {singleton!r}")
    top = truncate(sig, (k - 1) * (len(sig) - 1))
    if len(chain) != len(sig) - 1 or canonicalize(chain[0].parent) != top:
        raise ValueError("witness chain does not start at the given bounds")
    for earlier, later in zip(chain, chain[1:]):
        if earlier.child != later.parent:
            raise ValueError("witness chain records do not connect")

    root = TreeNode(0, 0, leaf_label=singleton[0])
    leaves = [root]
    next_id = 1
    for rec in reversed(chain):
        labels = sorted(leaf.leaf_label for leaf in leaves)
        if labels != list(rec.child):
            raise ValueError(
                f"leaf labels {labels} out of step with chain signature {list(rec.child)}"
            )
        grow = min(
            (leaf for leaf in leaves if leaf.leaf_label == rec.omega),
            key=lambda leaf: (leaf.depth, leaf.node_id),
        )
        a, b = child_edge_lengths(k, grow.depth, rec.merged_lo, rec.merged_hi)
        lo = TreeNode(next_id, grow.depth + a, leaf_label=rec.merged_lo)
        hi = TreeNode(next_id + 1, grow.depth + b, leaf_label=rec.merged_hi)
        next_id += 2
        grow.children = [(a, lo), (b, hi)]
        grow.leaf_label = None

        rest = [leaf for leaf in leaves if leaf is not grow]
        targets = _remove_one(_remove_one(list(rec.parent), rec.merged_lo), rec.merged_hi)
        rest.sort(key=lambda leaf: (leaf.leaf_label, leaf.node_id))
        for leaf, label in zip(rest, sorted(targets)):
            assert leaf.leaf_label <= label
            leaf.leaf_label = label
        leaves = rest + [lo, hi]

    # the chain starts from the truncated input; lift labels to the
    # caller's original bounds
    final = sorted(leaves, key=lambda leaf: (leaf.leaf_label, leaf.node_id))
    for leaf, label in zip(final, sig):
        assert leaf.leaf_label <= label
        leaf.leaf_label = label
    for leaf in leaves:
        assert leaf.depth <= leaf.leaf_label
    return SplitTree(k, root)


def validate(k: int, tree: SplitTree, d) -> ValidationReport:
    """Check the structural rules and that the tree realizes bounds ``d``."""
    violations: list[tuple[int, str, str]] = []
    bounds = sorted(d)
    if not isinstance(k, int) or k < 2:
        violations.append((-1, "k", f"edge-length sum must be >= 2, got {k!r}"))
    if tree.root.depth != 0:
        violations.append((tree.root.node_id, "root-depth", f"root depth {tree.root.depth} != 0"))

    leaves: list[TreeNode] = []
    stack = [tree.root]
    while stack:
        node = stack.pop()
        if node.is_leaf():
            leaves.append(node)
            if node.leaf_label is not None and node.depth > node.leaf_label:
                violations.append(
                    (node.node_id, "leaf-depth", f"depth {node.depth} over label {node.leaf_label}")
                )
            continue
        if len(node.children) != 2:
            violations.append(
                (node.node_id, "arity", f"{len(node.children)} children, expected 0 or 2")
            )
        lengths = [e for e, _ in node.children]
        if len(node.children) == 2 and sum(lengths) != k:
            violations.append((node.node_id, "edge-sum", f"edge lengths {lengths} do not sum to {k}"))
        for e, child in node.children:
            if not isinstance(e, int) or not 1 <= e <= k - 1:
                violations.append((node.node_id, "edge-range", f"edge length {e} outside 1..{k - 1}"))
            if child.depth != node.depth + e:
                violations.append(
                    (child.node_id, "depth", f"depth {child.depth} != {node.depth} + {e}")
                )
            stack.append(child)

    leaf_depths = sorted(leaf.depth for leaf in leaves)
    if len(leaves) != len(bounds):
        violations.append((-1, "leaf-count", f"{len(leaves)} leaves for {len(bounds)} bounds"))
        signature_check = False
    else:
        signature_check = all(dep <= bound for dep, bound in zip(leaf_depths, bounds))
    labels = [leaf.leaf_label for leaf in leaves]
    if all(lab is not None for lab in labels) and sorted(labels) != bounds:
        violations.append((-1, "leaf-labels", f"labels {sorted(labels)} differ from bounds {bounds}"))
    return ValidationReport(
        valid=not violations and signature_check,
        violations=violations,
        leaf_depths=leaf_depths,
        signature_check=signature_check,
    )


def relabel(tree: SplitTree, d) -> SplitTree:
    """Copy of ``tree`` with its leaves labeled by the bounds ``d``.

    The shallowest leaf gets the smallest bound and so on; possible
    exactly when the sorted leaf depths are bounded by sorted ``d``.
    """
    new_tree = parse_tree(export_tree(tree, "json"))
    leaves = sorted(new_tree.leaves(), key=lambda leaf: (leaf.depth, leaf.node_id))
    bounds = sorted(d)
    if len(bounds) != len(leaves):
        raise InputError(f"{len(leaves)} leaves cannot take {len(bounds)} labels")
    for leaf, label in zip(leaves, bounds):
        if leaf.depth > label:
            raise InputError(f"leaf at depth {leaf.depth} cannot take bound {label}")
        leaf.leaf_label = label
    return new_tree


def _node_to_dict(node: TreeNode) -> dict:
    return {
        "id": node.node_id,
        "depth": node.depth,
        "leaf_label": node.leaf_label,
        "children": [
            {"edge_length": e, "node": _node_to_dict(child)} for e, child in node.children
        ],
    }


def _node_from_dict(data: dict) -> TreeNode:
    return TreeNode(
        node_id=data["id"],
        depth=data["depth"],
        leaf_label=data["leaf_label"],
        children=[
            (entry["edge_length"], _node_from_dict(entry["node"]))
            for entry in data["children"]
        ],
    )


def export_tree(tree: SplitTree, format: str = "json") -> str:
    """Serialize the tree deterministically as JSON or Graphviz DOT."""
    if format == "json":
        return json.dumps({"k": tree.k, "root": _node_to_dict(tree.root)}, indent=2)
    if format == "dot":
        lines = ["digraph splittree {"]
        order: list[TreeNode] = []
        stack = [tree.root]
        while stack:
            node = stack.pop()
            order.append(node)
            stack.extend(child for _, child in reversed(node.children))
        for node in order:
            if node.is_leaf():
                bound = "" if node.leaf_label is None else f" <= {node.leaf_label}"
                lines.append(
                    f'  n{node.node_id} [label="{node.node_id} ({node.depth}){bound}" shape=box];'
                )
            else:
                lines.append(f'  n{node.node_id} [label="{node.node_id} ({node.depth})"];')
        for node in order:
            for e, child in node.children:
                lines.append(f'  n{node.node_id} -> n{child.node_id} [label="{e}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise InputError(f"unknown tree format {format!r}")


def parse_tree(text: str) -> SplitTree:
    """Inverse of export_tree(..., 'json')."""
    data = json.loads(text)
    return SplitTree(k=data["k"], root=_node_from_dict(data["root"]))
