"""The inverse Collatz tree rooted at 1.

Every node ``m`` has the doubling child ``2m``; nodes congruent to 4 mod 6
(other than 4 itself) also have the odd child ``(m - 1) / 3``.  Those are
exactly the branch points ``6k + 10``.  Odd multiples of 3 root subtrees
that never branch, because ``3j * 2**i`` is never 4 mod 6.
"""

from __future__ import annotations

import csv
import io
from collections import deque
from collections.abc import Iterator
from dataclasses import dataclass

from .core import _check_natural
from .errors import CollatzError


@dataclass(frozen=True)
class TreeNode:
    value: int
    children: tuple["TreeNode", ...] = ()

    def walk(self) -> Iterator[tuple["TreeNode", "TreeNode | None"]]:
        """Yield ``(node, parent)`` pairs breadth first, root first."""
        queue = deque([(self, None)])
        while queue:
            node, parent = queue.popleft()
            yield node, parent
            queue.extend((child, node) for child in node.children)

    def values(self) -> list[int]:
        return [node.value for node, _ in self.walk()]


def children(m: int) -> list[int]:
    """Preimages of ``m`` under one Collatz step, doubling child first."""
    _check_natural(m)
    if is_branch_point(m):
        return [2 * m, (m - 1) // 3]
    return [2 * m]


def is_branch_point(m: int) -> bool:
    return m >= 10 and m % 6 == 4


def is_sterile_root(m: int) -> bool:
    return m % 2 == 1 and m % 3 == 0


def generate(root: int, max_value: int) -> TreeNode:
    """All descendants of ``root`` with value at most ``max_value``."""
    _check_natural(root)
    if max_value < root:
        raise CollatzError(f"max_value {max_value} is below root {root}")
    order = [root]
    kids: dict[int, list[int]] = {}
    queue = deque([root])
    while queue:
        m = queue.popleft()
        kept = [c for c in children(m) if c <= max_value]
        kids[m] = kept
        order.extend(kept)
        queue.extend(kept)
    built: dict[int, TreeNode] = {}
    for m in reversed(order):
        built[m] = TreeNode(m, tuple(built[c] for c in kids[m]))
    return built[root]


def to_dot(tree: TreeNode) -> str:
    lines = ["digraph collatz {"]
    for node, parent in tree.walk():
        if parent is None:
            lines.append(f"  {node.value};")
        else:
            lines.append(f"  {parent.value} -> {node.value};")
    lines.append("}")
    return "\n".join(lines) + "\n"


CSV_FIELDS = ("node", "parent", "is_branch_point", "is_sterile_root")


def rows(tree: TreeNode) -> list[dict]:
    return [
        {
            "node": node.value,
            "parent": None if parent is None else parent.value,
            "is_branch_point": is_branch_point(node.value),
            "is_sterile_root": is_sterile_root(node.value),
        }
        for node, parent in tree.walk()
    ]


def to_csv(tree: TreeNode) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows(tree):
        writer.writerow({**row, "parent": "" if row["parent"] is None else row["parent"]})
    return buf.getvalue()
