"""
Finite Groups
=============
Groups given by multiplication tables, validated exhaustively, plus a small
catalog (cyclic C₂…C₈, dihedral D₃/D₄, quaternion Q₈) and a loader for
plain-text Cayley tables.

Table format: one row per element, whitespace-separated labels, identity
row first. Row i lists gᵢ·g₀, gᵢ·g₁, …, so the first row and the first
column both list the elements in order. A leading row-label column
(each row prefixed by its element) is accepted and dropped. Lines starting
with `#` are comments.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Sequence, Tuple, Union

from errors import GroupTableError
from logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    labels: Tuple[str, ...]
    table: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        validate(self)

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def identity(self) -> str:
        return self.labels[0]

    def index(self, g: str) -> int:
        try:
            return self.labels.index(g)
        except ValueError:
            raise GroupTableError(f"{g!r} is not an element of {self.name}") from None

    def mul(self, g: str, h: str) -> str:
        return self.labels[self.table[self.index(g)][self.index(h)]]

    def inverse(self, g: str) -> str:
        i = self.index(g)
        for j in range(self.order):
            if self.table[i][j] == 0:
                return self.labels[j]
        raise GroupTableError(f"{g!r} has no inverse")  # pragma: no cover

    def power(self, g: str, n: int) -> str:
        out = self.identity
        for _ in range(n):
            out = self.mul(out, g)
        return out

    def element_order(self, g: str) -> int:
        n, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            n += 1
        return n

    def powers(self, g: str) -> List[str]:
        """[e, g, g², …, g^{m−1}] for g of order m."""
        return [self.power(g, n) for n in range(self.element_order(g))]


def validate(group: FiniteGroup) -> None:
    """Closure, identity, inverses and associativity, checked exhaustively."""
    n = len(group.labels)
    if n == 0 or len(set(group.labels)) != n:
        raise GroupTableError(f"{group.name}: labels must be distinct and nonempty")
    if len(group.table) != n or any(len(row) != n for row in group.table):
        raise GroupTableError(f"{group.name}: table must be {n}x{n}")
    t = group.table
    if any(not 0 <= t[a][b] < n for a in range(n) for b in range(n)):
        raise GroupTableError(f"{group.name}: table is not closed")
    if any(t[0][a] != a or t[a][0] != a for a in range(n)):
        raise GroupTableError(f"{group.name}: first element is not the identity")
    for a in range(n):
        if not any(t[a][b] == 0 and t[b][a] == 0 for b in range(n)):
            raise GroupTableError(f"{group.name}: {group.labels[a]} has no inverse")
    for a, b, c in itertools.product(range(n), repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            raise GroupTableError(
                f"{group.name}: ({group.labels[a]}{group.labels[b]}){group.labels[c]} "
                f"!= {group.labels[a]}({group.labels[b]}{group.labels[c]})"
            )


def from_rule(name: str, labels: Sequence[str], rule) -> FiniteGroup:
    index: Dict[str, int] = {label: i for i, label in enumerate(labels)}
    table = tuple(tuple(index[rule(g, h)] for h in labels) for g in labels)
    return FiniteGroup(name, tuple(labels), table)


def cyclic(n: int) -> FiniteGroup:
    labels = ["e"] + [f"g{k}" for k in range(1, n)]

    def rule(a: str, b: str) -> str:
        return labels[(labels.index(a) + labels.index(b)) % n]

    return from_rule(f"C{n}", labels, rule)


def dihedral(n: int) -> FiniteGroup:
    """D_n of order 2n: rotations r^k and reflections s r^k, with s r s = r⁻¹."""
    elements = [(0, k) for k in range(n)] + [(1, k) for k in range(n)]

    def label(x: Tuple[int, int]) -> str:
        flip, k = x
        if flip == 0:
            return "e" if k == 0 else f"r{k}"
        return f"s{k}"

    def rule(a: str, b: str) -> str:
        (fa, ka), (fb, kb) = (elements[labels.index(a)], elements[labels.index(b)])
        # (s^fa r^ka)(s^fb r^kb) = s^(fa+fb) r^(±ka + kb)
        k = (-ka if fb else ka) + kb
        return label(((fa + fb) % 2, k % n))

    labels = [label(x) for x in elements]
    return from_rule(f"D{n}", labels, rule)


def quaternion() -> FiniteGroup:
    """Q₈ = {±1, ±i, ±j, ±k}."""
    # fmt: off
    units = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    # fmt: on

    def split(x: str) -> Tuple[int, str]:
        return (-1, x[1:]) if x.startswith("-") else (1, x)

    def rule(a: str, b: str) -> str:
        (sa, ua), (sb, ub) = split(a), split(b)
        sign, unit = units[(ua, ub)]
        return ("-" if sa * sb * sign < 0 else "") + unit

    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return from_rule("Q8", labels, rule)


def catalog() -> Dict[str, FiniteGroup]:
    groups = {f"C{n}": cyclic(n) for n in range(2, 9)}
    groups.update({"D3": dihedral(3), "D4": dihedral(4), "Q8": quaternion()})
    return groups


def trivial_group() -> FiniteGroup:
    return FiniteGroup("C1", ("e",), ((0,),))


def parse_table(text: str, name: str = "table") -> FiniteGroup:
    rows: List[List[str]] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append(line.split())
    if not rows:
        raise GroupTableError(f"{name}: empty table")
    if all(len(row) == len(rows) + 1 for row in rows):
        # optional row-label column: g_i followed by g_i·g_0 = g_i
        for row in rows:
            if row[0] != row[1]:
                raise GroupTableError(f"{name}: row label {row[0]!r} does not match its row")
        rows = [row[1:] for row in rows]
    labels = rows[0]
    index = {label: i for i, label in enumerate(labels)}
    if [row[0] for row in rows] != labels:
        raise GroupTableError(f"{name}: first column must repeat the first row")
    try:
        table = tuple(tuple(index[x] for x in row) for row in rows)
    except KeyError as exc:
        raise GroupTableError(f"{name}: unknown label {exc.args[0]!r}") from None
    return FiniteGroup(name, tuple(labels), table)


def load_table(path: Union[str, Path]) -> FiniteGroup:
    path = Path(path)
    logger.debug(f"Loading group table from {path}")
    return parse_table(path.read_text(encoding="utf-8"), name=path.stem)


def format_table(group: FiniteGroup) -> str:
    return "\n".join(
        " ".join(group.labels[j] for j in row) for row in group.table
    ) + "\n"
