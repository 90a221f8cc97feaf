"""Plain-text file formats: spaces, collections, maps, flat configs.

Space files (whitespace-separated):

    matrix <n>            |  points <n> dim <k>
    <n rows of n values>  |  <n rows of k coordinates>
    [labels]              |  [labels]
    [<n label lines>]     |  [<n label lines>]

Collection files hold one subset per line as comma-separated point indices;
a line consisting of ``+singletons`` expands to every singleton at that
position (duplicates are dropped, first occurrence wins). Map files hold one
line per point, ``i : j,k,l``. Config files are flat ``key=value`` lines
with ``#`` comments.

Parse errors carry 1-based line numbers of the original file.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Union

import numpy as np

from .errors import SpaceFileError
from .fixedpoint import MultiMap
from .space import FiniteMetricSpace, SubsetHandle, validate_metric

PathLike = Union[str, Path]


def _content_lines(text: str):
    """(line_number, stripped_text) for nonblank lines, 1-based numbering."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped:
            yield lineno, stripped


def parse_space_text(text: str, tol: float = 1e-9) -> FiniteMetricSpace:
    """Parse and validate a space file's contents."""
    lines = list(_content_lines(text))
    if not lines:
        raise SpaceFileError(1, "empty space file")
    lineno, header = lines[0]
    tokens = header.split()
    if tokens[0] == "matrix" and len(tokens) == 2:
        n, width = _parse_count(lineno, tokens[1]), None
    elif (
        tokens[0] == "points" and len(tokens) == 4 and tokens[2] == "dim"
    ):
        n = _parse_count(lineno, tokens[1])
        width = _parse_count(lineno, tokens[3])
    else:
        raise SpaceFileError(
            lineno, f"expected 'matrix <n>' or 'points <n> dim <k>', got {header!r}"
        )
    rows = []
    body = lines[1:]
    if len(body) < n:
        last = body[-1][0] if body else lineno
        raise SpaceFileError(last, f"expected {n} data rows, file ended early")
    for rowno, (ln, content) in enumerate(body[:n]):
        parts = content.split()
        expect = n if width is None else width
        if len(parts) != expect:
            raise SpaceFileError(ln, f"expected {expect} values, got {len(parts)}")
        try:
            rows.append([float(p) for p in parts])
        except ValueError:
            raise SpaceFileError(ln, f"non-numeric value in row {rowno}") from None
    labels: Optional[list[str]] = None
    rest = body[n:]
    if rest:
        ln, content = rest[0]
        if content != "labels":
            raise SpaceFileError(ln, f"unexpected content {content!r} after data rows")
        label_lines = rest[1:]
        if len(label_lines) != n:
            where = label_lines[-1][0] if label_lines else ln
            raise SpaceFileError(where, f"expected {n} label lines, got {len(label_lines)}")
        labels = [content for _, content in label_lines]
    table = np.array(rows) if width is None else _euclidean(np.array(rows))
    return validate_metric(table, labels=labels, tol=tol)


def _euclidean(pts: np.ndarray) -> np.ndarray:
    d2 = np.zeros((pts.shape[0], pts.shape[0]))
    for k in range(pts.shape[1]):
        diff = pts[:, k][:, None] - pts[:, k][None, :]
        d2 += diff * diff
    return np.sqrt(d2)


def _parse_count(lineno: int, token: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise SpaceFileError(lineno, f"expected an integer, got {token!r}") from None
    if value < 1:
        raise SpaceFileError(lineno, f"count must be >= 1, got {value}")
    return value


def parse_space_file(path: PathLike, tol: float = 1e-9) -> FiniteMetricSpace:
    return parse_space_text(Path(path).read_text(), tol=tol)


def format_space(space: FiniteMetricSpace, with_labels: bool = True) -> str:
    out = [f"matrix {space.n}"]
    for row in space.dist:
        out.append(" ".join(repr(float(v)) for v in row))
    if with_labels:
        out.append("labels")
        out.extend(space.labels)
    return "\n".join(out) + "\n"


def write_space_file(space: FiniteMetricSpace, path: PathLike,
                     with_labels: bool = True) -> None:
    Path(path).write_text(format_space(space, with_labels))


def parse_collection_text(text: str, space: FiniteMetricSpace) -> list[SubsetHandle]:
    handles: list[SubsetHandle] = []
    seen: set[int] = set()

    def push(handle: SubsetHandle) -> None:
        if handle.bits not in seen:
            seen.add(handle.bits)
            handles.append(handle)

    for lineno, content in _content_lines(text):
        if content == "+singletons":
            for i in range(space.n):
                push(space.singleton(i))
            continue
        try:
            indices = [int(tok) for tok in content.split(",")]
        except ValueError:
            raise SpaceFileError(lineno, f"bad subset line {content!r}") from None
        try:
            push(space.subset(indices))
        except ValueError as err:
            raise SpaceFileError(lineno, str(err)) from None
    if not handles:
        raise SpaceFileError(1, "collection file holds no subsets")
    return handles


def parse_collection_file(path: PathLike, space: FiniteMetricSpace) -> list[SubsetHandle]:
    return parse_collection_text(Path(path).read_text(), space)


def format_collection(members) -> str:
    lines = [",".join(str(i) for i in m) for m in members]
    return "\n".join(lines) + "\n"


def write_collection_file(members, path: PathLike) -> None:
    Path(path).write_text(format_collection(members))


def parse_map_text(text: str, space: FiniteMetricSpace) -> MultiMap:
    assigned: dict[int, list[int]] = {}
    for lineno, content in _content_lines(text):
        head, sep, tail = content.partition(":")
        if not sep:
            raise SpaceFileError(lineno, f"expected 'i : j,k,l', got {content!r}")
        try:
            source = int(head.strip())
            targets = [int(tok) for tok in tail.split(",")]
        except ValueError:
            raise SpaceFileError(lineno, f"bad map line {content!r}") from None
        if not 0 <= source < space.n:
            raise SpaceFileError(lineno, f"point {source} out of range")
        if source in assigned:
            raise SpaceFileError(lineno, f"point {source} assigned twice")
        assigned[source] = targets
    missing = [x for x in range(space.n) if x not in assigned]
    if missing:
        raise SpaceFileError(1, f"map missing images for points {missing}")
    return MultiMap.from_indices(space, [assigned[x] for x in range(space.n)])


def parse_map_file(path: PathLike, space: FiniteMetricSpace) -> MultiMap:
    return parse_map_text(Path(path).read_text(), space)


def parse_config_text(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, content in _content_lines(text):
        if content.startswith("#"):
            continue
        key, sep, value = content.partition("=")
        if not sep:
            raise SpaceFileError(lineno, f"expected key=value, got {content!r}")
        out[key.strip()] = value.strip()
    return out


def parse_config_file(path: PathLike) -> dict[str, str]:
    return parse_config_text(Path(path).read_text())
