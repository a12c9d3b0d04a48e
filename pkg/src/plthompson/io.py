"""Text formats for maps and commutator lists.

A map file starts with a header line ``n r`` followed by one breakpoint
``x y`` per line, rationals written ``p/q``.  Blank lines and lines starting
with ``#`` are ignored.

A pairs file lists ``2k`` map-file paths, one per line; consecutive lines
form the pairs ``(x_i, y_i)``.  Relative paths are resolved against the
pairs file's directory.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence, Union

from .numbers import GroupContext, format_rational, parse_rational
from .plmaps import PLMap

PathLike = Union[str, Path]


class FormatError(ValueError):
    pass


def _lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for no, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if line and not line.startswith("#"):
            out.append((no, line.split()))
    return out


def parse_map(text: str) -> PLMap:
    rows = _lines(text)
    if not rows:
        raise FormatError("empty map file")
    no, head = rows[0]
    if len(head) != 2:
        raise FormatError(f"line {no}: header must be 'n r'")
    try:
        ctx = GroupContext(int(head[0]), parse_rational(head[1]))
        pts = []
        for no, fields in rows[1:]:
            if len(fields) != 2:
                raise FormatError(f"line {no}: expected 'x y'")
            pts.append((parse_rational(fields[0]), parse_rational(fields[1])))
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(f"line {no}: {exc}") from exc
    return PLMap(ctx, pts)


def format_map(x: PLMap) -> str:
    lines = [f"{x.ctx.n} {format_rational(x.ctx.r)}"]
    lines += [f"{format_rational(u)} {format_rational(v)}" for u, v in x.breakpoints]
    return "\n".join(lines) + "\n"


def load_map(path: PathLike) -> PLMap:
    return parse_map(Path(path).read_text(encoding="utf-8"))


def save_map(path: PathLike, x: PLMap) -> None:
    Path(path).write_text(format_map(x), encoding="utf-8")


def load_pairs(path: PathLike) -> list[tuple[PLMap, PLMap]]:
    path = Path(path)
    names = [fields[0] for _, fields in _lines(path.read_text(encoding="utf-8"))]
    if not names or len(names) % 2:
        raise FormatError(f"{path}: need an even, nonzero number of map paths, got {len(names)}")
    maps = [load_map(path.parent / name) for name in names]
    return list(zip(maps[0::2], maps[1::2]))


def save_pairs(path: PathLike, pairs: Sequence[tuple[PLMap, PLMap]], prefix: str = "c") -> list[Path]:
    """Write each entry to its own map file next to ``path`` and the list itself to ``path``."""
    path = Path(path)
    written, names = [], []
    for i, pair in enumerate(pairs):
        for tag, x in zip("xy", pair):
            name = f"{prefix}{i}_{tag}.map"
            save_map(path.parent / name, x)
            written.append(path.parent / name)
            names.append(name)
    path.write_text("\n".join(names) + "\n", encoding="utf-8")
    return written
