"""Plain-text descriptors for the command line.

A descriptor is a list of ``key value...`` lines; ``#`` starts a comment. A
file whose first meaningful line starts with ``m`` is a domain file and is
read as ``domain <that file>``. Every parse error names the file and line.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .domain import BUNDLED, DomainModel, bundled_domain, load_domain
from .errors import DescriptorError, FTLError


@dataclass
class Entry:
    line: int
    key: str
    args: list[str]


@dataclass
class Descriptor:
    source: str
    entries: list[Entry] = field(default_factory=list)
    base: Path = Path(".")

    def all(self, key: str) -> list[Entry]:
        return [e for e in self.entries if e.key == key]

    def one(self, key: str) -> Entry | None:
        found = self.all(key)
        if len(found) > 1:
            raise DescriptorError(self.source, found[1].line, f"'{key}' given more than once")
        return found[0] if found else None

    def error(self, entry: Entry | None, msg: str) -> DescriptorError:
        return DescriptorError(self.source, entry.line if entry else 0, msg)

    # typed accessors ------------------------------------------------------------
    def float(self, key: str, default: float | None = None) -> float | None:
        e = self.one(key)
        if e is None:
            return default
        if len(e.args) != 1:
            raise self.error(e, f"'{key}' takes one number")
        return _num(self, e, e.args[0])

    def int(self, key: str, default: int | None = None) -> int | None:
        e = self.one(key)
        if e is None:
            return default
        if len(e.args) != 1:
            raise self.error(e, f"'{key}' takes one integer")
        try:
            return int(e.args[0])
        except ValueError:
            raise self.error(e, f"'{key}' expects an integer, got {e.args[0]!r}") from None

    def word(self, key: str, default: str | None = None, choices=None) -> str | None:
        e = self.one(key)
        if e is None:
            return default
        if len(e.args) != 1:
            raise self.error(e, f"'{key}' takes one word")
        if choices is not None and e.args[0] not in choices:
            raise self.error(e, f"'{key}' must be one of {', '.join(choices)}, got {e.args[0]!r}")
        return e.args[0]

    def domains(self, default=("egg1",)) -> list[DomainModel]:
        entries = self.all("domain")
        if not entries:
            return [bundled_domain(n) for n in default]
        return [resolve_domain(self, e) for e in entries]

    def points(self) -> list[np.ndarray]:
        out = []
        for e in self.all("point"):
            if len(e.args) != 4:
                raise self.error(e, "'point' takes re1 im1 re2 im2")
            v = [_num(self, e, a) for a in e.args]
            out.append(np.array([complex(v[0], v[1]), complex(v[2], v[3])]))
        return out

    def check_keys(self, allowed) -> None:
        for e in self.entries:
            if e.key not in allowed:
                raise self.error(e, f"unknown key {e.key!r} (expected one of {', '.join(sorted(allowed))})")


def _num(d: Descriptor, e: Entry, text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise d.error(e, f"expected a number, got {text!r}") from None


def parse_indices(d: Descriptor, e: Entry, text: str) -> list[float]:
    """``a..b`` (step 1), ``a..b:step`` or geometric ``a..b*factor``."""
    try:
        if ".." not in text:
            return [float(x) for x in text.split(",")]
        lo, rest = text.split("..", 1)
        if "*" in rest:
            hi, fac = rest.split("*", 1)
            lo_f, hi_f, fac_f = float(lo), float(hi), float(fac)
            if fac_f <= 1 or lo_f <= 0:
                raise ValueError
            out = []
            v = lo_f
            while v <= hi_f * (1 + 1e-12):
                out.append(v)
                v *= fac_f
            return out
        hi, step = (rest.split(":", 1) + ["1"])[:2]
        lo_i, hi_i, st = int(lo), int(hi), int(step)
        if st <= 0 or hi_i < lo_i:
            raise ValueError
        return [float(x) for x in range(lo_i, hi_i + 1, st)]
    except ValueError:
        raise d.error(e, f"bad index range {text!r} (use a..b, a..b:step or a..b*factor)") from None


def resolve_domain(d: Descriptor, e: Entry) -> DomainModel:
    if len(e.args) != 1:
        raise d.error(e, "'domain' takes a file path or a bundled name")
    name = e.args[0]
    path = (d.base / name) if not Path(name).is_absolute() else Path(name)
    if path.is_file():
        return load_domain(path)
    if name in BUNDLED:
        return bundled_domain(name)
    raise d.error(e, f"no domain file {name!r} (bundled: {', '.join(BUNDLED)})")


def loads_descriptor(text: str, source: str = "<string>", base: Path = Path(".")) -> Descriptor:
    d = Descriptor(source, base=base)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        d.entries.append(Entry(lineno, parts[0], parts[1:]))
    return d


def load_descriptor(path) -> Descriptor:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DescriptorError(str(path), 0, f"cannot read: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise DescriptorError(str(path), 0, "not valid UTF-8") from None
    first = next((ln.split()[0] for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")), "")
    if first == "m":
        # a bare domain file: validate it now so errors point into it
        load_domain(path)
        return Descriptor(str(path), [Entry(0, "domain", [path.name])], base=path.parent)
    return loads_descriptor(text, str(path), path.parent)


__all__ = ["Descriptor", "Entry", "FTLError", "load_descriptor", "loads_descriptor", "parse_indices", "resolve_domain"]
