"""Placement, XOR delivery and decoding driven by a PDA.

Files are split into F equal packets.  User k caches packet j of every file
whenever cell (j, k) is a star.  For every color s the server broadcasts the
XOR of packet j of file d_k over all cells (j, k) holding s; each user
strips the terms it has cached to recover its own missing packet.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from .errors import DemandError, DivisibilityError, InvalidPdaError, MissingCacheEntryError
from .pda import Pda, verify_pda


def xor_bytes(*chunks: bytes) -> bytes:
    n = len(chunks[0])
    acc = 0
    for c in chunks:
        acc ^= int.from_bytes(c, "big")
    return acc.to_bytes(n, "big")


@dataclass(frozen=True)
class Library:
    files: tuple[bytes, ...]
    F: int

    def __post_init__(self):
        object.__setattr__(self, "files", tuple(bytes(f) for f in self.files))
        if not self.files:
            raise DivisibilityError("library needs at least one file")
        L = len(self.files[0])
        if any(len(f) != L for f in self.files):
            raise DivisibilityError("all files must have equal length")
        if L == 0 or L % self.F:
            raise DivisibilityError(f"file length {L} is not a positive multiple of F={self.F}")

    @property
    def N(self) -> int:
        return len(self.files)

    @property
    def file_len(self) -> int:
        return len(self.files[0])

    @property
    def packet_len(self) -> int:
        return self.file_len // self.F

    @cached_property
    def packets(self) -> tuple[tuple[bytes, ...], ...]:
        n = self.packet_len
        return tuple(tuple(f[j * n : (j + 1) * n] for j in range(self.F)) for f in self.files)

    def packet(self, i: int, j: int) -> bytes:
        """Packet j of file i, both 1-based."""
        return self.packets[i - 1][j - 1]

    @classmethod
    def random(cls, N: int, F: int, packet_len: int, rng: random.Random) -> "Library":
        return cls(tuple(rng.randbytes(F * packet_len) for _ in range(N)), F)


@dataclass(frozen=True)
class UserCache:
    user: int
    entries: dict  # (i, j) -> packet bytes

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class Signal:
    color: int
    payload: bytes
    terms: tuple[tuple[int, int], ...]  # (k, j), sorted by user


@dataclass(frozen=True)
class DeliveryReport:
    demands: tuple[int, ...]
    signals: tuple[Signal, ...]
    decoded_ok: tuple[bool, ...]
    F: int
    packet_len: int

    @property
    def signals_sent(self) -> int:
        return len(self.signals)

    @property
    def measured_rate(self) -> Fraction:
        return Fraction(self.signals_sent, self.F)

    @property
    def link_bytes(self) -> int:
        return sum(len(s.payload) for s in self.signals)

    @property
    def all_ok(self) -> bool:
        return all(self.decoded_ok)

    def render(self) -> str:
        lines = [f"user {k}: {'OK' if ok else 'FAIL'}" for k, ok in enumerate(self.decoded_ok, 1)]
        lines.append(f"signals={self.signals_sent} rate={self.measured_rate} bytes={self.link_bytes}")
        K = len(self.decoded_ok)
        lines.append(f"{sum(self.decoded_ok)}/{K} {'OK' if self.all_ok else 'FAIL'} rate={self.measured_rate}")
        return "\n".join(lines) + "\n"


def _require_pda(p: Pda):
    report = verify_pda(p)
    if not report.valid:
        raise InvalidPdaError(f"not a PDA: {report.violations[0]}")


def _check_library(p: Pda, lib: Library):
    if lib.F != p.F:
        raise DivisibilityError(f"library split into {lib.F} packets but the PDA has F={p.F}")


def parse_demands(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise DemandError(f"demands must be comma-separated integers: {text!r}") from exc


def check_demands(p: Pda, lib: Library, d: Sequence[int]) -> tuple[int, ...]:
    d = tuple(d)
    if len(d) != p.K:
        raise DemandError(f"demand vector has {len(d)} entries, expected K={p.K}")
    for k, i in enumerate(d, 1):
        if not 1 <= i <= lib.N:
            raise DemandError(f"user {k} requests file {i}, outside 1..{lib.N}")
    return d


def place(p: Pda, lib: Library) -> list[UserCache]:
    _require_pda(p)
    _check_library(p, lib)
    return _place(p, lib)


def _place(p, lib):
    caches = []
    packets = lib.packets
    for k in range(1, p.K + 1):
        stars = [j for j in range(1, p.F + 1) if p.cell(j, k) is None]
        entries = {(i, j): packets[i - 1][j - 1] for i in range(1, lib.N + 1) for j in stars}
        caches.append(UserCache(k, entries))
    return caches


def deliver(p: Pda, lib: Library, d: Sequence[int]) -> list[Signal]:
    """One signal per color, in color order, with no pruning for repeated demands."""
    _require_pda(p)
    _check_library(p, lib)
    return _deliver(p, lib, check_demands(p, lib, d))


def _deliver(p, lib, d):
    signals = []
    for s, cells in p.color_classes().items():
        terms = tuple(sorted((k, j) for j, k in cells))
        payload = xor_bytes(*(lib.packet(d[k - 1], j) for k, j in terms))
        signals.append(Signal(s, payload, terms))
    return signals


def decode(p: Pda, cache: UserCache, signals: Sequence[Signal], d: Sequence[int], k: int) -> bytes:
    """Rebuild the file requested by user k from its cache and the broadcast."""
    d = tuple(d)
    want = d[k - 1]
    by_color = {sig.color: sig for sig in signals}
    packets = []
    for j in range(1, p.F + 1):
        s = p.cell(j, k)
        if s is None:
            try:
                packets.append(cache.entries[(want, j)])
            except KeyError:
                raise MissingCacheEntryError(f"user {k} lacks cached packet ({want},{j})") from None
            continue
        sig = by_color.get(s)
        if sig is None:
            raise MissingCacheEntryError(f"no signal for color {s} needed by user {k}")
        others = []
        for k2, j2 in sig.terms:
            if (k2, j2) == (k, j):
                continue
            entry = cache.entries.get((d[k2 - 1], j2))
            if entry is None:
                raise MissingCacheEntryError(
                    f"user {k} cannot strip term W_({d[k2 - 1]},{j2}) from signal {s}"
                )
            others.append(entry)
        packets.append(xor_bytes(sig.payload, *others))
    return b"".join(packets)


def simulate(
    p: Pda,
    N: int,
    packet_len: int,
    demands: Optional[Sequence[int]] = None,
    seed: int = 0,
) -> DeliveryReport:
    """Run placement, delivery and decoding for every user.

    File bytes come from ``seed``; demands too when not given explicitly.
    """
    if N < 1 or packet_len < 1:
        raise DemandError(f"need N >= 1 and packet_len >= 1, got N={N}, packet_len={packet_len}")
    _require_pda(p)
    rng = random.Random(seed)
    lib = Library.random(N, p.F, packet_len, rng)
    if demands is None:
        demands = [rng.randint(1, N) for _ in range(p.K)]
    d = check_demands(p, lib, demands)
    caches = _place(p, lib)
    signals = _deliver(p, lib, d)
    ok = tuple(decode(p, caches[k - 1], signals, d, k) == lib.files[d[k - 1] - 1] for k in range(1, p.K + 1))
    return DeliveryReport(d, tuple(signals), ok, p.F, packet_len)


def format_signal(sig: Signal, d: Sequence[int], row_labels: Optional[Sequence[str]] = None) -> str:
    """``s: W_{i,j} ⊕ ...`` with optional packet labels in place of row numbers."""
    terms = []
    for k, j in sig.terms:
        label = row_labels[j - 1] if row_labels else str(j)
        terms.append(f"W_{{{d[k - 1]},{label}}}")
    return f"{sig.color}: " + " ⊕ ".join(terms)
