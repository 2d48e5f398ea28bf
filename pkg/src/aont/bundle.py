"""Matrices and designs shipped with the package.

Each entry records the value a consumer should expect (N_2 for matrices,
``(v, k, lambda)`` for designs) and where it comes from. Designs are checked
by :func:`verify_bibd` every time they are loaded.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .designs import Design, verify_bibd
from .errors import DataError
from .gf2 import BinaryMatrix

__all__ = ["BundleEntry", "catalog", "entry", "load_matrix", "load_design", "read_text"]


@dataclass(frozen=True)
class BundleEntry:
    id: str
    kind: str  # "matrix" or "design"
    filename: str
    s: int
    citation: str
    expected_n2: int | None = None
    invertible: bool | None = None
    params: tuple[int, int, int] | None = None

    def to_json(self) -> dict:
        out = {"id": self.id, "kind": self.kind, "s": self.s, "citation": self.citation}
        if self.kind == "matrix":
            out["expected_n2"] = self.expected_n2
            out["invertible"] = self.invertible
        else:
            out["params"] = list(self.params)
        return out

    def summary(self) -> str:
        if self.kind == "matrix":
            return f"{self.id}: s={self.s}, N_2={self.expected_n2}"
        v, k, lam = self.params
        return f"{self.id}: ({v},{k},{lam})-SBIBD"


_EXAMPLE_FLOORS = [(5, 70), (6, 150), (7, 287), (8, 485), (9, 783), (10, 1194), (11, 1744), (12, 2448)]

_ENTRIES = [
    *(BundleEntry(f"example{s}", "matrix", f"example{s}.bmat", s, f"Appendix A, Example {s}", n2, True)
      for s, n2 in _EXAMPLE_FLOORS),
    BundleEntry("exam-3", "matrix", "exam-3.bmat", 3, "Example exam-3", 7, True),
    BundleEntry("exam-4", "matrix", "exam-4.bmat", 4, "Example exam-4", 24, True),
    BundleEntry("exam3", "matrix", "exam3.bmat", 3, "Example exam3", 9, False),
    BundleEntry("exam4", "matrix", "exam4.bmat", 4, "Example exam4", 30, True),
    BundleEntry("doubled8", "matrix", "doubled8.bmat", 8, "Section 5.3, recursive doubling of J_4 - I_4", 426, True),
    BundleEntry("cyclotomy17", "matrix", "cyclotomy17.bmat", 17,
                "Example ex17; cyclotomy table row p = 17", 9962, True),
    BundleEntry("pg3-3", "design", "pg3-3.bibd", 40, "Section 5.4, PG(3,3) complement",
                params=(40, 27, 18)),
    BundleEntry("sbibd31-21-14", "design", "sbibd31-21-14.bibd", 31, "Section 5.4, (31,21,14)-SBIBD",
                params=(31, 21, 14)),
]

_BY_ID = {e.id: e for e in _ENTRIES}


def catalog(kind: str | None = None) -> list[BundleEntry]:
    return [e for e in _ENTRIES if kind is None or e.kind == kind]


def entry(bundle_id: str) -> BundleEntry:
    try:
        return _BY_ID[bundle_id]
    except KeyError:
        raise DataError(f"no bundled item {bundle_id!r}; known: {', '.join(_BY_ID)}") from None


def read_text(bundle_id: str) -> str:
    return resources.files("aont.data").joinpath(entry(bundle_id).filename).read_text()


@lru_cache(maxsize=None)
def load_matrix(bundle_id: str) -> BinaryMatrix:
    e = entry(bundle_id)
    if e.kind != "matrix":
        raise DataError(f"{bundle_id} is a {e.kind}, not a matrix")
    return BinaryMatrix.from_bmat(read_text(bundle_id))


@lru_cache(maxsize=None)
def load_design(bundle_id: str) -> Design:
    e = entry(bundle_id)
    if e.kind != "design":
        raise DataError(f"{bundle_id} is a {e.kind}, not a design")
    d = Design.from_text(read_text(bundle_id))
    got = verify_bibd(d).as_tuple()
    if got != e.params:
        raise DataError(f"{bundle_id} certifies as {got}, catalog says {e.params}")
    return d
