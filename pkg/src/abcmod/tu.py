"""Total unimodularity test with a violating-submatrix certificate."""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .matrix import as_matrix


@dataclass(frozen=True)
class TuCertificate:
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    det: int

    def to_json(self):
        return {"rows": [i + 1 for i in self.rows], "cols": [j + 1 for j in self.cols], "det": self.det}


@dataclass(frozen=True)
class TuVerdict:
    is_tu: bool
    certificate: TuCertificate | None = None

    def to_json(self):
        out = {"is_tu": self.is_tu}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def test_tu(M) -> TuVerdict:
    """Decide total unimodularity.

    Entries outside {0, +-1} give a 1x1 certificate.  Otherwise the
    Ghouila-Houri criterion is checked on the shorter side (TU is closed under
    transposition).  On failure the certificate is the first square submatrix
    with |det| >= 2 in order of size, then row, then column combination;
    for {0, +-1} input that submatrix is a minimal violator, so |det| = 2.
    """
    M = as_matrix(M)
    for i, row in enumerate(M):
        for j, x in enumerate(row):
            if x > 1 or x < -1:
                return TuVerdict(False, TuCertificate((i,), (j,), x))
    if M.rows == 0 or M.cols == 0:
        return TuVerdict(True)
    side = M.tolist() if M.rows <= M.cols else M.T.tolist()
    if kernels.ghouila_houri(side):
        return TuVerdict(True)
    rows, cols, det = kernels.first_bad_minor(M.tolist(), 1)
    return TuVerdict(False, TuCertificate(tuple(rows), tuple(cols), det))


test_tu.__test__ = False


def is_tu(M) -> bool:
    return test_tu(M).is_tu


def extend_with_units(unit_rows: dict[int, int], rows, cols, n):
    """Extend a square submatrix to n x n rows by appending unit rows.

    ``unit_rows`` maps a column index to the index of a row that is the unit
    vector for that column (within the columns considered).  The result has
    the same |det| as the submatrix on (rows, cols) when the submatrix spans
    every column outside ``unit_rows``.
    """
    chosen = list(rows)
    for c in range(n):
        if c not in cols:
            chosen.append(unit_rows[c])
    return tuple(sorted(chosen))

