"""
Plain-text matrix files.

Format: lines starting with ``#`` and blank lines are ignored; the first
remaining line is ``m n``; then come m rows of n whitespace-separated
entries, each a decimal real ``a`` or a complex pair ``(a,b)``.
"""

import re
from pathlib import Path

import numpy as np

from svdperturb.errors import MatrixFileError
from svdperturb.linalg import Matrix

_REAL = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_REAL_RE = re.compile(rf"{_REAL}")
_COMPLEX_RE = re.compile(rf"\(\s*({_REAL})\s*,\s*({_REAL})\s*\)")
_TOKEN_RE = re.compile(r"\([^)]*\)?|\S+")


def _entry(token: str, line: int, column: int) -> complex:
    if _REAL_RE.fullmatch(token):
        return complex(float(token), 0.0)
    m = _COMPLEX_RE.fullmatch(token)
    if m:
        return complex(float(m.group(1)), float(m.group(2)))
    raise MatrixFileError(f"line {line}, column {column}: malformed entry {token!r}", line=line, column=column)


def parse_matrix(text: str, source: str = "<string>") -> Matrix:
    """
    Parse the matrix text format.

    Raises:
        MatrixFileError: malformed header or entry, or a row/entry count
            that does not match the header; line and column are 1-based.
    """
    lines = [
        (k, raw) for k, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    if not lines:
        raise MatrixFileError(f"{source}: no header line 'm n'", line=None, column=None)

    header_no, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise MatrixFileError(f"{source}: line {header_no}: header must be 'm n', got {header.strip()!r}", line=header_no, column=1)
    m, n = int(parts[0]), int(parts[1])
    if m < 1 or n < 1:
        raise MatrixFileError(f"{source}: line {header_no}: dimensions must be positive, got {m}x{n}", line=header_no, column=1)

    rows = lines[1:]
    if len(rows) != m:
        last = rows[-1][0] if rows else header_no
        raise MatrixFileError(
            f"{source}: expected {m} rows, found {len(rows)}",
            line=last, column=None, expected_rows=m, found_rows=len(rows),
        )

    out = np.empty((m, n), dtype=np.complex128)
    for i, (line_no, raw) in enumerate(rows):
        tokens = list(_TOKEN_RE.finditer(raw))
        if len(tokens) != n:
            raise MatrixFileError(
                f"{source}: line {line_no}: expected {n} entries, found {len(tokens)}",
                line=line_no, column=None, expected_entries=n, found_entries=len(tokens),
            )
        for j, tok in enumerate(tokens):
            out[i, j] = _entry(tok.group(0), line_no, tok.start() + 1)
    return out


def parse_matrix_file(path: Path) -> Matrix:
    """Read and parse a matrix file; I/O errors are reported as MatrixFileError."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise MatrixFileError(f"cannot read {path}: {e.strerror or e}", path=str(path)) from e
    return parse_matrix(text, source=str(path))

