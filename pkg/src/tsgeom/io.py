"""
CSV ingestion and report serialization.

Input CSV layout::

    # fs=256
    ch1,ch2
    0.1,0.3
    ...

Lines starting with ``#`` are comments; ``# fs=<value>`` sets the sample
rate unless one is passed explicitly.  Columns in which no value parses as
a number (timestamps, annotations) are dropped.  Rows with unparsable or
non-finite values are skipped and counted, or rejected when ``strict``.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import re
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .errors import IngestError, InvalidInputError
from .signal import Signal

__all__ = [
    "ChannelTable",
    "AnalysisReport",
    "read_csv",
    "parse_csv",
    "signals_to_csv",
    "series_to_dict",
    "write_report",
    "report_from_json",
    "digest",
]

_FS_DIRECTIVE = re.compile(r"^#\s*fs\s*=\s*(\S+)\s*$", re.IGNORECASE)


@dataclass(frozen=True, eq=False)
class ChannelTable:
    channels: dict
    sample_rate: float
    source: str = ""
    rows: int = 0
    skipped_rows: tuple = ()
    dropped_columns: tuple = ()
    digest: str = ""

    @property
    def names(self):
        return list(self.channels)

    def __len__(self):
        return len(self.channels)


def digest(data):
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _parse_float(text):
    try:
        v = float(text)
    except ValueError:
        return None
    return v if math.isfinite(v) else None


def read_csv(path, fs=None, strict=False, delimiter=","):
    """Load a multichannel CSV file into a :class:`ChannelTable`."""
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc.strerror or exc}") from None
    return parse_csv(data, fs=fs, strict=strict, delimiter=delimiter, source=str(path))


def parse_csv(data, fs=None, strict=False, delimiter=",", source="<bytes>"):
    """Parse CSV ``data`` (bytes or str); see :func:`read_csv`."""
    raw = data if isinstance(data, bytes) else data.encode("utf-8")
    try:
        text = raw.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise IngestError(f"{source} is not UTF-8 text: {exc.reason}") from None

    header = None
    header_line = None
    directive_fs = None
    body = []  # (line number, cells)
    blank = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith("#"):
            m = _FS_DIRECTIVE.match(stripped)
            if m:
                directive_fs = _parse_float(m.group(1))
                if directive_fs is None or directive_fs <= 0:
                    raise IngestError(f"invalid sample-rate directive {stripped!r}", lineno)
            continue
        if not stripped:
            if header is not None:
                blank.append(lineno)
            continue
        cells = next(csv.reader([line], delimiter=delimiter))
        if header is None:
            header, header_line = [c.strip() for c in cells], lineno
            continue
        body.append((lineno, [c.strip() for c in cells]))

    if header is None:
        raise IngestError(f"{source} has no header row")
    if len(set(header)) != len(header) or any(not h for h in header):
        raise IngestError("header names must be unique and nonempty", header_line)
    for lineno, cells in body:
        if len(cells) != len(header):
            raise IngestError(f"expected {len(header)} columns, found {len(cells)}", lineno)

    rate = fs if fs is not None else directive_fs
    if rate is None:
        raise IngestError("sample rate missing: pass fs or add a '# fs=<value>' line")
    if not (rate > 0 and math.isfinite(rate)):
        raise IngestError(f"sample rate must be > 0, got {rate!r}")

    parsed = [[_parse_float(c) for c in cells] for _, cells in body]
    keep = [j for j in range(len(header)) if any(row[j] is not None for row in parsed)]
    if not keep:
        raise IngestError(f"{source} has no parsable numeric column")
    dropped = tuple(header[j] for j in range(len(header)) if j not in keep)

    good = []
    skipped = list(blank)
    for (lineno, cells), row in zip(body, parsed):
        if any(row[j] is None for j in keep):
            if strict:
                bad = next(cells[j] for j in keep if row[j] is None)
                raise IngestError(f"malformed value {bad!r}", lineno)
            skipped.append(lineno)
            continue
        good.append([row[j] for j in keep])

    arr = np.array(good, dtype=np.float64).reshape(len(good), len(keep))
    channels = {header[j]: Signal(arr[:, k], rate, header[j]) for k, j in enumerate(keep)}
    return ChannelTable(
        channels,
        float(rate),
        source,
        rows=len(good),
        skipped_rows=tuple(sorted(skipped)),
        dropped_columns=dropped,
        digest=digest(raw),
    )


def _fmt(v):
    return repr(float(v))


def signals_to_csv(signals, sample_rate):
    """Serialize equal-length signals as CSV text with an fs directive."""
    names = [s.label for s in signals]
    n = {len(s) for s in signals}
    if len(n) != 1:
        raise InvalidInputError("signals must share one length")
    buf = io.StringIO()
    buf.write(f"# fs={_fmt(sample_rate)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(names)
    cols = [s.samples for s in signals]
    for row in zip(*cols):
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue().encode("utf-8")


def series_to_dict(series):
    """JSON-ready form of a WindowedSeries; undefined values become None."""
    defined = series.defined
    return {
        "measure": series.measure_tag,
        "window_start_s": [float(t) for t in series.window_starts],
        "value": [float(v) if d else None for v, d in zip(series.values, defined)],
        "defined": [bool(d) for d in defined],
    }


@dataclass
class AnalysisReport:
    """Everything needed to reproduce and read back one CLI analysis.

    ``channels`` maps channel name to a JSON-native result dictionary;
    windowed series live under ``results["series"][measure]`` in the form
    produced by :func:`series_to_dict`.
    """

    tool_version: str
    command: str
    input_digest: str
    parameters: dict
    channels: dict = field(default_factory=dict)

    def to_dict(self):
        d = asdict(self)
        d["channels"] = {k: self.channels[k] for k in sorted(self.channels)}
        return d


def _json_bytes(report):
    text = json.dumps(report.to_dict(), sort_keys=True, indent=2, allow_nan=False)
    return (text + "\n").encode("utf-8")


def report_from_json(data):
    d = json.loads(data)
    return AnalysisReport(**d)


def _series_csv(s):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["window_start_s", "value", "defined"])
    for t, v, ok in zip(s["window_start_s"], s["value"], s["defined"]):
        w.writerow([_fmt(t), "" if v is None else _fmt(v), "true" if ok else "false"])
    return buf.getvalue().encode("utf-8")


def _table_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().encode("utf-8")


def _safe(name):
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", name)


def write_report(report, format="json"):
    """Render ``report``; returns ``{filename: bytes}``.

    ``json`` gives a single ``report.json``.  ``csv`` gives one
    ``<channel>.<measure>.csv`` per windowed series plus tables for
    histograms, transition counts and order-parameter traces.
    """
    if format == "json":
        return {"report.json": _json_bytes(report)}
    if format != "csv":
        raise InvalidInputError(f"unsupported report format {format!r}")
    files = {}
    for name in sorted(report.channels):
        res = report.channels[name]
        base = _safe(name)
        for tag in sorted(res.get("series", {})):
            files[f"{base}.{tag}.csv"] = _series_csv(res["series"][tag])
        if "histogram" in res:
            h = res["histogram"]
            total = sum(h)
            rows = [[i + 1, c, _fmt(c / total) if total else ""] for i, c in enumerate(h)]
            files[f"{base}.histogram.csv"] = _table_csv(["configuration", "count", "frequency"], rows)
        if "symbols" in res:
            rows = [[k + 1, c] for k, c in enumerate(res["symbols"])]
            files[f"{base}.symbols.csv"] = _table_csv(["sample_index", "configuration"], rows)
        if "transitions" in res:
            counts = res["transitions"]["counts"]
            rows = [[i + 1, *row] for i, row in enumerate(counts)]
            files[f"{base}.transitions.csv"] = _table_csv(["from", *range(1, 14)], rows)
        if "order_parameter" in res:
            op = res["order_parameter"]
            rows = [[_fmt(t), _fmt(r)] for t, r in zip(op["time_s"], op["r"])]
            files[f"{base}.order_parameter.csv"] = _table_csv(["time_s", "r"], rows)
    return files
