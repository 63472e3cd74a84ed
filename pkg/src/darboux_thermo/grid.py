"""Labeled rectangular grids and their CSV / JSON / gnuplot serializations."""

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass, field

from .errors import PreconditionError

SINGULAR = "singular"


def _encode(value):
    if value is None:
        return SINGULAR
    return format(value, ".17g")


def _decode(text):
    if text == SINGULAR:
        return None
    return float(text)


def _json_value(value):
    if value is None:
        return SINGULAR
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def _from_json_value(value):
    if value == SINGULAR:
        return None
    return float(value)


@dataclass
class SeriesGrid:
    """Row-major grid: the last axis varies fastest.

    ``columns`` maps value-column names to flat lists whose length is the
    product of the axis lengths; ``None`` marks a singular cell.
    """

    axes: list
    columns: dict
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.axes = [(str(name), [float(v) for v in values]) for name, values in self.axes]
        size = self.size
        for name, values in self.axes:
            if not values:
                raise PreconditionError(f"axis {name!r} is empty")
            if any(b < a for a, b in zip(values, values[1:])):
                raise PreconditionError(f"axis {name!r} is not sorted")
        for name, col in self.columns.items():
            if len(col) != size:
                raise PreconditionError(
                    f"column {name!r} has {len(col)} values, grid has {size} points"
                )
            for v in col:
                if v is not None and not math.isfinite(v):
                    raise PreconditionError(f"column {name!r} holds non-finite value {v!r}")

    @property
    def shape(self):
        return tuple(len(values) for _, values in self.axes)

    @property
    def size(self):
        return math.prod(self.shape)

    def points(self):
        return itertools.product(*(values for _, values in self.axes))

    def rows(self):
        names = list(self.columns)
        for i, point in enumerate(self.points()):
            yield point + tuple(self.columns[n][i] for n in names)

    def header(self):
        return [name for name, _ in self.axes] + list(self.columns)

    # -- CSV -----------------------------------------------------------------

    def meta_lines(self):
        lines = [f"# axes: {','.join(name for name, _ in self.axes)}"]
        lines += [f"# {key}: {self.meta[key]}" for key in sorted(self.meta)]
        return lines

    def to_csv(self):
        buf = io.StringIO()
        for line in self.meta_lines():
            buf.write(line + "\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header())
        for row in self.rows():
            writer.writerow([_encode(v) for v in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text):
        meta = {}
        axis_names = None
        body = []
        for line in text.splitlines():
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition(": ")
                if key == "axes":
                    axis_names = value.split(",")
                else:
                    meta[key] = value
            elif line:
                body.append(line)
        if axis_names is None:
            raise PreconditionError("CSV lacks the '# axes:' line")
        reader = csv.reader(body)
        header = next(reader)
        if header[: len(axis_names)] != axis_names:
            raise PreconditionError("CSV header does not start with the axis columns")
        records = [[_decode(v) for v in row] for row in reader]
        n_axes = len(axis_names)
        axes = []
        for i, name in enumerate(axis_names):
            seen = list(dict.fromkeys(r[i] for r in records))
            axes.append((name, seen))
        columns = {
            name: [r[n_axes + j] for r in records] for j, name in enumerate(header[n_axes:])
        }
        return cls(axes, columns, meta)

    # -- JSON ----------------------------------------------------------------

    def to_json(self):
        obj = {
            "axes": [
                {"name": name, "values": [_json_value(v) for v in values]}
                for name, values in self.axes
            ],
            "columns": {k: [_json_value(v) for v in col] for k, col in self.columns.items()},
            "meta": dict(sorted(self.meta.items())),
        }
        return json.dumps(obj, indent=1) + "\n"

    @classmethod
    def from_json(cls, text):
        obj = json.loads(text)
        axes = [(a["name"], [_from_json_value(v) for v in a["values"]]) for a in obj["axes"]]
        columns = {k: [_from_json_value(v) for v in col] for k, col in obj["columns"].items()}
        return cls(axes, columns, obj.get("meta", {}))

    def dumps(self, fmt):
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise PreconditionError(f"unknown format {fmt!r}")

    @classmethod
    def loads(cls, text, fmt):
        return cls.from_csv(text) if fmt == "csv" else cls.from_json(text)

    # -- plotting ------------------------------------------------------------

    def gnuplot_script(self, data_path, title=""):
        """Plain gnuplot script drawing every value column against the inner axis.

        Only CSV output is referenced; one curve is drawn per outer-axis value.
        """
        skip = len(self.meta_lines()) + 1
        header = self.header()
        n_axes = len(self.axes)
        lines = [
            f"# gnuplot script for {data_path}",
            "set datafile separator ','",
            f"set datafile missing '{SINGULAR}'",
            f"set title '{title}'",
            f"set xlabel '{self.axes[-1][0]}'",
            "set key outside right",
        ]
        inner = len(self.axes[-1][1])
        outer_name, outer = (self.axes[0] if n_axes > 1 else ("", [None]))
        plots = []
        for j, col in enumerate(header[n_axes:]):
            col_idx = n_axes + j + 1
            for i, val in enumerate(outer):
                label = col if val is None else f"{col} {outer_name}={val:g}"
                every = f"every ::{i * inner}::{(i + 1) * inner - 1}" if n_axes > 1 else ""
                plots.append(
                    f"'{data_path}' skip {skip} {every} using {n_axes}:{col_idx} "
                    f"with lines title '{label}'"
                )
        lines.append("plot " + ", \\\n     ".join(plots))
        return "\n".join(lines) + "\n"
