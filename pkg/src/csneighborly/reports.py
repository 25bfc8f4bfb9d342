"""Serialization of certificates, refusals, vertices and run reports.

Numbers that carry working precision (functional coefficients, offsets,
margins, coordinates) are written as decimal strings with every digit the
format holds.  Report JSON is written with a fixed key order and a
trailing newline so that equal runs give byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Iterable

from ._precision import Precision, get_precision
from .verify import FaceCertificate, Refusal, SlabCertificate


def _prec(cert) -> Precision:
    return get_precision(cert.precision_bits or 80)


def certificate_to_dict(cert) -> dict:
    """JSON-ready view of a face or slab certificate."""
    p = _prec(cert)
    out = {
        "kind": cert.kind,
        "precision_bits": cert.precision_bits,
        "functional": [p.to_decimal_string(x) for x in cert.functional],
        "margin": p.to_decimal_string(cert.margin),
        "residual": p.to_decimal_string(cert.residual),
    }
    if isinstance(cert, FaceCertificate):
        out["offset"] = p.to_decimal_string(cert.offset)
        out["face_vertices"] = list(cert.face_vertices)
    elif isinstance(cert, SlabCertificate):
        out["b_hi"] = p.to_decimal_string(cert.b_hi)
        out["b_lo"] = p.to_decimal_string(cert.b_lo)
        out["top_set"] = list(cert.top_set)
        out["bottom_set"] = list(cert.bottom_set)
    else:
        raise TypeError(f"not a certificate: {type(cert).__name__}")
    return out


def certificate_from_dict(d: dict, precision: Precision | None = None):
    """Inverse of :func:`certificate_to_dict` (values parsed in ``precision``)."""
    p = precision or get_precision(int(d.get("precision_bits") or 80))
    num = p.parse
    c = p.array([num(x) for x in d["functional"]])
    if d["kind"] == "face":
        return FaceCertificate(c, num(d["offset"]), num(d["margin"]), tuple(d["face_vertices"]),
                               num(d["residual"]), p.bits)
    return SlabCertificate(c, num(d["b_hi"]), num(d["b_lo"]), num(d["margin"]), tuple(d["top_set"]),
                           tuple(d["bottom_set"]), num(d["residual"]), p.bits)


def refusals_csv(refusals: Iterable, fh=None) -> str:
    """Write refused subsets as ``subset,optimal_margin,reason`` rows.

    ``refusals`` holds :class:`Refusal` objects or bare index tuples.
    Returns the CSV text; also writes it to ``fh`` when given.
    """
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["subset", "optimal_margin", "reason"])
    for r in refusals:
        if isinstance(r, Refusal):
            w.writerow([_fmt_subset(r.subset), repr(float(r.optimal_margin)), r.reason])
        else:
            w.writerow([_fmt_subset(r), "", ""])
    text = buf.getvalue()
    if fh is not None:
        fh.write(text)
    return text


def _fmt_subset(S) -> str:
    if S and isinstance(S[0], (tuple, list)):
        return "|".join(" ".join(str(i) for i in part) for part in S)
    return " ".join(str(i) for i in S)


def vertices_csv(P, fh=None) -> str:
    """One row per vertex: index, angle as ``num/den`` of pi, cluster id, coordinates."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "angle_over_pi", "cluster_id"] + [f"x{j}" for j in range(P.D)])
    for i in range(P.N):
        sp = P.seeds[i]
        q = sp.point.q
        row = [i, f"{q.numerator}/{q.denominator}", sp.cluster_id]
        row += [P.precision.to_decimal_string(x) for x in P.vertices[i]]
        w.writerow(row)
    text = buf.getvalue()
    if fh is not None:
        fh.write(text)
    return text


def _clean(x):
    # JSON has no inf/nan; report them as strings
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    if isinstance(x, dict):
        return {k: _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    return x


def dumps_report(report: dict) -> str:
    return json.dumps(_clean(report), indent=2, allow_nan=False) + "\n"
