import csv
import io
import json

import numpy as np

from csneighborly._precision import get_precision
from csneighborly.curves import CurveSpec
from csneighborly.reports import (
    certificate_from_dict,
    certificate_to_dict,
    dumps_report,
    refusals_csv,
    vertices_csv,
)
from csneighborly.seeds import build_V_clustered
from csneighborly.verify import (
    assemble,
    certify_face,
    certify_slab,
    count_edges,
    default_tolerances,
    validate_face,
    validate_slab,
)

from conftest import FAMILY_K3_M8


def test_face_certificate_round_trip(P_A2):
    cert = certify_face(P_A2, [0, 5])
    d = json.loads(json.dumps(certificate_to_dict(cert)))
    assert all(isinstance(x, str) for x in d["functional"])
    back = certificate_from_dict(d)
    assert back.face_vertices == cert.face_vertices
    assert np.array_equal(back.functional, cert.functional)
    assert back.offset == cert.offset and back.margin == cert.margin
    assert validate_face(P_A2.vertices, back).ok


def test_slab_certificate_round_trip(X2):
    cert = certify_slab(X2, [1], [6])
    back = certificate_from_dict(json.loads(json.dumps(certificate_to_dict(cert))))
    assert back.top_set == (1,) and back.bottom_set == (6,)
    assert back.b_hi == cert.b_hi and back.b_lo == cert.b_lo
    assert validate_slab(X2.vertices, back).ok


def test_mp_certificate_round_trip():
    seeds = build_V_clustered(FAMILY_K3_M8, 8, 2)
    prec = get_precision(224)
    P = assemble(CurveSpec.Psi(3, 8), seeds, prec)
    cert = certify_face(P, [0, 1, 4])
    assert cert and cert.precision_bits == 224
    d = certificate_to_dict(cert)
    assert len(d["margin"].lstrip("-").replace(".", "").split("e")[0]) > 40
    back = certificate_from_dict(d)
    assert validate_face(P.vertices, back, default_tolerances(prec)).ok


def test_refusals_csv(P_A2):
    edges = count_edges(P_A2)
    text = refusals_csv(edges.refusals)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 8
    assert rows[0]["subset"] == "0 8"
    assert all(float(r["optimal_margin"]) <= 1e-12 for r in rows)
    fh = io.StringIO()
    assert refusals_csv([((0,), (1, 2))], fh) == fh.getvalue()
    assert "0|1 2" in fh.getvalue()


def test_vertices_csv_round_trips_exactly(P_A2):
    text = vertices_csv(P_A2)
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0][:3] == ["index", "angle_over_pi", "cluster_id"]
    assert len(rows) == 17 and len(rows[1]) == 3 + 6
    assert rows[2][1] == "1/8"
    back = np.array([[P_A2.precision.parse(x) for x in r[3:]] for r in rows[1:]], dtype=np.longdouble)
    assert np.array_equal(back, P_A2.vertices)


def test_dumps_report_is_stable():
    rep = {"b": [1, float("inf")], "a": float("nan")}
    text = dumps_report(rep)
    assert text.endswith("\n")
    assert json.loads(text) == {"b": [1, "inf"], "a": "nan"}
    assert dumps_report(rep) == text
