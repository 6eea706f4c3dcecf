import io

import numpy as np
import pytest

from utils.curves import CSV_HEADER, BerCurve, CurvePoint, db_to_linear, linear_to_db, write_curves_csv


def test_db_conversion():
    assert db_to_linear(10.0) == pytest.approx(10.0, rel=1e-15)
    assert db_to_linear(0.0) == 1.0
    assert linear_to_db(100.0) == pytest.approx(20.0, rel=1e-15)
    np.testing.assert_allclose(linear_to_db(db_to_linear(np.array([-5.0, 3.0, 27.5]))), [-5.0, 3.0, 27.5])


def test_points_must_be_sorted():
    with pytest.raises(ValueError):
        BerCurve("i0", "closed_form", [CurvePoint(10.0, 0.1), CurvePoint(5.0, 0.2)])


def test_ber_must_be_probability():
    with pytest.raises(ValueError):
        BerCurve("i0", "closed_form", [CurvePoint(10.0, 1.2)])


def test_csv_layout():
    curves = [
        BerCurve("relay", "closed_form", [CurvePoint(0.0, 0.1), CurvePoint(1.0, 0.05)]),
        BerCurve("relay", "montecarlo", [CurvePoint(0.0, 0.11, 1e-3), CurvePoint(1.0, 0.052, 5e-4)]),
    ]
    out = io.StringIO()
    rows = write_curves_csv(curves, out)
    lines = out.getvalue().splitlines()

    assert rows == 4
    assert lines[0] == ",".join(CSV_HEADER)
    assert lines[1] == "relay,closed_form,0.0000000000e+00,1.0000000000e-01,"
    assert lines[2].startswith("relay,montecarlo,0.0000000000e+00,1.1000000000e-01,1.0000000000e-03")
    assert [line.split(",")[2] for line in lines[1:]] == ["0.0000000000e+00"] * 2 + ["1.0000000000e+00"] * 2
