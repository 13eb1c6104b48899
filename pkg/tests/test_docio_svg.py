"""Document serialization and SVG rendering tests."""

import json

import numpy as np
import pytest

from phforge import poly
from phforge.curves import build_curve
from phforge.docio import (
    ValidationError,
    document,
    document_to_json,
    format_float,
    load_document,
    pair,
    pairs,
    parse_document,
    render_json,
)
from phforge.ops import op_render
from phforge.poly import BERNSTEIN, LEGENDRE, ComplexPoly
from phforge.svgplot import render_svg


class TestFormatFloat:
    def test_short_forms(self):
        assert format_float(0.25) == "0.25"
        assert format_float(0.5) == "0.5"
        assert format_float(11.0) == "11.0"
        assert format_float(-3.0) == "-3.0"
        assert format_float(0.0) == "0.0"

    def test_seventeen_digits(self):
        assert format_float(1 / 3) == "0.33333333333333331"
        assert format_float(0.1) == "0.10000000000000001"

    def test_round_trip_exact(self, rng):
        # 17 significant digits reproduce any IEEE double bit-for-bit
        xs = np.concatenate([
            rng.standard_normal(400),
            rng.standard_normal(400) * 10.0 ** rng.integers(-300, 300, size=400),
            [0.0, -0.0, 5e-324, -5e-324, 1e16, -1e16, 1e17],
        ])
        for x in xs:
            assert float(format_float(x)) == float(x)

    def test_non_finite_raises(self):
        for bad in (float("nan"), float("inf"), float("-inf")):
            with pytest.raises(ValueError):
                format_float(bad)


class TestRenderJson:
    def test_scalars(self):
        assert render_json(True) == "true"
        assert render_json(False) == "false"
        assert render_json(None) == "null"
        assert render_json(3) == "3"
        assert render_json(np.int64(3)) == "3"
        assert render_json(np.bool_(True)) == "true"
        assert render_json(np.float64(0.5)) == "0.5"
        assert render_json("a\"b") == '"a\\"b"'

    def test_short_list_inline(self):
        assert render_json([1.0, 2.0]) == "[1.0, 2.0]"
        assert render_json([]) == "[]"
        assert render_json({}) == "{}"

    def test_long_list_multiline(self):
        text = render_json(list(range(9)))
        assert "\n" in text
        assert json.loads(text) == list(range(9))

    def test_nested_round_trip(self):
        obj = {
            "a": [1, 2.5, None, True],
            "b": {"c": "text", "d": [[0.1, 0.2], [0.3, 0.4]]},
            "e": 1 / 3,
        }
        text = render_json(obj)
        assert text == render_json(obj)  # deterministic
        back = json.loads(text)
        assert back["a"] == [1, 2.5, None, True]
        assert back["e"] == 1 / 3

    def test_key_order_is_insertion_order(self):
        a = render_json({"x": 1, "y": 2})
        b = render_json({"y": 2, "x": 1})
        assert a != b
        assert a.index('"x"') < a.index('"y"')

    def test_unrenderable_raises(self):
        with pytest.raises(TypeError):
            render_json({"z": 1 + 2j})

    def test_nan_raises(self):
        with pytest.raises(ValueError):
            render_json({"x": float("nan")})


class TestDocumentRoundTrip:
    def test_bernstein_round_trip(self):
        w = ComplexPoly(BERNSTEIN, [5 + 2j, -3 - 5j])
        doc = document(w, p0=1 - 2j, metadata={"label": "test"})
        w2, p02, meta2 = parse_document(json.loads(document_to_json(doc)))
        assert w2.basis == BERNSTEIN
        assert np.array_equal(w2.coeffs, w.coeffs)
        assert p02 == 1 - 2j
        assert meta2 == {"label": "test"}

    def test_awkward_floats_survive(self, rng):
        coeffs = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        w = ComplexPoly(LEGENDRE, coeffs)
        w2, p02, _ = parse_document(json.loads(document_to_json(document(w))))
        assert w2.basis == LEGENDRE
        assert np.array_equal(w2.coeffs, coeffs)
        assert p02 == 0

    def test_file_round_trip(self, tmp_path):
        w = ComplexPoly(BERNSTEIN, [1 / 3 + 1j / 7, 0.1 - 0.3j])
        path = tmp_path / "c.json"
        path.write_text(document_to_json(document(w, p0=0.25j)))
        w2, p02, _ = load_document(path)
        assert np.array_equal(w2.coeffs, w.coeffs)
        assert p02 == 0.25j

    def test_pair_helpers(self):
        assert pair(1 - 2j) == [1.0, -2.0]
        assert pairs([1j, 2]) == [[0.0, 1.0], [2.0, 0.0]]


def valid_doc():
    return json.loads(document_to_json(document(
        ComplexPoly(BERNSTEIN, [1 + 1j, 2 - 1j]), p0=0.5)))


class TestParseValidation:
    def path_of(self, obj):
        with pytest.raises(ValidationError) as err:
            parse_document(obj)
        return err.value.path

    def test_not_an_object(self):
        assert self.path_of([1, 2]) == "curve"

    def test_version(self):
        doc = valid_doc()
        del doc["version"]
        assert self.path_of(doc) == "curve.version"
        doc = valid_doc()
        doc["version"] = 2
        assert self.path_of(doc) == "curve.version"
        doc["version"] = True
        assert self.path_of(doc) == "curve.version"

    def test_preimage(self):
        doc = valid_doc()
        del doc["preimage"]
        assert self.path_of(doc) == "curve.preimage"

    def test_basis(self):
        doc = valid_doc()
        doc["preimage"]["basis"] = "power"
        assert self.path_of(doc) == "curve.preimage.basis"

    def test_degree(self):
        doc = valid_doc()
        doc["preimage"]["degree"] = -1
        assert self.path_of(doc) == "curve.preimage.degree"
        doc = valid_doc()
        doc["preimage"]["degree"] = 1.5
        assert self.path_of(doc) == "curve.preimage.degree"

    def test_coeff_count(self):
        doc = valid_doc()
        doc["preimage"]["coeffs"].append([0.0, 0.0])
        assert self.path_of(doc) == "curve.preimage.coeffs"

    def test_bad_coefficient(self):
        doc = valid_doc()
        doc["preimage"]["coeffs"][1] = [1.0]
        assert self.path_of(doc) == "curve.preimage.coeffs[1]"
        doc = valid_doc()
        doc["preimage"]["coeffs"][0] = [1.0, "x"]
        assert self.path_of(doc) == "curve.preimage.coeffs[0]"

    def test_p0(self):
        doc = valid_doc()
        del doc["p0"]
        assert self.path_of(doc) == "curve.p0"
        doc = valid_doc()
        doc["p0"] = [1.0, 2.0, 3.0]
        assert self.path_of(doc) == "curve.p0"

    def test_metadata(self):
        doc = valid_doc()
        doc["metadata"] = "notes"
        assert self.path_of(doc) == "curve.metadata"

    def test_metadata_optional(self):
        doc = valid_doc()
        del doc["metadata"]
        _, _, meta = parse_document(doc)
        assert meta == {}

    def test_custom_path_prefix(self):
        with pytest.raises(ValidationError) as err:
            parse_document({}, path="curves[3]")
        assert err.value.path == "curves[3].version"

    def test_load_bad_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(ValidationError) as err:
            load_document(path)
        assert err.value.path == str(path)

    def test_load_missing_file(self, tmp_path):
        with pytest.raises(ValidationError):
            load_document(tmp_path / "absent.json")


def line_curve(p0=0.0):
    return build_curve(ComplexPoly(BERNSTEIN, [1.0]), p0=p0)


def trace_points(svg_text):
    """Coordinate pair counts of each polyline, in document order."""
    counts = []
    for chunk in svg_text.split("<polyline")[1:]:
        pts = chunk.split('points="')[1].split('"')[0]
        counts.append(len(pts.split(" ")))
    return counts


class TestRenderSvg:
    def test_deterministic_bytes(self, cubic_w, quintic_canonical_b_w):
        curves = [build_curve(cubic_w), build_curve(quintic_canonical_b_w)]
        assert render_svg(curves) == render_svg(curves)

    def test_document_shape(self):
        text = render_svg([line_curve()])
        assert text.startswith('<svg xmlns="http://www.w3.org/2000/svg"')
        assert text.endswith("</svg>\n")

    def test_line_viewbox(self):
        # unit segment: span 1, pad 0.05 on every side
        text = render_svg([line_curve()], show_controls=False)
        assert 'viewBox="-0.050000 -0.050000 1.100000 0.100000"' in text
        assert 'stroke-width="0.008000"' in text

    def test_polyline_counts(self):
        text = render_svg([line_curve()], samples=16, show_controls=False)
        assert trace_points(text) == [16]
        text = render_svg([line_curve()], samples=16, show_controls=True)
        # control polygon first (2 points for a line), then the trace
        assert trace_points(text) == [2, 16]

    def test_y_axis_flip(self):
        # hodograph (1+i)^2 = 2i points straight up; svg y must go negative
        up = build_curve(ComplexPoly(BERNSTEIN, [1 + 1j]))
        text = render_svg([up], samples=2, show_controls=False)
        assert "0.000000,-2.000000" in text

    def test_no_negative_zero(self, cubic_w):
        text = render_svg([build_curve(cubic_w)])
        assert "-0.000000" not in text

    def test_palette_cycles(self):
        curves = [line_curve(p0=k * 1j) for k in range(9)]
        text = render_svg(curves, show_controls=False)
        assert text.count("#1f5fa8") == 2  # curve 0 and curve 8

    def test_empty_raises(self):
        with pytest.raises(ValueError):
            render_svg([])
        with pytest.raises(ValueError):
            render_svg([line_curve()], samples=1)


class TestOpRender:
    def test_centroid_alignment_collapses_translates(self):
        w = ComplexPoly(BERNSTEIN, [2 + 1j, 1 - 1j])
        docs = [(w, 0.0 + 0.0j, {}), (w, 5.0 + 5.0j, {})]
        text = op_render(docs, samples=32, centroid_align=True, show_controls=False)
        pts = [chunk.split('points="')[1].split('"')[0]
               for chunk in text.split("<polyline")[1:]]
        assert len(pts) == 2
        assert pts[0] == pts[1]
        unaligned = op_render(docs, samples=32, centroid_align=False,
                              show_controls=False)
        pts2 = [chunk.split('points="')[1].split('"')[0]
                for chunk in unaligned.split("<polyline")[1:]]
        assert pts2[0] != pts2[1]

    def test_empty_is_validation_error(self):
        with pytest.raises(ValidationError) as err:
            op_render([])
        assert err.value.path == "render"
