"""Serialization of scan results: CSV and JSON streams, SVG scatter plots.

CSV renders rational bounds as exact decimals at 20 significant digits
(lower bounds rounded down, upper bounds rounded up, so printed bounds
remain valid bounds).  JSON is lossless: rational endpoints travel as
"numerator/denominator" strings and a scan can be reconstructed from it
byte-identically.  The SVG scatter shows one marker per class over the
cone, with the boundary rays drawn from the inequality rows; classes
whose trace field is not totally real get the green triangles, and
error/inconclusive classes keep their own marker rather than being
dropped.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .factorint import Factorization
from .groupring import CohomClass
from .pipeline import ClassReport, ScanReport
from .rootbox import MeasureInterval, RootEnclosure
from .unipoly import IntPoly

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# exact decimal rendering
# ---------------------------------------------------------------------------

def _ilog10(x: Fraction) -> int:
    n, d = x.numerator, x.denominator
    e = len(str(n)) - len(str(d))
    while Fraction(10) ** e > x:
        e -= 1
    while Fraction(10) ** (e + 1) <= x:
        e += 1
    return e


def decimal_str(x: Fraction, sig: int = 20, mode: str = "nearest") -> str:
    """Exact decimal rendering at `sig` significant digits.

    mode "down"/"up" round toward -inf/+inf so that printed interval
    endpoints stay valid bounds; "nearest" rounds half away from zero.
    """
    if x == 0:
        return "0"
    neg = x < 0
    if neg:
        x = -x
        mode = {"down": "up", "up": "down"}.get(mode, mode)
    e = _ilog10(x)
    scaled = x * Fraction(10) ** (sig - 1 - e)
    n, d = scaled.numerator, scaled.denominator
    if mode == "down":
        digits = n // d
    elif mode == "up":
        digits = -((-n) // d)
    else:
        digits = (2 * n + d) // (2 * d)
    if digits >= 10 ** sig:  # rounding overflowed into one more digit
        digits //= 10
        e += 1
    s = str(digits)
    if e >= sig - 1:
        body = s + "0" * (e - sig + 1)
    elif e >= 0:
        body = s[: e + 1] + "." + s[e + 1:]
    else:
        body = "0." + "0" * (-e - 1) + s
    return ("-" if neg else "") + body


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _frac_parse(s: str) -> Fraction:
    n, d = s.split("/")
    return Fraction(int(n), int(d))


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------

def to_csv(scan: ScanReport) -> bytes:
    """One row per class; comma-separated, LF endings, UTF-8, no quoting."""
    height = scan.runtime.get("height_index", None)
    dim = len(scan.classes[0].alpha.coords) if scan.classes else 2
    if height is None:
        height = dim - 1
    acoords = [i for i in range(dim) if i != height]
    header = [f"a{k + 1}" for k in range(len(acoords))] + ["b"] if len(acoords) != 1 \
        else ["a", "b"]
    header += ["degree", "N", "lambda_lo", "lambda_hi", "minpoly", "n_factors",
               "n_cyclotomic", "totally_real", "mahler_lo", "mahler_hi",
               "A_hi", "B_lo", "unimodular_count", "real_roots", "descartes",
               "margin", "flags"]
    lines = [",".join(header)]
    for r in scan.classes:
        cells: list[str] = [str(r.alpha.coords[i]) for i in acoords]
        cells.append(str(r.alpha.coords[height]))
        cells.append("" if r.degree_proxy_norm is None else str(r.degree_proxy_norm))
        cells.append(str(r.N))
        if r.lam is not None:
            cells.append(decimal_str(r.lam.re_lo, mode="down"))
            cells.append(decimal_str(r.lam.re_hi, mode="up"))
        else:
            cells += ["", ""]
        cells.append(r.minpoly.to_text().replace(" ", "") if r.minpoly else "")
        cells.append(str(r.n_factors) if r.factorization else "")
        cells.append(str(r.n_cyclotomic) if r.factorization else "")
        cells.append("" if r.totally_real is None else str(r.totally_real).lower())
        if r.mahler is not None:
            cells.append(decimal_str(r.mahler.lo, mode="down"))
            cells.append(decimal_str(r.mahler.hi, mode="up"))
        else:
            cells += ["", ""]
        cells.append(decimal_str(r.split_A.hi, mode="up") if r.split_A else "")
        cells.append(decimal_str(r.split_B.lo, mode="down") if r.split_B else "")
        cells.append("" if r.unimodular_count is None else str(r.unimodular_count))
        cells.append("" if r.real_root_count is None else str(r.real_root_count))
        cells.append("" if r.descartes is None else str(r.descartes))
        cells.append(decimal_str(r.margin, mode="down") if r.margin is not None else "")
        cells.append(";".join(r.flags()))
        lines.append(",".join(cells))
    return ("\n".join(lines) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# JSON (lossless, byte-stable round trip)
# ---------------------------------------------------------------------------

def _measure_json(m: MeasureInterval | None):
    return None if m is None else [_frac_str(m.lo), _frac_str(m.hi)]


def _measure_parse(v) -> MeasureInterval | None:
    return None if v is None else MeasureInterval(_frac_parse(v[0]), _frac_parse(v[1]))


def _enclosure_json(e: RootEnclosure | None):
    if e is None:
        return None
    return {"re": [_frac_str(e.re_lo), _frac_str(e.re_hi)],
            "im": [_frac_str(e.im_lo), _frac_str(e.im_hi)],
            "certified": e.certified}


def _enclosure_parse(v) -> RootEnclosure | None:
    if v is None:
        return None
    return RootEnclosure(_frac_parse(v["re"][0]), _frac_parse(v["re"][1]),
                         _frac_parse(v["im"][0]), _frac_parse(v["im"][1]),
                         certified=v["certified"])


def _class_json(r: ClassReport) -> dict:
    fac = None
    if r.factorization is not None:
        fac = {
            "unit": r.factorization.unit,
            "content": r.factorization.content,
            "monomial_shift": r.factorization.monomial_shift,
            "factors": [{"coeffs": list(f.coeffs), "multiplicity": m}
                        for f, m in r.factorization.factors],
        }
    return {
        "alpha": list(r.alpha.coords),
        "specialization": list(r.specialization.coeffs) if r.specialization else None,
        "N": r.N,
        "factorization": fac,
        "cyclotomic_orders": list(r.cyclotomic_orders),
        "minpoly": list(r.minpoly.coeffs) if r.minpoly else None,
        "lambda": _enclosure_json(r.lam),
        "log_lambda": _measure_json(r.log_lambda),
        "degree_proxy_norm": r.degree_proxy_norm,
        "thurston_norm": r.thurston_norm,
        "margin": _frac_str(r.margin) if r.margin is not None else None,
        "real_root_count": r.real_root_count,
        "descartes": r.descartes,
        "self_reciprocal": r.self_reciprocal,
        "totally_real": r.totally_real,
        "enclosure_verdict": r.enclosure_verdict,
        "mahler": _measure_json(r.mahler),
        "split_A": _measure_json(r.split_A),
        "split_B": _measure_json(r.split_B),
        "unimodular_count": r.unimodular_count,
        "lehmer_flag": r.lehmer_flag,
        "schinzel_ok": r.schinzel_ok,
        "anomalies": list(r.anomalies),
        "error": r.error,
    }


def _class_parse(v: dict) -> ClassReport:
    fac = None
    if v["factorization"] is not None:
        raw = v["factorization"]
        fac = Factorization(
            unit=raw["unit"], content=raw["content"],
            monomial_shift=raw["monomial_shift"],
            factors=tuple((IntPoly(f["coeffs"]), f["multiplicity"])
                          for f in raw["factors"]))
    return ClassReport(
        alpha=CohomClass(v["alpha"]),
        specialization=IntPoly(v["specialization"]) if v["specialization"] else None,
        N=v["N"],
        factorization=fac,
        cyclotomic_orders=tuple(v["cyclotomic_orders"]),
        minpoly=IntPoly(v["minpoly"]) if v["minpoly"] else None,
        lam=_enclosure_parse(v["lambda"]),
        log_lambda=_measure_parse(v["log_lambda"]),
        degree_proxy_norm=v["degree_proxy_norm"],
        thurston_norm=v["thurston_norm"],
        margin=_frac_parse(v["margin"]) if v["margin"] is not None else None,
        real_root_count=v["real_root_count"],
        descartes=v["descartes"],
        self_reciprocal=v["self_reciprocal"],
        totally_real=v["totally_real"],
        enclosure_verdict=v["enclosure_verdict"],
        mahler=_measure_parse(v["mahler"]),
        split_A=_measure_parse(v["split_A"]),
        split_B=_measure_parse(v["split_B"]),
        unimodular_count=v["unimodular_count"],
        lehmer_flag=v["lehmer_flag"],
        schinzel_ok=v["schinzel_ok"],
        anomalies=tuple(v["anomalies"]),
        error=v["error"],
    )


def to_json(scan: ScanReport) -> bytes:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "config": scan.config,
        "summary": scan.summary,
        "runtime": scan.runtime,
        "classes": [_class_json(r) for r in scan.classes],
    }
    return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def from_json(data: bytes) -> ScanReport:
    doc = json.loads(data.decode("utf-8"))
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {doc.get('schema_version')}")
    return ScanReport(config=doc["config"],
                      classes=tuple(_class_parse(v) for v in doc["classes"]),
                      summary=doc["summary"], runtime=doc["runtime"])


# ---------------------------------------------------------------------------
# SVG scatter (Figures 1-2 semantics)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlotStyle:
    """Marker shapes/colors per verdict; categories must differ in both."""

    totally_real_color: str = "#0072B2"
    totally_real_marker: str = "circle"
    not_totally_real_color: str = "#009E73"
    not_totally_real_marker: str = "triangle"
    error_color: str = "#D55E00"
    error_marker: str = "square"
    point_size: float = 4.0
    width: int = 820
    height: int = 480
    margin: int = 45

    def __post_init__(self):
        cats = [(self.totally_real_color, self.totally_real_marker),
                (self.not_totally_real_color, self.not_totally_real_marker),
                (self.error_color, self.error_marker)]
        if len({c for c, _ in cats}) < 3 or len({m for _, m in cats}) < 3:
            raise ValueError("verdict categories need distinct colors and markers")


def _fmt(x: Fraction) -> str:
    return decimal_str(x, sig=6, mode="nearest") if x else "0"


def _marker_svg(kind: str, x: Fraction, y: Fraction, s: Fraction, color: str,
                css: str) -> str:
    if kind == "circle":
        return (f'<circle class="pt {css}" cx="{_fmt(x)}" cy="{_fmt(y)}" '
                f'r="{_fmt(s)}" fill="{color}"/>')
    if kind == "triangle":
        h = s * Fraction(13, 10)
        w = s * Fraction(11, 10)
        pts = f"{_fmt(x)},{_fmt(y - h)} {_fmt(x - w)},{_fmt(y + h / 2)} {_fmt(x + w)},{_fmt(y + h / 2)}"
        return f'<polygon class="pt {css}" points="{pts}" fill="{color}"/>'
    if kind == "square":
        return (f'<rect class="pt {css}" x="{_fmt(x - s)}" y="{_fmt(y - s)}" '
                f'width="{_fmt(2 * s)}" height="{_fmt(2 * s)}" fill="{color}"/>')
    raise ValueError(f"unknown marker kind {kind!r}")


def render_svg(scan: ScanReport, style: PlotStyle = PlotStyle()) -> bytes:
    """Scatter of classes over the cone; skipped (with notice) unless 2D."""
    if scan.classes and len(scan.classes[0].alpha.coords) != 2:
        raise ValueError("SVG scatter requires 2-dimensional classes")
    height_index = scan.runtime.get("height_index", 1)
    bound = scan.runtime.get("height_bound")
    if bound is None:
        bound = 1 + max((r.alpha.coords[height_index] for r in scan.classes),
                        default=4)
    other = 1 - height_index
    a_extent = max([abs(r.alpha.coords[other]) for r in scan.classes] + [bound - 1])

    W, H, M = style.width, style.height, style.margin
    sx = Fraction(W - 2 * M, 2 * a_extent + 2)
    sy = Fraction(H - 2 * M, bound)

    def px(a: int | Fraction) -> Fraction:
        return M + (Fraction(a) + a_extent + 1) * sx

    def py(b: int | Fraction) -> Fraction:
        return H - M - Fraction(b) * sy

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {W} {H}" '
        f'width="{W}" height="{H}">',
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="white"/>',
        f'<line x1="{_fmt(px(-a_extent - 1))}" y1="{_fmt(py(0))}" '
        f'x2="{_fmt(px(a_extent + 1))}" y2="{_fmt(py(0))}" stroke="#aaaaaa" stroke-width="1"/>',
    ]
    # cone boundary rays from the inequality rows
    rows = scan.config.get("cone_ineqs", [])
    for r1, r2 in [tuple(row) for row in rows if len(row) == 2]:
        # the line r1*x + r2*y = 0 in world coordinates (x = other, y = height)
        pts = []
        for yv in (Fraction(0), Fraction(bound)):
            if r1 != 0:
                xv = -Fraction(r2) * yv / r1
                if abs(xv) <= a_extent + 1:
                    pts.append((xv, yv))
        for xv in (Fraction(-a_extent - 1), Fraction(a_extent + 1)):
            if r2 != 0:
                yv = -Fraction(r1) * xv / r2
                if 0 <= yv <= bound:
                    pts.append((xv, yv))
        uniq = sorted(set(pts))
        if len(uniq) >= 2:
            (x1, y1), (x2, y2) = uniq[0], uniq[-1]
            out.append(f'<line class="cone-ray" x1="{_fmt(px(x1))}" y1="{_fmt(py(y1))}" '
                       f'x2="{_fmt(px(x2))}" y2="{_fmt(py(y2))}" '
                       f'stroke="#333333" stroke-width="1" stroke-dasharray="5,3"/>')

    s = Fraction(style.point_size).limit_denominator(100)
    for r in scan.classes:
        a, b = r.alpha.coords[other], r.alpha.coords[height_index]
        if r.error is not None or r.totally_real is None:
            kind, color, css = style.error_marker, style.error_color, "err"
        elif r.totally_real:
            kind, color, css = style.totally_real_marker, style.totally_real_color, "tr"
        else:
            kind, color, css = style.not_totally_real_marker, style.not_totally_real_color, "ntr"
        out.append(_marker_svg(kind, px(a), py(b), s, color, css))

    lx, ly = W - M - 240, M
    legend = [("totally real trace field", style.totally_real_marker,
               style.totally_real_color),
              ("not totally real", style.not_totally_real_marker,
               style.not_totally_real_color),
              ("error / inconclusive", style.error_marker, style.error_color)]
    for i, (label, kind, color) in enumerate(legend):
        y = ly + 22 * i
        out.append(_marker_svg(kind, Fraction(lx), Fraction(y), s, color, "legend"))
        out.append(f'<text x="{lx + 14}" y="{y + 5}" font-size="14" '
                   f'font-family="sans-serif">{label}</text>')
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
