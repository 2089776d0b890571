"""Command line interface.

Four subcommands: `constants` recomputes every named constant with a
certified bracket and compares against the published decimals,
`delta11` reports the refined one-handle distance bracket, `plot`
writes a deterministic SVG (plus CSV sidecar) for the two standard
curves, and `verify` runs the invariant checks. Exit codes: 0 on
success, 1 when a comparison or check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .gradbounds import (
    EPS2,
    F_pair,
    G_of,
    L0,
    collar_radius_separating,
    collar_radius_simple,
    grad_sq_upper_single,
    r_sys,
    u_factor,
    v_factor,
)
from .hyp2 import (
    INF,
    GeodesicH2,
    MoebiusMap,
    UValue,
    axis_of,
    collar_area,
    translate_geodesic,
    translation_length,
    u_value,
)
from .integrals import (
    Bracket,
    W1,
    W2,
    brock_bromberg_compare,
    c_ratio,
    integral_H,
    integral_K,
    pa_translation_bounds,
    strata_separation,
    thin_pair_sum,
)
from .riera import a_hat, a_of_T, riera_R
from .toruscoset import (
    delta11_bracket,
    enumerate_cosets,
    grad_sq_bracket,
    holonomy,
    identity_coset,
    u_of_coset,
)

_REFINED_PAPER = (6.59576, 6.63283)


@dataclass(frozen=True)
class ConstantRecord:
    name: str
    lo: float
    hi: float
    paper: str
    provenance: str
    status: str


def _trunc_str(x: float, places: int = 5) -> str:
    """Decimal truncation toward zero, as a fixed-point string."""
    if x < 0.0:
        return "-" + _trunc_str(-x, places)
    s = f"{x:.{places + 8}f}"
    dot = s.index(".")
    return s[: dot + 1 + places]

def _floor_str(x: float, places: int = 5) -> str:
    return _trunc_str(x, places)


def _ceil_str(x: float, places: int = 5) -> str:
    scale = 10.0**places
    i = math.ceil(x * scale)
    return f"{i / scale:.{places}f}"


def _record(name: str, value, paper: str, provenance: str, status: str) -> ConstantRecord:
    if isinstance(value, Bracket):
        lo, hi = value.lo, value.hi
    else:
        lo = hi = float(value)
    return ConstantRecord(name, lo, hi, paper, provenance, status)


def _status_enclosure(br: Bracket, paper_lo: str, paper_hi: str) -> str:
    ok = _floor_str(br.lo) == paper_lo and _ceil_str(br.hi) == paper_hi
    return "reproduced" if ok else "mismatch"


def _status_within(br: Bracket, paper_lo: float, paper_hi: float) -> str:
    ok = paper_lo - 1e-5 <= br.lo and br.hi <= paper_hi + 1e-5
    return "reproduced" if ok else "mismatch"


def _status_lower(lo: float, paper: str) -> str:
    return "reproduced" if lo >= float(paper) else "mismatch"


def _status_trunc(value: float, paper: str, places: int = 5) -> str:
    return "reproduced" if _trunc_str(value, places) == paper else "mismatch"


def compute_constant_records(tol: float = 1e-8, max_word_length: int = 8) -> list[ConstantRecord]:
    """Recompute every named constant and classify it against its
    published decimals."""
    records: list[ConstantRecord] = []

    elementary = delta11_bracket(0, min(tol, 1e-9))
    records.append(
        _record(
            "delta11_elementary",
            elementary,
            "(6.57252, 6.65603)",
            "paper",
            _status_enclosure(elementary, "6.57252", "6.65603"),
        )
    )

    refined = delta11_bracket(max_word_length, 1e-6)
    records.append(
        _record(
            "delta11_refined",
            refined,
            "[6.59576, 6.63283]",
            "paper",
            _status_within(refined, *_REFINED_PAPER),
        )
    )

    pair = thin_pair_sum(tol)
    records.append(
        _record("hsum_thin_pair", pair, "7.61138", "paper", _status_lower(pair.lo, "7.61138"))
    )

    h2 = integral_H(0.0, 2.0 * EPS2, "plain", tol)
    records.append(
        _record("h_0_2eps2", h2, "3.27466", "paper", _status_trunc(h2.midpoint, "3.27466"))
    )

    hs4 = integral_H(0.0, 4.0 * EPS2, "separating", tol)
    records.append(
        _record("hs_0_4eps2", hs4, "4.63108", "paper", _status_trunc(hs4.midpoint, "4.63108"))
    )

    w1 = W1(3.678, tol)
    records.append(_record("w1_3678", w1, "10.76596", "paper", _status_lower(w1.lo, "10.76596")))
    w2 = W2(2.420, tol)
    records.append(_record("w2_2420", w2, "10.09656", "paper", _status_lower(w2.lo, "10.09656")))

    delta04 = elementary.scaled(math.sqrt(2.0))
    records.append(
        _record(
            "delta04_sqrt2",
            delta04,
            "(9.29495, 9.41305)",
            "paper",
            _status_enclosure(delta04, "9.29495", "9.41305"),
        )
    )

    doubled = elementary.scaled(2.0)
    records.append(
        _record("two_delta11", doubled, "13.145", "paper", _status_lower(doubled.lo, "13.145"))
    )

    gap_genus = pair.lo - elementary.hi
    records.append(
        _record("gap_genus", gap_genus, "0.95535", "paper", _status_lower(gap_genus, "0.95535"))
    )
    gap_sphere = w2.lo - math.sqrt(2.0) * elementary.hi
    records.append(
        _record("gap_sphere", gap_sphere, "0.68351", "paper", _status_lower(gap_sphere, "0.68351"))
    )

    lip = math.sqrt(2.0 * math.pi / (1.0 + G_of(0.25 * L0, 0.25 * L0)))
    records.append(
        _record("lipschitz_sys", lip, "2.00423", "paper", _status_trunc(lip, "2.00423"))
    )

    grid = np.logspace(-3.0, 2.0, 61)
    c_min = min(c_ratio(float(t), tol) for t in grid)
    records.append(_record("c_min_ratio", c_min, "0.94", "paper", _status_lower(c_min, "0.94")))

    pa = pa_translation_bounds(tol)
    records.append(
        _record("pa_case_i2", pa.case_i2, "1.06205", "paper", _status_lower(pa.case_i2, "1.06205"))
    )
    records.append(
        _record("pa_case_i1", pa.case_i1, "1.56949", "paper", _status_lower(pa.case_i1, "1.56949"))
    )
    records.append(
        _record("pa_general", pa.general, "0.78474", "paper", _status_lower(pa.general, "0.78474"))
    )

    bb = brock_bromberg_compare(1, 1)
    # the published string drops the leading zero, so strip ours too
    bb_status = "reproduced" if _trunc_str(bb).lstrip("0") == ".53724" else "mismatch"
    records.append(_record("brock_bromberg_11", bb, ".53724", "derived", bb_status))

    return records


def _render_records_text(records: list[ConstantRecord]) -> str:
    rows = [("name", "lo", "hi", "paper", "provenance", "status")]
    for r in records:
        rows.append((r.name, repr(r.lo), repr(r.hi), r.paper, r.provenance, r.status))
    widths = [max(len(row[i]) for row in rows) for i in range(6)]
    lines = []
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return "\n".join(lines) + "\n"


def _render_records_json(records: list[ConstantRecord]) -> str:
    payload = {
        "constants": [
            {"name": r.name, "lo": r.lo, "hi": r.hi, "paper": r.paper, "status": r.status}
            for r in records
        ]
    }
    return json.dumps(payload, indent=2) + "\n"


def _render_records_csv(records: list[ConstantRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["name", "lo", "hi", "paper", "status"])
    for r in records:
        writer.writerow([r.name, repr(r.lo), repr(r.hi), r.paper, r.status])
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_constants(args: argparse.Namespace) -> int:
    records = compute_constant_records(args.tol, args.max_word_length)
    if args.format == "json":
        text = _render_records_json(records)
    elif args.format == "csv":
        text = _render_records_csv(records)
    else:
        text = _render_records_text(records)
    _emit(text, args.out)
    ok = all(r.status == "reproduced" for r in records if r.provenance == "paper")
    return 0 if ok else 1


def cmd_delta11(args: argparse.Namespace) -> int:
    br = delta11_bracket(args.max_word_length, args.tol)
    plo, phi = _REFINED_PAPER
    consistent = not (br.hi < plo or br.lo > phi)
    status = "consistent" if consistent else "inconsistent"
    rec = ConstantRecord("delta11", br.lo, br.hi, f"[{plo}, {phi}]", "paper", status)
    if args.format == "json":
        text = _render_records_json([rec])
    elif args.format == "csv":
        text = _render_records_csv([rec])
    else:
        text = _render_records_text([rec])
    _emit(text, args.out)
    return 0 if consistent else 1


def _svg_header(title: str) -> list[str]:
    return [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 800 600">',
        '<rect width="800" height="600" fill="#ffffff"/>',
        f'<text x="400" y="30" font-family="monospace" font-size="16" text-anchor="middle" fill="#222222">{title}</text>',
    ]


_PLOT_LEFT = 80.0
_PLOT_RIGHT = 760.0
_PLOT_TOP = 60.0
_PLOT_BOTTOM = 540.0


def _px(v: float, vmin: float, vmax: float) -> float:
    return _PLOT_LEFT + (v - vmin) * (_PLOT_RIGHT - _PLOT_LEFT) / (vmax - vmin)


def _py(v: float, vmin: float, vmax: float) -> float:
    return _PLOT_BOTTOM - (v - vmin) * (_PLOT_BOTTOM - _PLOT_TOP) / (vmax - vmin)


def _svg_axes(
    parts: list[str],
    x_ticks: list[tuple[float, str]],
    y_ticks: list[tuple[float, str]],
    xmin: float,
    xmax: float,
    ymin: float,
    ymax: float,
) -> None:
    parts.append(
        f'<line x1="{_PLOT_LEFT:.2f}" y1="{_PLOT_BOTTOM:.2f}" x2="{_PLOT_RIGHT:.2f}" '
        f'y2="{_PLOT_BOTTOM:.2f}" stroke="#333333" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{_PLOT_LEFT:.2f}" y1="{_PLOT_BOTTOM:.2f}" x2="{_PLOT_LEFT:.2f}" '
        f'y2="{_PLOT_TOP:.2f}" stroke="#333333" stroke-width="1"/>'
    )
    for v, label in x_ticks:
        x = _px(v, xmin, xmax)
        parts.append(
            f'<line x1="{x:.2f}" y1="{_PLOT_BOTTOM:.2f}" x2="{x:.2f}" '
            f'y2="{_PLOT_BOTTOM + 6:.2f}" stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{_PLOT_BOTTOM + 22:.2f}" font-family="monospace" '
            f'font-size="12" text-anchor="middle" fill="#222222">{label}</text>'
        )
    for v, label in y_ticks:
        y = _py(v, ymin, ymax)
        parts.append(
            f'<line x1="{_PLOT_LEFT - 6:.2f}" y1="{y:.2f}" x2="{_PLOT_LEFT:.2f}" '
            f'y2="{y:.2f}" stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_PLOT_LEFT - 10:.2f}" y="{y + 4:.2f}" font-family="monospace" '
            f'font-size="12" text-anchor="end" fill="#222222">{label}</text>'
        )


def _svg_polyline(points: list[tuple[float, float]], color: str) -> str:
    coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
    return f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="2"/>'


def _plot_hsys_ratio(samples: int, tol: float) -> tuple[str, str]:
    ts = np.logspace(-3.0, 2.0, samples)
    values = [c_ratio(float(t), tol) for t in ts]

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "value"])
    for t, v in zip(ts, values):
        writer.writerow([repr(float(t)), repr(v)])

    xmin, xmax = -3.0, 2.0
    ymin, ymax = 0.93, 1.01
    parts = _svg_header("systole ratio H_sys(0, t) / K(0, t)")
    x_ticks = [(k, lbl) for k, lbl in zip(range(-3, 3), ["0.001", "0.01", "0.1", "1", "10", "100"])]
    y_ticks = [(0.93 + 0.02 * k, f"{0.93 + 0.02 * k:.2f}") for k in range(5)]
    _svg_axes(parts, x_ticks, y_ticks, xmin, xmax, ymin, ymax)
    pts = [
        (_px(math.log10(float(t)), xmin, xmax), _py(v, ymin, ymax)) for t, v in zip(ts, values)
    ]
    parts.append(_svg_polyline(pts, "#4682b4"))
    parts.append("</svg>")
    return "\n".join(parts) + "\n", buf.getvalue()


def _plot_h_vs_k(samples: int, tol: float) -> tuple[str, str]:
    ts = np.linspace(0.0, 10.0, samples)
    hs = [0.0]
    ks = [0.0]
    for t in ts[1:]:
        hs.append(integral_H(0.0, float(t), "plain", tol).midpoint)
        ks.append(integral_K(0.0, float(t)))

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "H", "K"])
    for t, h, k in zip(ts, hs, ks):
        writer.writerow([repr(float(t)), repr(h), repr(k)])

    xmin, xmax = 0.0, 10.0
    ymin, ymax = 0.0, 8.0
    parts = _svg_header("H(0, t) against the baseline K(0, t)")
    x_ticks = [(2.0 * k, f"{2 * k:d}") for k in range(6)]
    y_ticks = [(2.0 * k, f"{2 * k:d}") for k in range(5)]
    _svg_axes(parts, x_ticks, y_ticks, xmin, xmax, ymin, ymax)
    pts_h = [(_px(float(t), xmin, xmax), _py(h, ymin, ymax)) for t, h in zip(ts, hs)]
    pts_k = [(_px(float(t), xmin, xmax), _py(k, ymin, ymax)) for t, k in zip(ts, ks)]
    parts.append(_svg_polyline(pts_k, "#d2691e"))
    parts.append(_svg_polyline(pts_h, "#4682b4"))
    parts.append(
        '<text x="640" y="80" font-family="monospace" font-size="13" fill="#4682b4">H</text>'
    )
    parts.append(
        '<text x="640" y="100" font-family="monospace" font-size="13" fill="#d2691e">K</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n", buf.getvalue()


def cmd_plot(args: argparse.Namespace) -> int:
    if args.which == "hsys-ratio":
        svg, sidecar = _plot_hsys_ratio(args.samples, args.tol)
    else:
        svg, sidecar = _plot_h_vs_k(args.samples, args.tol)
    out = args.out or "plot.svg"
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    csv_path = out[: out.rfind(".")] + ".csv" if "." in out.rsplit("/", 1)[-1] else out + ".csv"
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(sidecar)
    sys.stdout.write(f"wrote {out} and {csv_path}\n")
    return 0


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise AssertionError(msg)


def _verify_collar_identity() -> None:
    _check(abs(collar_area(math.asinh(1.0)) - (math.pi + 2.0)) < 1e-12, "A(arcsinh 1) != pi + 2")
    r_grid = np.linspace(0.05, 20.0, 80)
    areas = [collar_area(float(r)) for r in r_grid]
    _check(all(b > a for a, b in zip(areas, areas[1:])), "collar area not increasing")
    _check(
        abs(collar_area(20.0) * math.exp(-40.0) / (math.pi / 4.0) - 1.0) < 1e-6,
        "collar area asymptote off",
    )


def _verify_kernel_examples() -> None:
    _check(riera_R(UValue(0.0, True)) == -2.0, "R(0) != -2")
    _check(abs(riera_R(UValue(3.0, False)) - (3.0 * math.log(2.0) - 2.0)) < 1e-14, "R(3) off")
    for u in (0.1, 0.3, 0.5, 0.8):
        ev = a_hat(u)
        target = riera_R(UValue(0.5 * (u + 1.0 / u), False)) / (u * u)
        _check(
            ev.value - 1e-12 <= target <= ev.value + ev.tail_bound + 1e-12,
            f"a_hat({u}) bracket misses the kernel identity",
        )


def _verify_kernel_positive() -> None:
    for u in np.logspace(math.log10(1.0 + 1e-6), 6.0, 120):
        _check(riera_R(UValue(float(u), False)) > 0.0, f"R not positive at u={u}")


def _verify_collar_profile() -> None:
    prev = None
    for T in np.logspace(-6.0, math.log10(50.0), 40):
        v = a_of_T(float(T))
        lo = 8.0 / 3.0
        hi = lo - 2.0 * math.log1p(-math.exp(-2.0 * float(T)))
        _check(lo <= v <= hi + 1e-12, f"a(T) outside pinch at T={T}")
        # weakly: the profile saturates to 8/3 exactly once the tail
        # falls under one ulp
        if prev is not None:
            _check(v <= prev, f"a(T) increasing at T={T}")
        prev = v


def _verify_envelope_identity() -> None:
    for la in (0.2, 0.7, 1.5, 3.0, 8.0):
        for lb in (la, la + 0.5, la + 3.0):
            f = F_pair(la, lb)
            g = G_of(collar_radius_simple(la), collar_radius_simple(lb))
            _check(abs(f - g) <= 1e-12 * max(1.0, abs(f)), f"F != G at ({la}, {lb})")


def _verify_cross_route() -> None:
    point = holonomy(1.3)
    lm = {0: point.A, 1: point.A.inverse(), 2: point.B, 3: point.B.inverse()}
    for kind in ("AA", "AB"):
        for word in enumerate_cosets(kind, 3):
            m = lm[word.letters[0]]
            for l in word.letters[1:]:
                m = m @ lm[l]
            if kind == "AA":
                direct = abs(1.0 + 2.0 * m.b * m.c)
            else:
                direct = abs(m.b * m.d - m.a * m.c)
            via_axes = u_of_coset(point, word).value
            _check(
                abs(direct - via_axes) <= 1e-9 * max(1.0, direct),
                f"u mismatch for {word}",
            )


def _verify_commutator() -> None:
    for t in np.linspace(0.05, 10.0, 50):
        point = holonomy(float(t))
        comm = point.A @ point.B @ point.A.inverse() @ point.B.inverse()
        _check(abs(comm.trace() + 2.0) < 1e-8, f"commutator trace off at t={t}")


def _verify_crossing_census() -> None:
    for t in (0.4, 1.0, 2.2):
        point = holonomy(t)
        _check(u_of_coset(point, identity_coset()).crossing, "identity coset must cross")
        for word in enumerate_cosets("AB", 3):
            _check(not u_of_coset(point, word).crossing, f"unexpected crossing at {word}")
        for word in enumerate_cosets("AA", 3):
            _check(u_of_coset(point, word).value > 1.0, f"AA coset not disjoint: {word}")


def _verify_bracket_nesting() -> None:
    prev = grad_sq_bracket(1.0, 0)
    for n in (2, 4, 6):
        cur = grad_sq_bracket(1.0, n)
        _check(
            cur.lo >= prev.lo - 1e-15 and cur.hi <= prev.hi + 1e-15,
            f"gradient bracket not nested at length {n}",
        )
        prev = cur
    _check(prev.lo >= 2.0 / math.pi, "gradient lower floor violated")
    _check(prev.hi <= (4.0 / math.pi) * math.sinh(0.5), "gradient upper ceiling violated")


def _verify_h_limits() -> None:
    ratio = integral_H(0.0, 1e-6, "plain", 1e-10).midpoint / integral_K(0.0, 1e-6)
    _check(abs(ratio - 1.0) < 1e-3, "H/K does not approach 1")
    for b in (0.5, 2.0, 7.0):
        _check(
            integral_H(0.0, b, "plain", 1e-8).hi <= integral_K(0.0, b) + 1e-8,
            f"H exceeds K at b={b}",
        )
    for a, b in ((0.25, 1.0), (1.0, 4.0), (3.0, 11.0)):
        v = integral_H(a, b, "systole", 1e-8)
        _check(
            v.lo >= 2.0 * (math.sqrt(b) - math.sqrt(a)) - 1e-8,
            f"systole H floor violated on ({a}, {b})",
        )


def _verify_quadrature_nesting() -> None:
    rng = np.random.default_rng(20240817)
    for variant in ("plain", "separating", "systole"):
        for _ in range(7):
            a = float(rng.uniform(0.0, 2.0))
            b = a + float(rng.uniform(0.2, 4.0))
            wide = integral_H(a, b, variant, 1e-5)
            tight = integral_H(a, b, variant, 1e-7)
            _check(
                wide.lo - 1e-12 <= tight.lo and tight.hi <= wide.hi + 1e-12,
                f"brackets not nested for {variant} on ({a}, {b})",
            )
            _check(tight.width <= 1e-7 + 1e-12, "tight bracket too wide")


def _verify_elementary_digits() -> None:
    br = delta11_bracket(0, 1e-9)
    _check(_floor_str(br.lo) == "6.57252", "elementary lower digits off")
    _check(_ceil_str(br.hi) == "6.65603", "elementary upper digits off")


def _verify_lipschitz() -> None:
    lip = math.sqrt(2.0 * math.pi / (1.0 + G_of(0.25 * L0, 0.25 * L0)))
    _check(_trunc_str(lip) == "2.00423", "lipschitz constant digits off")


def _brute_force_words(kind: str, max_word_length: int) -> set[tuple[int, ...]]:
    # Independent road: all reduced words up to length cap + 4, then
    # strip A powers from the appropriate ends and deduplicate.
    inv = (1, 0, 3, 2)
    out: set[tuple[int, ...]] = set()
    frontier: list[tuple[int, ...]] = [()]
    for _ in range(max_word_length + 4):
        nxt = []
        for w in frontier:
            for l in range(4):
                if w and inv[w[-1]] == l:
                    continue
                nxt.append(w + (l,))
        frontier = nxt
        for w in frontier:
            ww = list(w)
            while ww and ww[0] in (0, 1):
                ww.pop(0)
            if kind == "AA":
                while ww and ww[-1] in (0, 1):
                    ww.pop()
            else:
                while ww and ww[-1] in (2, 3):
                    ww.pop()
            if ww and len(ww) <= max_word_length:
                canon = tuple(ww)
                if kind == "AB" and canon[-1] not in (0, 1):
                    continue
                out.add(canon)
    return out


def _verify_brute_force() -> None:
    for kind in ("AA", "AB"):
        direct = {w.letters for w in enumerate_cosets(kind, 5)}
        brute = _brute_force_words(kind, 5)
        _check(direct == brute, f"{kind} enumeration disagrees with brute force")


def _verify_grid_inequalities() -> None:
    zs = np.logspace(-4.0, math.log10(40.0), 200)
    bound = 8.0 / (3.0 * math.pi * math.pi)
    for z in zs:
        zf = float(z)
        sz = math.sinh(0.5 * zf)
        for w in zs:
            wf = float(w)
            if wf < zf:
                continue
            lhs = (2.0 * zf / math.pi) * F_pair(zf, wf)
            sw = math.sinh(0.5 * wf)
            rhs = bound * zf * sz * sw * sw
            _check(lhs <= rhs * (1.0 + 1e-12) + 1e-300, f"envelope bound fails at ({zf}, {wf})")


def _verify_cor_grid() -> None:
    for ell in np.logspace(-4.0, math.log10(50.0), 200):
        lf = float(ell)
        lhs = grad_sq_upper_single(lf)
        rhs = (2.0 / math.pi) * (lf + lf * lf * math.exp(0.5 * lf) / 3.0)
        _check(lhs <= rhs * (1.0 + 1e-12), f"coarse upper fails at {lf}")


def _verify_auv_bound() -> None:
    cap = 4.0 / (3.0 * math.pi)
    for z in np.logspace(-4.0, math.log10(40.0), 60):
        for w in np.logspace(-4.0, math.log10(40.0), 60):
            zf, wf = float(z), float(w)
            if wf < zf:
                continue
            prod = (
                F_pair(zf, wf)
                / (math.sinh(0.5 * zf) * math.sinh(0.5 * wf) ** 2)
            )
            _check(prod <= cap * (1.0 + 1e-10), f"a u v cap fails at ({zf}, {wf})")


def _verify_refined_delta11() -> None:
    br = delta11_bracket(8, 1e-6)
    _check(
        _REFINED_PAPER[0] - 1e-5 <= br.lo and br.hi <= _REFINED_PAPER[1] + 1e-5,
        "refined bracket leaves published interval",
    )
    _check(br.width <= 0.04, "refined bracket too wide")


def _verify_c_min() -> None:
    values = [c_ratio(float(t), 1e-7) for t in np.logspace(-3.0, 2.0, 61)]
    _check(min(values) >= 0.94, "systole ratio dips under 0.94")
    _check(min(values) >= math.sqrt(2.0 / math.pi), "systole ratio under sqrt(2/pi)")


def _verify_pa_sane() -> None:
    pa = pa_translation_bounds(1e-8)
    _check(pa.case_i2 > 1.06, "case i2 bound implausibly low")
    _check(pa.case_i1 > 1.56, "case i1 bound implausibly low")
    _check(_trunc_str(pa.general) == "0.78474", "general bound digits off")


def _verify_square_symmetry() -> None:
    t0 = 2.0 * math.asinh(1.0)
    point = holonomy(t0)
    swap = {0: point.B, 1: point.B.inverse(), 2: point.A, 3: point.A.inverse()}
    axis_b = GeodesicH2(-1.0, 1.0)
    direct = []
    swapped = []
    for word in enumerate_cosets("AA", 3):
        direct.append(u_of_coset(point, word).value)
        m = swap[word.letters[0]]
        for l in word.letters[1:]:
            m = m @ swap[l]
        swapped.append(u_value(axis_b, translate_geodesic(m, axis_b)).value)
    for x, y in zip(sorted(direct), sorted(swapped)):
        _check(abs(x - y) <= 1e-9 * max(1.0, x), "square point multisets differ")


def _verify_path_bracket_contract() -> None:
    t0 = 2.0 * math.asinh(1.0)
    h = integral_H(0.0, t0, "plain", 1e-8)
    k = integral_K(0.0, t0)
    ref = delta11_bracket(8, 1e-6)
    _check(
        2.0 * h.lo - 1e-9 <= ref.lo and ref.hi <= 2.0 * k + 1e-9,
        "refined bracket escapes the integral envelope",
    )


def _verify_radius_duality() -> None:
    for ell in (0.3, 1.0, 2.0, 5.0):
        _check(
            abs(collar_radius_simple(2.0 * collar_radius_simple(ell)) - 0.5 * ell) < 1e-12,
            f"radius duality fails at {ell}",
        )
    _check(
        abs(collar_radius_separating(4.0 * math.asinh(1.0)) - 2.0 * math.asinh(1.0)) < 1e-12,
        "separating radius identity fails",
    )
    for ell in (0.3, 1.0, 2.0, 5.0):
        _check(
            collar_radius_separating(ell) >= collar_radius_simple(ell),
            f"separating radius under simple at {ell}",
        )


def _verify_factor_limits() -> None:
    _check(u_factor(0.0) == 0.25, "u factor start off")
    _check(abs(v_factor(0.0) - 2.0 / math.pi) < 1e-15, "v factor start off")
    for ell in (0.5, 1.0, 3.0, 10.0, 40.0):
        _check(u_factor(ell) <= (4.0 / 3.0) * math.exp(-0.5 * ell), "u factor cap fails")
        _check(v_factor(ell) <= math.exp(-0.5 * ell), "v factor cap fails")
    _check(abs(r_sys(L0) - 0.25 * L0) < 1e-12, "systole radius kink off")
    _check(
        r_sys(L0) < r_sys(L0 - 0.4) and r_sys(L0) < r_sys(L0 + 0.4),
        "systole radius not minimal at the crossing length",
    )


def _random_unit_map(rng: np.random.Generator) -> MoebiusMap | None:
    a, b, c, d = (float(x) for x in rng.normal(0.0, 1.0, size=4))
    det = a * d - b * c
    if det < 0.1:
        return None
    s = 1.0 / math.sqrt(det)
    return MoebiusMap(a * s, b * s, c * s, d * s)


def _verify_mobius_invariance() -> None:
    rng = np.random.default_rng(61087)
    checked = 0
    while checked < 150:
        pts = [float(x) for x in rng.normal(0.0, 3.0, size=4)]
        if abs(pts[0] - pts[1]) < 0.1 or abs(pts[2] - pts[3]) < 0.1:
            continue
        m = _random_unit_map(rng)
        if m is None:
            continue
        g1 = GeodesicH2(pts[0], pts[1])
        g2 = GeodesicH2(pts[2], pts[3])
        try:
            u1 = u_value(g1, g2)
            u2 = u_value(translate_geodesic(m, g1), translate_geodesic(m, g2))
        except ValueError:
            continue
        if u1.value > 1e6 or abs(u1.value - 1.0) < 1e-9:
            continue
        _check(
            abs(u1.value - u2.value) <= 1e-10 * max(1.0, u1.value),
            "u value not invariant under translation",
        )
        _check(u1.crossing == u2.crossing, "crossing flag not invariant")
        checked += 1


def _verify_axis_conjugation() -> None:
    rng = np.random.default_rng(20319)
    checked = 0
    while checked < 100:
        t = float(rng.uniform(0.1, 3.0))
        g = _random_unit_map(rng)
        if g is None:
            continue
        half = math.exp(0.5 * t)
        m0 = MoebiusMap(half, 0.0, 0.0, 1.0 / half)
        m = g @ m0 @ g.inverse()
        got = axis_of(m)
        want = translate_geodesic(g, axis_of(m0))
        pairs = sorted([got.p, got.q]), sorted([want.p, want.q])
        ok = True
        for x, y in zip(*pairs):
            if x == INF or y == INF:
                ok = ok and x == y
            elif abs(x) > 1e6 or abs(y) > 1e6:
                ok = ok and abs(x - y) <= 1e-4 * max(abs(x), abs(y))
            else:
                ok = ok and abs(x - y) <= 1e-8 * (1.0 + abs(x))
        _check(ok, "axis not equivariant under conjugation")
        _check(
            abs(translation_length(m) - t) <= 1e-10 * (1.0 + t),
            "translation length not conjugation invariant",
        )
        power = m @ m @ m
        _check(
            abs(translation_length(power) - 3.0 * t) <= 1e-9 * (1.0 + t),
            "translation length not additive under powers",
        )
        checked += 1


def _verify_separation_monotone() -> None:
    d11 = delta11_bracket(4, 1e-6)
    genus = [strata_separation(k, "has-genus", d11, 1e-6).value.lo for k in range(4)]
    _check(
        all(x <= y + 1e-12 for x, y in zip(genus, genus[1:])),
        "genus verdicts not monotone in k",
    )
    sphere = [
        strata_separation(k, "punctured-sphere", d11, 1e-6).value.lo for k in (0, 2, 4, 6)
    ]
    _check(
        all(x <= y + 1e-12 for x, y in zip(sphere, sphere[1:])),
        "sphere verdicts not monotone in k",
    )
    zero = strata_separation(0, "has-genus", d11, 1e-6)
    _check(zero.kind == "lower-bound" and zero.value.hi == 0.0, "k=0 verdict malformed")


_FAST_CHECKS = [
    ("collar_identity", _verify_collar_identity),
    ("kernel_examples", _verify_kernel_examples),
    ("kernel_positive", _verify_kernel_positive),
    ("collar_profile", _verify_collar_profile),
    ("envelope_identity", _verify_envelope_identity),
    ("radius_duality", _verify_radius_duality),
    ("factor_limits", _verify_factor_limits),
    ("mobius_invariance", _verify_mobius_invariance),
    ("axis_conjugation", _verify_axis_conjugation),
    ("cross_route_u", _verify_cross_route),
    ("commutator_trace", _verify_commutator),
    ("crossing_census", _verify_crossing_census),
    ("bracket_nesting", _verify_bracket_nesting),
    ("h_limits", _verify_h_limits),
    ("quadrature_nesting", _verify_quadrature_nesting),
    ("separation_monotone", _verify_separation_monotone),
    ("elementary_digits", _verify_elementary_digits),
    ("lipschitz_value", _verify_lipschitz),
]

_ALL_CHECKS = _FAST_CHECKS + [
    ("brute_force_cosets", _verify_brute_force),
    ("square_symmetry", _verify_square_symmetry),
    ("envelope_grid", _verify_grid_inequalities),
    ("coarse_upper_grid", _verify_cor_grid),
    ("auv_cap", _verify_auv_bound),
    ("refined_delta11", _verify_refined_delta11),
    ("path_bracket_contract", _verify_path_bracket_contract),
    ("c_min", _verify_c_min),
    ("pa_bounds", _verify_pa_sane),
]


def cmd_verify(args: argparse.Namespace) -> int:
    checks = _ALL_CHECKS if args.suite == "all" else _FAST_CHECKS
    failed = 0
    for name, fn in checks:
        try:
            fn()
        except AssertionError as exc:
            failed += 1
            sys.stdout.write(f"FAIL {name}: {exc}\n")
        else:
            sys.stdout.write(f"ok {name}\n")
    sys.stdout.write(f"{len(checks) - failed} passed, {failed} failed\n")
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wpstrata",
        description="Certified brackets for length-gradient bounds and strata distances.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("constants", help="recompute and compare the named constants")
    pc.add_argument("--tol", type=float, default=1e-8, help="bracket width target")
    pc.add_argument("--max-word-length", type=int, default=8)
    pc.add_argument("--format", choices=("text", "json", "csv"), default="text")
    pc.add_argument("--out", help="write to this path instead of stdout")
    pc.set_defaults(fn=cmd_constants)

    pd = sub.add_parser("delta11", help="refined one-handle distance bracket")
    pd.add_argument("--tol", type=float, default=1e-6, help="quadrature tolerance")
    pd.add_argument("--max-word-length", type=int, default=8)
    pd.add_argument("--format", choices=("text", "json", "csv"), default="text")
    pd.add_argument("--out", help="write to this path instead of stdout")
    pd.set_defaults(fn=cmd_delta11)

    pp = sub.add_parser("plot", help="write a deterministic SVG plus CSV sidecar")
    pp.add_argument("which", choices=("hsys-ratio", "h-vs-k"))
    pp.add_argument("--samples", type=int, default=64)
    pp.add_argument("--tol", type=float, default=1e-6)
    pp.add_argument("--out", help="SVG output path (default plot.svg)")
    pp.set_defaults(fn=cmd_plot)

    pv = sub.add_parser("verify", help="run the invariant checks")
    pv.add_argument("suite", nargs="?", choices=("fast", "all"), default="fast")
    pv.set_defaults(fn=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.fn is cmd_plot and args.samples < 16:
        parser.error("--samples must be at least 16")
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
