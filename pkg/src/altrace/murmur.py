"""Murmuration scans: weighted Hecke averages over level windows.

A family is a window X <= N <= beta*X of newform levels N = Q*M together
with a rule for which part is the Atkin-Lehner modulus Q.  For each prime
ell the scan averages sqrt(N/Q) * ell^(1-k/2) * tr T_ell W_Q over the
window, normalized by the number of newforms.  Numerators and denominators
accumulate exactly (integers and Fractions); floats appear only in the
final division, so scans are reproducible across platforms and worker
counts.
"""
from __future__ import annotations

import csv
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from . import signs, trace
from .arith import factor, is_prime, is_squarefree, primes_up_to

FAMILY_KINDS = ("I", "II", "III")


@dataclass(frozen=True)
class FamilySpec:
    """Arithmetically compatible family of (level, AL-modulus) pairs.

    kind I   : M fixed, Q ranges over squarefree integers coprime to M
               (optionally with omega(Q) = omega_q prime factors).
    kind II  : Q fixed squarefree, M ranges over m_set ("all", "sqf", or
               "sqf<r>" for squarefree with exactly r prime factors).
               m_set="all" needs Q prime or 1 (no closed trace otherwise).
    kind III : N squarefree with exactly r prime factors, the smallest
               len(fixed) of which are the fixed primes; Q is the product
               of the primes at the 1-based sorted positions in idx.
    """

    kind: str
    m: int = 1
    omega_q: int | None = None
    q: int = 1
    m_set: str = "all"
    r: int = 1
    fixed: tuple[int, ...] = ()
    idx: tuple[int, ...] = ()
    k: int = 2
    beta: Fraction = Fraction(2)

    def __post_init__(self) -> None:
        if self.kind not in FAMILY_KINDS:
            raise ValueError("family kind must be one of %s" % (FAMILY_KINDS,))
        if self.k < 2 or self.k % 2:
            raise ValueError("weight must be an even integer >= 2")
        if self.beta <= 1:
            raise ValueError("beta must be > 1")
        if self.kind == "I":
            if self.m < 1:
                raise ValueError("kind I needs fixed M >= 1")
            if self.omega_q is not None and self.omega_q < 1:
                raise ValueError("omega restriction must be >= 1")
        elif self.kind == "II":
            if self.q < 1 or not is_squarefree(self.q):
                raise ValueError("kind II needs squarefree Q >= 1")
            if self.m_set != "all" and not (
                self.m_set == "sqf" or (self.m_set.startswith("sqf") and self.m_set[3:].isdigit())
            ):
                raise ValueError("M set must be 'all', 'sqf', or 'sqf<r>'")
            if self.m_set == "all" and self.q != 1 and not is_prime(self.q):
                raise ValueError("kind II with M ranging over all integers needs Q prime or 1")
        else:
            if self.r < 1:
                raise ValueError("kind III needs r >= 1")
            if len(self.fixed) > self.r:
                raise ValueError("more fixed primes than prime slots")
            if tuple(sorted(set(self.fixed))) != self.fixed or not all(is_prime(p) for p in self.fixed):
                raise ValueError("fixed part must be strictly increasing primes")
            if not all(1 <= i <= self.r for i in self.idx) or len(set(self.idx)) != len(self.idx):
                raise ValueError("idx must be distinct 1-based positions <= r")

    def canonical(self) -> str:
        if self.kind == "I":
            s = "I:M=%d" % self.m
            if self.omega_q is not None:
                s += ",omega=%d" % self.omega_q
            return s
        if self.kind == "II":
            return "II:Q=%d,M=%s" % (self.q, self.m_set)
        s = "III:r=%d" % self.r
        if self.fixed:
            s += ",fixed=" + ",".join(str(p) for p in self.fixed)
        if self.idx:
            s += ",idx=" + ",".join(str(i) for i in self.idx)
        return s

    def __str__(self) -> str:
        return self.canonical()


def parse_family(text: str, k: int = 2, beta: Fraction = Fraction(2)) -> FamilySpec:
    """Parse the compact grammar, e.g. "I:M=6,omega=2", "II:Q=3,M=sqf",
    "III:r=3,fixed=2,3,idx=1,2".  Bare tokens extend the previous list."""
    head, _, rest = text.partition(":")
    kind = head.strip().upper()
    if kind not in FAMILY_KINDS:
        raise ValueError("unknown family kind %r" % (head,))
    fields: dict[str, list[str]] = {}
    last = None
    for tok in rest.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if "=" in tok:
            key, _, val = tok.partition("=")
            last = key.strip().lower()
            fields.setdefault(last, []).append(val.strip())
        elif last is not None:
            fields[last].append(tok)
        else:
            raise ValueError("stray token %r in family spec" % (tok,))

    def one(key: str, default=None):
        vals = fields.pop(key, None)
        if vals is None:
            return default
        if len(vals) != 1:
            raise ValueError("field %s given %d times" % (key, len(vals)))
        return vals[0]

    if kind == "I":
        spec = FamilySpec(
            kind="I",
            m=int(one("m", "1")),
            omega_q=(lambda v: int(v) if v is not None else None)(one("omega")),
            k=k,
            beta=beta,
        )
    elif kind == "II":
        spec = FamilySpec(kind="II", q=int(one("q", "1")), m_set=one("m", "all"), k=k, beta=beta)
    else:
        fixed = tuple(int(v) for v in fields.pop("fixed", []) if v)
        idx = tuple(int(v) for v in fields.pop("idx", []) if v)
        spec = FamilySpec(kind="III", r=int(one("r", "1")), fixed=fixed, idx=idx, k=k, beta=beta)
    if fields:
        raise ValueError("unknown fields %s for kind %s" % (sorted(fields), kind))
    return spec


@dataclass(frozen=True)
class MurmurationPoint:
    ell: int
    X: int
    x: Fraction
    average: float
    count: int


def _primes_in(ell_range) -> list[int]:
    if isinstance(ell_range, tuple) and len(ell_range) == 2:
        lo, hi = ell_range
        return [int(p) for p in primes_up_to(hi) if p >= lo]
    out = [int(p) for p in ell_range]
    if not all(is_prime(p) for p in out):
        raise ValueError("ell_range must contain primes only")
    return out


def _window_levels(spec: FamilySpec, X: int) -> list[tuple[int, int]]:
    """All (Q, M) with X <= QM <= beta*X in the family, any ell."""
    lo, hi = X, math.floor(spec.beta * X)
    out = []
    if spec.kind == "I":
        m = spec.m
        for q in range(max(1, -(-lo // m)), hi // m + 1):
            if q * m < lo or math.gcd(q, m) != 1 or not is_squarefree(q):
                continue
            if spec.omega_q is not None and len(factor(q).factors) != spec.omega_q:
                continue
            out.append((q, m))
    elif spec.kind == "II":
        q = spec.q
        want_omega = None
        if spec.m_set.startswith("sqf") and spec.m_set[3:]:
            want_omega = int(spec.m_set[3:])
        for m in range(max(1, -(-lo // q)), hi // q + 1):
            if q * m < lo or math.gcd(q, m) != 1:
                continue
            if spec.m_set != "all":
                if not is_squarefree(m):
                    continue
                if want_omega is not None and len(factor(m).factors) != want_omega:
                    continue
            out.append((q, m))
    else:
        fixed_prod = math.prod(spec.fixed)
        for n in range(lo, hi + 1):
            if fixed_prod and n % fixed_prod:
                continue
            if not is_squarefree(n):
                continue
            ps = [p for p, _ in factor(n).factors]
            if len(ps) != spec.r or tuple(ps[: len(spec.fixed)]) != spec.fixed:
                continue
            q = math.prod(ps[i - 1] for i in spec.idx)
            out.append((q, n // q))
    return out


def _trace_at(spec: FamilySpec, k: int, q: int, m: int, ell: int) -> int:
    if spec.kind == "II" and spec.m_set == "all":
        if q == 1:
            return trace.t_new_level(k, m, ell)
        return trace.t_new(k, q, 1, m, ell)
    return trace.t_new_squarefree(k, q, m, ell)


def scan_WQ(spec: FamilySpec, ell_range, X: int, workers: int = 1) -> list[MurmurationPoint]:
    """Average of sqrt(N/Q) ell^(1-k/2) tr T_ell W_Q over X <= N <= beta X.

    Primes dividing every level in the family (e.g. the fixed part) are
    skipped.  Raises if the window itself is empty.
    """
    levels = _window_levels(spec, X)
    if not levels:
        raise ValueError("empty level window [%d, %s] for %s" % (X, spec.beta * X, spec))
    k = spec.k
    ells = _primes_in(ell_range)

    def point(ell: int) -> MurmurationPoint | None:
        groups: dict[int, int] = {}
        dim_total = 0
        for q, m in levels:
            if (q * m) % ell == 0:
                continue
            groups[m] = groups.get(m, 0) + _trace_at(spec, k, q, m, ell)
            dim_total += signs.dim_new(k, q * m)
        if not groups:
            return None
        if dim_total == 0:
            raise ValueError("window [%d, %s] has no newforms at weight %d" % (X, spec.beta * X, k))
        scale = Fraction(1, ell ** (k // 2 - 1))
        avg = sum(float(scale * s) * math.sqrt(m) for m, s in sorted(groups.items()))
        return MurmurationPoint(ell, X, Fraction(ell, X), avg / dim_total, dim_total)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(point, ells))
    else:
        results = [point(ell) for ell in ells]
    points = [p for p in results if p is not None]
    if not points:
        raise ValueError("every prime in the range divides every level of %s" % (spec,))
    return points


def scan_eigenspace(
    spec: FamilySpec, epsilon: tuple[int, ...], ell_range, X: int, workers: int = 1
) -> list[MurmurationPoint]:
    """Average of ell^(1-k/2) a_ell over the joint Atkin-Lehner eigenspace.

    epsilon assigns +-1 to each of the r level primes in increasing order;
    the eigenspace trace is the 2^r-term signed combination of the W_Q
    traces, divided by 2^r.
    """
    if spec.kind != "III":
        raise ValueError("eigenspace scans need a kind III family")
    if len(epsilon) != spec.r or any(e not in (-1, 1) for e in epsilon):
        raise ValueError("epsilon must be a +-1 vector of length r")
    base = replace(spec, idx=())
    levels = _window_levels(base, X)
    if not levels:
        raise ValueError("empty level window [%d, %s] for %s" % (X, spec.beta * X, spec))
    k = spec.k
    ells = _primes_in(ell_range)
    subsets = list(range(1 << spec.r))

    def eig_sum(n: int, ps: list[int], ell: int) -> Fraction:
        total = 0
        for mask in subsets:
            q = 1
            sign = 1
            for i in range(spec.r):
                if mask >> i & 1:
                    q *= ps[i]
                    sign *= epsilon[i]
            if q == 1 and ell == 1:
                t = signs.dim_new(k, n)
            else:
                t = trace.t_new_squarefree(k, q, n // q, ell)
            total += sign * t
        out = Fraction(total, 1 << spec.r)
        assert out.denominator == 1, (n, ell, out)
        return out

    dims: dict[int, Fraction] = {}
    for _, n in ((q, q * m) for q, m in levels):
        ps = [p for p, _ in factor(n).factors]
        dims[n] = eig_sum(n, ps, 1)
        assert dims[n] >= 0, (n, dims[n])

    def point(ell: int) -> MurmurationPoint | None:
        num = Fraction(0)
        den = 0
        for q, m in levels:
            n = q * m
            if n % ell == 0:
                continue
            ps = [p for p, _ in factor(n).factors]
            num += eig_sum(n, ps, ell)
            den += int(dims[n])
        if num == 0 and den == 0 and any((q * m) % ell == 0 for q, m in levels):
            return None
        if den == 0:
            raise ValueError("eigenspace empty over window [%d, %s]" % (X, spec.beta * X))
        avg = float(num * Fraction(1, ell ** (k // 2 - 1))) / den
        return MurmurationPoint(ell, X, Fraction(ell, X), avg, den)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(point, ells))
    else:
        results = [point(ell) for ell in ells]
    return [p for p in results if p is not None]


def smooth(points: list[MurmurationPoint], delta: float) -> list[MurmurationPoint]:
    """Replace each average by its mean over scanned primes in [l, l+l^delta)."""
    if not 0 < delta < 1:
        raise ValueError("delta must be in (0, 1)")
    pts = sorted(points, key=lambda p: p.ell)
    ells = [p.ell for p in pts]
    out = []
    for i, p in enumerate(pts):
        hi = p.ell + p.ell**delta
        vals = []
        for j in range(i, len(pts)):
            if ells[j] >= hi:
                break
            vals.append(pts[j].average)
        if not vals:
            warnings.warn("empty smoothing window at ell=%d" % p.ell)
            out.append(p)
            continue
        out.append(replace(p, average=sum(vals) / len(vals)))
    return out


@dataclass(frozen=True)
class SqrtFit:
    c: float
    d: float
    rms_residual: float  # relative to the data range


def sqrt_fit(points: list[MurmurationPoint], k: int, min_points: int = 8) -> SqrtFit:
    """Least-squares fit average ~ c sqrt(x) (+ d when k = 2)."""
    if len(points) < min_points:
        raise ValueError("need at least %d points, got %d" % (min_points, len(points)))
    xs = np.array([math.sqrt(p.x) for p in points])
    ys = np.array([p.average for p in points])
    if k == 2:
        design = np.column_stack([xs, np.ones_like(xs)])
    else:
        design = xs.reshape(-1, 1)
    coef, *_ = np.linalg.lstsq(design, ys, rcond=None)
    fitted = design @ coef
    rms = math.sqrt(float(np.mean((ys - fitted) ** 2)))
    spread = float(ys.max() - ys.min()) or 1.0
    c = float(coef[0])
    d = float(coef[1]) if k == 2 else 0.0
    return SqrtFit(c, d, rms / spread)


@dataclass(frozen=True)
class CancellationReport:
    k: int
    X: int
    beta: Fraction
    max_abs_sum: float  # max |A+ + A-|
    max_abs_diff: float  # max |A+ - A-|
    argmax_ell: int


def cancellation_diag(
    k: int, X: int, beta: Fraction = Fraction(2), ell_range=None, workers: int = 1
) -> CancellationReport:
    """Compare |A+ + A-| against |A+ - A-| for the squarefree-level family.

    A^+- are the unweighted averages over the two Fricke eigenspaces,
    reconstructed from the Q=1 and Q=N scans; primes default to [X/2, 2X].
    """
    if ell_range is None:
        ell_range = (X // 2, 2 * X)
    ells = _primes_in(ell_range)
    lo, hi = X, math.floor(beta * X)
    levels = [n for n in range(lo, hi + 1) if is_squarefree(n)]
    if not levels:
        raise ValueError("no squarefree levels in [%d, %d]" % (lo, hi))

    def measure(ell: int) -> tuple[float, float]:
        s1 = sn = d1 = dn = 0
        for n in levels:
            if n % ell == 0:
                continue
            s1 += trace.t_new_squarefree(k, 1, n, ell)
            sn += trace.t_new_squarefree(k, n, 1, ell)
            d1 += signs.dim_new(k, n)
            dn += trace.t_new_squarefree(k, n, 1, 1)
        if d1 + dn == 0 or d1 - dn == 0:
            raise ValueError("an eigenspace is empty over [%d, %d]" % (lo, hi))
        scale = Fraction(1, ell ** (k // 2 - 1))
        plus = float(scale * Fraction(s1 + sn, 2)) / ((d1 + dn) // 2)
        minus = float(scale * Fraction(s1 - sn, 2)) / ((d1 - dn) // 2)
        return abs(plus + minus), abs(plus - minus)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(measure, ells))
    else:
        rows = [measure(ell) for ell in ells]
    sums = [r[0] for r in rows]
    best = max(range(len(ells)), key=lambda i: sums[i])
    return CancellationReport(k, X, beta, sums[best], max(r[1] for r in rows), ells[best])


# ---------------------------------------------------------------------------
# artifact emission

CSV_HEADER = "family,k,beta,X,ell,x,avg,count"

_SVG_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


def _as_series(points) -> dict[str, list[MurmurationPoint]]:
    if isinstance(points, dict):
        return points
    return {"": list(points)}


def emit(points, fmt: str, path: str, spec: FamilySpec | None = None) -> None:
    """Write points (a list, or a dict label -> list for several series)
    to CSV or a standalone SVG scatter."""
    series = _as_series(points)
    family = spec.canonical() if spec is not None else ""
    k = spec.k if spec is not None else 0
    beta = spec.beta if spec is not None else Fraction(2)
    try:
        if fmt == "csv":
            _emit_csv(series, path, family, k, beta)
        elif fmt == "svg":
            _emit_svg(series, path)
        else:
            raise ValueError("format must be 'csv' or 'svg'")
    except OSError as exc:
        raise OSError("cannot write %s: %s" % (path, exc)) from exc


def _emit_csv(series, path, family, k, beta):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER.split(","))
        for label, pts in series.items():
            fam = family if not label else (family + "#" + label if family else label)
            for p in pts:
                writer.writerow(
                    [fam, k, beta, p.X, p.ell, "%.12g" % p.x, "%.12g" % p.average, p.count]
                )


def read_csv(path: str) -> dict[str, list[MurmurationPoint]]:
    """Re-read an emitted CSV; x is rebuilt exactly as ell/X."""
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh) if row]
    if not rows or rows[0] != CSV_HEADER.split(","):
        raise ValueError("%s: not a scan CSV" % path)
    out: dict[str, list[MurmurationPoint]] = {}
    for fam, _k, _beta, xw, ell, _x, avg, count in rows[1:]:
        out.setdefault(fam, []).append(
            MurmurationPoint(int(ell), int(xw), Fraction(int(ell), int(xw)), float(avg), int(count))
        )
    return out


def _emit_svg(series, path, width=640, height=420, margin=50):
    pts_all = [p for pts in series.values() for p in pts]
    if pts_all:
        x_lo = min(float(p.x) for p in pts_all)
        x_hi = max(float(p.x) for p in pts_all)
        y_lo = min(p.average for p in pts_all)
        y_hi = max(p.average for p in pts_all)
    else:
        x_lo, x_hi, y_lo, y_hi = 0.0, 1.0, 0.0, 1.0
    if x_hi == x_lo:
        x_hi = x_lo + 1
    if y_hi == y_lo:
        y_hi = y_lo + 1

    def sx(v):
        return margin + (v - x_lo) / (x_hi - x_lo) * (width - 2 * margin)

    def sy(v):
        return height - margin - (v - y_lo) / (y_hi - y_lo) * (height - 2 * margin)

    rows = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d">' % (width, height),
        '<rect width="100%" height="100%" fill="white"/>',
        '<line x1="%g" y1="%g" x2="%g" y2="%g" stroke="black"/>'
        % (margin, height - margin, width - margin, height - margin),
        '<line x1="%g" y1="%g" x2="%g" y2="%g" stroke="black"/>' % (margin, margin, margin, height - margin),
        '<text x="%g" y="%g" font-size="12" text-anchor="middle">l/X</text>'
        % (width / 2, height - margin / 4),
        '<text x="%g" y="%g" font-size="12" text-anchor="middle" transform="rotate(-90 %g %g)">average</text>'
        % (margin / 3, height / 2, margin / 3, height / 2),
    ]
    if 0 >= y_lo and 0 <= y_hi:
        rows.append(
            '<line x1="%g" y1="%g" x2="%g" y2="%g" stroke="#bbbbbb" stroke-dasharray="4 3"/>'
            % (margin, sy(0), width - margin, sy(0))
        )
    for frac in (0.0, 0.5, 1.0):
        xv = x_lo + frac * (x_hi - x_lo)
        yv = y_lo + frac * (y_hi - y_lo)
        rows.append(
            '<text x="%g" y="%g" font-size="10" text-anchor="middle">%.3g</text>'
            % (sx(xv), height - margin + 15, xv)
        )
        rows.append(
            '<text x="%g" y="%g" font-size="10" text-anchor="end">%.3g</text>' % (margin - 5, sy(yv) + 3, yv)
        )
    for i, (label, pts) in enumerate(series.items()):
        color = _SVG_COLORS[i % len(_SVG_COLORS)]
        for p in pts:
            rows.append(
                '<circle cx="%g" cy="%g" r="2.2" fill="%s" fill-opacity="0.75"/>'
                % (sx(float(p.x)), sy(p.average), color)
            )
        if label:
            rows.append(
                '<text x="%g" y="%g" font-size="11" fill="%s">%s</text>'
                % (width - margin - 80, margin + 14 * (i + 1), color, label)
            )
    rows.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(rows) + "\n")
