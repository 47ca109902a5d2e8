"""Closed-form expectations for the grid families and suites that check them."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from collections.abc import Iterator
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

from . import ALGORITHM_VERSION, __version__
from .bits import mask
from .graphs import FamilySpec, build_family, diameter
from .homology import DEFAULT_PRIME, SECOND_PRIME, char_sensitivity, depth_ideal, depth_quotient
from .ideals import (
    L_variables,
    SquarefreeIdeal,
    build_L,
    colon,
    compress,
    extend,
    family_ideal,
    layer_vars,
)
from .stanley.decomposition import verify_decomposition
from .stanley.explicit import cycle_pair, pair_bound, paper_decomposition_C2, paper_decomposition_C3
from .stanley.poset import ModuleDescriptor, ideal_module, quotient_module
from .stanley.search import sdepth_exact

SCHEMA_VERSION = 1
SUITES = ("m1", "m2", "m3", "aux", "pairs", "conjecture", "bounds", "stretch")
DEFAULT_MAX_VARS = 12
DEFAULT_BUDGET = 30.0

PASS, FAIL, INCONCLUSIVE, EVIDENCE = "Pass", "Fail", "Inconclusive", "Evidence"


def ceil3(a: int) -> int:
    return math.ceil(a / 3)


@dataclass(frozen=True)
class Form:
    """Exact(a), Range(a, b), UpperBound(a) or StrictLowerBound(a)."""

    kind: str
    a: int
    b: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("Exact", "Range", "UpperBound", "StrictLowerBound"):
            raise ValueError(f"unknown form {self.kind!r}")
        if self.kind == "Range" and (self.b is None or self.a > self.b):
            raise ValueError(f"bad range [{self.a}, {self.b}]")

    def __str__(self) -> str:
        if self.kind == "Range":
            return f"Range({self.a}, {self.b})"
        return f"{self.kind}({self.a})"


def Exact(a: int) -> Form:
    return Form("Exact", a)


def Range(a: int, b: int) -> Form:
    return Form("Range", a, b)


def UpperBound(a: int) -> Form:
    return Form("UpperBound", a)


def StrictLowerBound(a: int) -> Form:
    return Form("StrictLowerBound", a)


@dataclass(frozen=True)
class Expectation:
    family: str
    kind: str
    measure: str
    form: Form
    citation: str

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "kind": self.kind,
            "measure": self.measure,
            "form": str(self.form),
            "citation": self.citation,
        }


def verdict(form: Form, lower: int, upper: int) -> str:
    """Compare a computed bracket ``[lower, upper]`` (equal when exact) with a form."""
    if form.kind == "Exact":
        if lower == upper == form.a:
            return PASS
        return FAIL if not lower <= form.a <= upper else INCONCLUSIVE
    if form.kind == "Range":
        if form.a <= lower and upper <= form.b:
            return PASS
        return FAIL if upper < form.a or lower > form.b else INCONCLUSIVE
    if form.kind == "UpperBound":
        if upper <= form.a:
            return PASS
        return FAIL if lower > form.a else INCONCLUSIVE
    if lower > form.a:
        return PASS
    return FAIL if upper <= form.a else INCONCLUSIVE


# published CoCoA datapoints, (n, m) -> (depth, sdepth)
COCOA = {(4, 4): (4, 4), (5, 4): (None, 4), (6, 4): (None, 4)}


def _p_quotient(n: int, m: int, measure: str) -> Optional[tuple[Form, str]]:
    a, b = max(n, m), min(n, m)
    if b <= 3:
        return Exact(ceil3(a)), f"P_{{n,{b}}} quotient: depth = sdepth = ceil(n/3)"
    cocoa = COCOA.get((a, b))
    if cocoa is not None:
        value = cocoa[0] if measure == "depth" else cocoa[1]
        if value is not None:
            return Exact(value), f"CoCoA datapoint for P_{{{a},{b}}}"
    return UpperBound(ceil3(n) * ceil3(m)), "upper bound ceil(n/3)ceil(m/3) for P_{n,m}"


def _c_quotient(n: int, m: int, measure: str) -> tuple[Form, str]:
    lo, hi = ceil3(n - 1), ceil3(n)
    if m == 1:
        if measure == "depth":
            return Exact(lo), "C_{n,1} quotient: depth = ceil((n-1)/3)"
        return Range(lo, hi), "C_{n,1} quotient: ceil((n-1)/3) <= sdepth <= ceil(n/3)"
    if m == 2:
        if measure == "depth":
            return Exact(lo), "C_{n,2} quotient: depth = ceil((n-1)/3)"
        if n == 3:
            return Exact(1), "C_{3,2} quotient: squarefree Veronese case, sdepth = 1"
        return Range(lo, hi), "C_{n,2} quotient: ceil((n-1)/3) <= sdepth <= ceil(n/3)"
    if m == 3:
        if n % 3 in (0, 2):
            return Exact(lo), "C_{n,3} quotient, n = 0,2 mod 3: depth = sdepth = ceil((n-1)/3)"
        return Range(lo, hi), "C_{n,3} quotient, n = 1 mod 3: between ceil((n-1)/3) and ceil(n/3)"
    if measure == "depth":
        if m % 3 == 0:
            return UpperBound(hi * ceil3(m)), "C_{n,m} depth upper bound, m = 0 mod 3"
        return UpperBound(lo + (ceil3(m) - 1) * hi), "C_{n,m} depth upper bound, m = 1,2 mod 3"
    return UpperBound(hi * ceil3(m)), "C_{n,m} sdepth upper bound ceil(n/3)ceil(m/3)"


def _quotient(spec: FamilySpec, measure: str) -> Optional[tuple[Form, str]]:
    n, m = spec.n, spec.m
    if spec.family == "P":
        return _p_quotient(n, m, measure)
    if spec.family == "C":
        return _c_quotient(n, m, measure)
    if spec.family == "Pstar":
        return Exact(ceil3(n + 1)), "P*_{n,3} quotient: depth = sdepth = ceil((n+1)/3)"
    if spec.family == "Pstarstar":
        return Exact(ceil3(n + 2)), "P**_{n,3} quotient: depth = sdepth = ceil((n+2)/3)"
    if spec.family == "Cdiamond" and measure == "sdepth":
        if n % 3 == 0:
            return Exact(ceil3(n - 2)), "C<>_{n,3} quotient, n = 0 mod 3: sdepth = ceil((n-2)/3)"
        return Range(ceil3(n - 2), ceil3(n)), "C<>_{n,3} quotient: ceil((n-2)/3) <= sdepth <= ceil(n/3)"
    return None


def _shift(form: Form, r: int) -> Form:
    return Form(form.kind, form.a + r, None if form.b is None else form.b + r)


def expected_value(spec: FamilySpec, kind: str, measure: str = "sdepth") -> Optional[Expectation]:
    """The stated value or bound for one family, module kind and measure; None if nothing is stated."""
    if measure not in ("depth", "sdepth"):
        raise ValueError(f"unknown measure {measure!r}")
    found: Optional[tuple[Form, str]] = None
    ambient = family_ideal(spec).ambient
    if kind == "quotient":
        found = _quotient(spec, measure)
    elif kind == "ideal":
        base = _quotient(spec, measure)
        if measure == "depth":
            # depth(I) = depth(S/I) + 1
            if base is not None:
                found = _shift(base[0], 1), base[1] + "; depth(I) = depth(S/I) + 1"
        elif spec.family == "P" and min(spec.n, spec.m) <= 3:
            found = StrictLowerBound(ceil3(max(spec.n, spec.m))), "sdepth(I(P_{n,m})) > ceil(n/3) for m <= 3"
        elif spec.family == "C" and spec.m in (2, 3):
            found = Range(ceil3(spec.n + 2), ambient), "sdepth(I(C_{n,m})) >= ceil((n+2)/3) for m = 2, 3"
        elif spec.family == "C" and spec.m == 1:
            found = Range(ceil3(spec.n - 1), ambient), "sdepth(I(C_n)) >= sdepth(S/I(C_n)) >= ceil((n-1)/3)"
    elif kind == "pair":
        if spec.family == "C" and spec.m in (2, 3) and measure == "sdepth":
            found = Range(pair_bound(spec.n), ambient), "sdepth(I(C_{n,m})/I(P_{n,m})) >= ceil((n+2)/3)"
    else:
        raise ValueError(f"unknown module kind {kind!r}")
    if found is None:
        return None
    return Expectation(str(spec), kind, measure, found[0], found[1])


@dataclass
class Row:
    suite: str
    check: str
    instance: str
    kind: str
    measure: str
    expected: str
    citation: str
    lower: Optional[int]
    upper: Optional[int]
    verdict: str
    note: str = ""
    char: int = DEFAULT_PRIME
    budget: Optional[float] = None
    data: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def to_json(self) -> dict:
        out = asdict(self)
        out.pop("elapsed")
        return out


@dataclass
class Report:
    suite: str
    rows: list[Row] = field(default_factory=list)
    char: int = DEFAULT_PRIME
    max_vars: int = DEFAULT_MAX_VARS
    budget: float = DEFAULT_BUDGET

    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, INCONCLUSIVE: 0, EVIDENCE: 0}
        for r in self.rows:
            out[r.verdict] += 1
        return out

    @property
    def exit_code(self) -> int:
        c = self.counts()
        if c[FAIL]:
            return 1
        return 3 if c[INCONCLUSIVE] else 0

    def to_json(self) -> dict:
        return {
            "header": {
                "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
                "elapsed": [round(r.elapsed, 3) for r in self.rows],
            },
            "schema_version": SCHEMA_VERSION,
            "tool_version": __version__,
            "algorithm_version": ALGORITHM_VERSION,
            "suite": self.suite,
            "char": self.char,
            "max_vars": self.max_vars,
            "budget": self.budget,
            "counts": self.counts(),
            "rows": [r.to_json() for r in self.rows],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)

    def to_csv(self) -> str:
        cols = ["suite", "check", "instance", "kind", "measure", "expected", "lower", "upper", "verdict", "note"]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in self.rows:
            w.writerow([getattr(r, c) for c in cols])
        return buf.getvalue()

    def summary(self) -> str:
        c = self.counts()
        return f"{self.suite}: " + ", ".join(f"{k} {v}" for k, v in c.items() if v)


@dataclass(frozen=True)
class Limits:
    max_vars: int = DEFAULT_MAX_VARS
    budget: float = DEFAULT_BUDGET
    char: int = DEFAULT_PRIME


def _module(spec: FamilySpec, kind: str) -> ModuleDescriptor:
    if kind == "pair":
        return cycle_pair(spec.n, spec.m)
    ideal = family_ideal(spec)
    return ideal_module(ideal) if kind == "ideal" else quotient_module(ideal)


def _timed(fn: Callable):
    start = time.monotonic()
    out = fn()
    return out, time.monotonic() - start


def measure_row(suite: str, spec: FamilySpec, kind: str, measure: str, limits: Limits, check: str = "value") -> Row:
    """Compute one value and judge it against :func:`expected_value`."""
    exp = expected_value(spec, kind, measure)
    data: dict = {}
    note = ""
    if measure == "depth":
        ideal = family_ideal(spec)
        fn = depth_ideal if kind == "ideal" else depth_quotient
        value, elapsed = _timed(lambda: fn(ideal, limits.char))
        lower = upper = value
    else:
        first = None
        if exp is not None and exp.form.kind in ("StrictLowerBound", "Range") and kind != "quotient":
            first = exp.form.a + (1 if exp.form.kind == "StrictLowerBound" else 0)
        res, elapsed = _timed(lambda: sdepth_exact(_module(spec, kind), limits.budget, first_probe=first))
        lower, upper = res.lower, res.upper
        data["probes"] = [list(p) for p in res.probes]
        if res.budget_hit:
            note = "budget hit"
    if exp is None:
        v, form, cite = EVIDENCE, "none", "no stated value"
    else:
        v, form, cite = verdict(exp.form, lower, upper), str(exp.form), exp.citation
        if v == FAIL:
            data["ideal"] = family_ideal(spec).to_json()
    return Row(suite, check, str(spec), kind, measure, form, cite, lower, upper, v, note,
               limits.char, limits.budget if measure == "sdepth" else None, data, elapsed)


def _instances(families: list[str], ms: list[int], limits: Limits, n_max: int = 24) -> Iterator[FamilySpec]:
    for fam in families:
        for m in ms:
            for n in range(1, n_max + 1):
                try:
                    spec = FamilySpec(fam, n, m)
                except ValueError:
                    continue
                if family_ideal_size(spec) > limits.max_vars:
                    break
                yield spec


def family_ideal_size(spec: FamilySpec) -> int:
    return build_family(spec).graph.vertex_count


def _value_rows(suite: str, specs, limits: Limits) -> list[Row]:
    rows = []
    for spec in specs:
        for measure in ("depth", "sdepth"):
            rows.append(measure_row(suite, spec, "quotient", measure, limits))
        rows.append(measure_row(suite, spec, "ideal", "depth", limits))
        if spec.family == "C" and spec.n == 4 and spec.m == 3:
            rows.append(example_c43(suite, limits))
    return rows


def example_c43(suite: str, limits: Limits) -> Row:
    ideal = family_ideal(FamilySpec("C", 4, 3))
    value, elapsed = _timed(lambda: depth_quotient(ideal, limits.char))
    return Row(suite, "example", "C:4,3", "quotient", "depth", "Exact(2)",
               "worked example: depth(S/I(C_{4,3})) = 2", value, value,
               PASS if value == 2 else FAIL, char=limits.char, elapsed=elapsed)


def suite_m(m: int, limits: Limits) -> list[Row]:
    specs = list(_instances(["P", "C"], [m], limits))
    return _value_rows(f"m{m}", specs, limits)


def l_rows(limits: Limits, n_max: int = 8) -> list[Row]:
    rows = []
    seen: dict[SquarefreeIdeal, object] = {}
    for n in range(5, n_max + 1):
        for l in range(3, n - 1):
            vs = L_variables(n, l)
            if len(vs) > 14:
                continue
            # on its own variables L_l does not depend on n, so each l is searched once
            local = compress(build_L(n, l), vs)
            need = ceil3(l + 2) + 1
            if local not in seen:
                seen[local] = _timed(lambda: sdepth_exact(ideal_module(local), limits.budget, first_probe=need))
            res, elapsed = seen[local]
            v = PASS if res.lower >= need else (FAIL if res.upper < need else INCONCLUSIVE)
            rows.append(Row("aux", "L_l", f"L:n={n},l={l}", "ideal", "sdepth", f"Range({need}, {len(vs)})",
                            "sdepth(L_l) >= ceil((l+2)/3) + 1", res.lower, res.upper, v,
                            "budget hit" if res.budget_hit else "", budget=limits.budget,
                            data={"ambient": len(vs)}, elapsed=elapsed))
    return rows


@dataclass(frozen=True)
class ColonCase:
    """``(I : x_u)`` should be the ideal of ``target`` on ``image`` plus linear ``killed`` and ``free`` variables."""

    name: str
    ideal: SquarefreeIdeal
    u: int
    target: SquarefreeIdeal
    image: tuple[int, ...]
    killed: tuple[int, ...]
    free: tuple[int, ...]


def colon_cases(limits: Limits) -> list[ColonCase]:
    out = []
    for n in range(4, 10):
        if 2 * n > limits.max_vars:
            break
        x, y, _ = layer_vars(n)
        c = family_ideal(FamilySpec("C", n, 2))
        target = family_ideal(FamilySpec("P", n - 3, 2))
        image = tuple(x[2 : n - 1] + y[2 : n - 1])
        out.append(ColonCase(f"(I(C:{n},2) : x{n})", c, 1 << x[n], target, image,
                             (x[1], y[1], x[n - 1], y[n - 1], y[n]), (x[n],)))
    for n in range(4, 10):
        if 3 * n > limits.max_vars + 3:
            break
        x, y, z = layer_vars(n)
        target = family_ideal(FamilySpec("P", n - 3, 3))
        p = family_ideal(FamilySpec("P", n, 3))
        image = tuple(x[4:] + y[4:] + z[4:])
        killed = tuple(sorted(v for v in (x[1], x[2], x[3], y[1], y[3], z[1], z[2], z[3])))
        out.append(ColonCase(f"(I(P:{n},3) : y2)", p, 1 << y[2], target, image, killed, (y[2],)))
        c = family_ideal(FamilySpec("C", n, 3))
        image = tuple(x[2 : n - 1] + y[2 : n - 1] + z[2 : n - 1])
        killed = tuple(sorted((x[n - 1], x[n], x[1], y[n - 1], y[1], z[n - 1], z[n], z[1])))
        out.append(ColonCase(f"(I(C:{n},3) : y{n})", c, 1 << y[n], target, image, killed, (y[n],)))
    for n in range(6, 10):
        spec = FamilySpec("Cdiamond", n, 3)
        fam = build_family(spec)
        if fam.graph.vertex_count > limits.max_vars + 2:
            break
        ix = fam.indexer
        star = family_ideal(FamilySpec("Pstar", n - 4, 3))
        # columns 3..n-2 in order, then z_{n-1} as the extra vertex
        image = tuple([ix.flat(i, j) for j in (1, 2, 3) for i in range(3, n - 1)] + [ix.flat(n - 1, 3)])
        out.append(ColonCase(f"(I(Cdiamond:{n}) : z1)", family_ideal(spec), 1 << ix.flat(1, 3), star, image,
                             (ix.flat(2, 3), ix.flat(n, 3)), (ix.flat(1, 3),)))
    return out


def check_colon_case(case: ColonCase, char: int = DEFAULT_PRIME) -> tuple[bool, str]:
    col = colon(case.ideal, case.u)
    linear = sorted(g.bit_length() - 1 for g in col.gens if g & (g - 1) == 0)
    if linear != sorted(case.killed):
        return False, f"linear generators {linear} != {sorted(case.killed)}"
    rest = [g for g in col.gens if g & (g - 1)]
    mapped = sorted(mask(case.image[k] for k in range(case.target.ambient) if g >> k & 1) for g in case.target.gens)
    if sorted(rest) != mapped:
        return False, "non-linear generators differ from the relabeled target"
    used = col.support() | mask(case.image)
    free = [v for v in range(col.ambient) if not used >> v & 1]
    if free != sorted(case.free):
        return False, f"free variables {free} != {sorted(case.free)}"
    lhs = depth_quotient(col, char)
    rhs = depth_quotient(case.target, char) + len(case.free)
    if lhs != rhs:
        return False, f"depth {lhs} != {rhs}"
    return True, f"depth {lhs}"


def colon_identity_checks(limits: Limits) -> list[Row]:
    rows = []
    for case in colon_cases(limits):
        (ok, note), elapsed = _timed(lambda: check_colon_case(case, limits.char))
        rows.append(Row("aux", "colon", case.name, "quotient", "depth", "isomorphic", "colon isomorphism",
                        None, None, PASS if ok else FAIL, note, limits.char, elapsed=elapsed))
    # adjoining r free variables raises depth by r
    for n in (2, 3, 4):
        base = family_ideal(FamilySpec("P", n, 1))
        for r in (1, 2):
            d0, d1 = depth_quotient(base, limits.char), depth_quotient(extend(base, r), limits.char)
            rows.append(Row("aux", "free-variables", f"P:{n},1 +{r}", "quotient", "depth", f"Exact({d0 + r})",
                            "depth shifts by the number of adjoined variables", d1, d1,
                            PASS if d1 == d0 + r else FAIL, char=limits.char))
    return rows


def char_rows(limits: Limits) -> list[Row]:
    rows = []
    for spec in (FamilySpec("P", 4, 3), FamilySpec("C", 4, 3), FamilySpec("C", 6, 2), FamilySpec("Pstar", 3, 3)):
        if family_ideal_size(spec) > limits.max_vars:
            continue
        rep, elapsed = _timed(lambda: char_sensitivity(family_ideal(spec), (DEFAULT_PRIME, SECOND_PRIME)))
        vals = sorted(set(rep.depths.values()))
        rows.append(Row("aux", "char", str(spec), "quotient", "depth", "reported", "field characteristic",
                        vals[0], vals[-1], EVIDENCE if not rep.consistent else PASS,
                        json.dumps({str(k): v for k, v in rep.depths.items()}), elapsed=elapsed))
    return rows


def suite_aux(limits: Limits) -> list[Row]:
    specs = []
    for fam in ("Pstar", "Pstarstar"):
        for n in range(2, 8):
            spec = FamilySpec(fam, n, 3)
            if family_ideal_size(spec) <= limits.max_vars:
                specs.append(spec)
    rows = []
    for spec in specs:
        rows.append(measure_row("aux", spec, "quotient", "depth", limits))
        rows.append(measure_row("aux", spec, "quotient", "sdepth", limits))
    for n in range(6, 12):
        spec = FamilySpec("Cdiamond", n, 3)
        if family_ideal_size(spec) > max(limits.max_vars, 14):
            break
        rows.append(measure_row("aux", spec, "quotient", "sdepth", limits))
    rows += l_rows(limits)
    rows += colon_identity_checks(limits)
    rows += char_rows(limits)
    return rows


def suite_pairs(limits: Limits) -> list[Row]:
    rows = []
    for m in (2, 3):
        for n in range(3, 12):
            if n * m > limits.max_vars:
                break
            spec = FamilySpec("C", n, m)
            rows.append(measure_row("pairs", spec, "pair", "sdepth", limits))
    for m, fn, ns in ((2, paper_decomposition_C2, range(3, 8)), (3, paper_decomposition_C3, range(5, 8))):
        for n in ns:
            if n * m > max(limits.max_vars, 21):
                break
            dec, elapsed = _timed(lambda: fn(n, limits.budget))
            ok = verify_decomposition(dec)
            need = pair_bound(n)
            good = bool(ok) and dec.min_dimension >= need
            rows.append(Row("pairs", "decomposition", f"C:{n},{m}", "pair", "sdepth", f"Range({need}, {n * m})",
                            "explicit decomposition with min dimension >= ceil((n+2)/3)",
                            dec.min_dimension, n * m, PASS if good else FAIL,
                            f"{len(dec.spaces)} spaces" + ("" if ok else f"; violation at {ok.pattern}"),
                            elapsed=elapsed))
    return rows


def conjecture_specs(limits: Limits) -> list[FamilySpec]:
    out = []
    for fam, m in (("P", 1), ("C", 1), ("P", 2), ("C", 2), ("P", 3), ("C", 3)):
        for n in range(1, 13):
            try:
                spec = FamilySpec(fam, n, m)
            except ValueError:
                continue
            if n * m > limits.max_vars:
                break
            out.append(spec)
    return out


def conjecture_row(spec: FamilySpec, limits: Limits) -> list[Row]:
    q = measure_row("conjecture", spec, "quotient", "sdepth", limits)
    i = measure_row("conjecture", spec, "ideal", "sdepth", limits)
    strict = spec.family == "P"
    need = q.upper + (1 if strict else 0)
    if i.lower >= need:
        v = PASS
    elif i.upper < q.lower + (1 if strict else 0):
        v = FAIL
    else:
        v = INCONCLUSIVE
    rel = ">" if strict else ">="
    cmp_row = Row("conjecture", "relation", str(spec), "ideal", "sdepth", f"sdepth(I) {rel} sdepth(S/I)",
                  "sdepth(I) >= sdepth(S/I)" + (", strict for P families" if strict else ""),
                  i.lower, i.upper, v, f"sdepth(S/I) in [{q.lower}, {q.upper}]",
                  budget=limits.budget, elapsed=q.elapsed + i.elapsed)
    return [q, i, cmp_row]


def suite_conjecture(limits: Limits) -> list[Row]:
    rows = []
    for spec in conjecture_specs(limits):
        rows += conjecture_row(spec, limits)
    return rows


def upper_bound(spec: FamilySpec, measure: str) -> Optional[int]:
    n, m = spec.n, spec.m
    if spec.family == "P":
        return ceil3(n) * ceil3(m)
    if spec.family == "C":
        if measure == "sdepth" or m % 3 == 0:
            return ceil3(n) * ceil3(m)
        return ceil3(n - 1) + (ceil3(m) - 1) * ceil3(n)
    return None


def suite_bounds(limits: Limits) -> list[Row]:
    rows = []
    for spec in _instances(["P", "C"], list(range(1, 13)), limits):
        for measure in ("depth", "sdepth"):
            bound = upper_bound(spec, measure)
            row = measure_row("bounds", spec, "quotient", measure, limits, check="upper-bound")
            row.expected = f"UpperBound({bound})"
            row.citation = "ceil(n/3)ceil(m/3) forms and the C depth case split"
            row.verdict = verdict(UpperBound(bound), row.lower, row.upper)
            rows.append(row)
            if spec.family == "P" and measure == "depth":
                rows.append(diameter_row(spec, row.lower, limits))
        if min(spec.n, spec.m) >= 4:
            rows.append(question_row(spec, limits))
    return rows


def diameter_row(spec: FamilySpec, depth: int, limits: Limits) -> Row:
    d = diameter(build_family(spec).graph)
    need = ceil3(d + 1)
    return Row("bounds", "diameter", str(spec), "quotient", "depth", f"Range({need}, {family_ideal_size(spec)})",
               "depth >= ceil((diam+1)/3)", depth, depth, PASS if depth >= need else FAIL,
               f"diameter {d}", limits.char)


def question_row(spec: FamilySpec, limits: Limits) -> Row:
    target = ceil3(spec.n) * ceil3(spec.m)
    d = depth_quotient(family_ideal(spec), limits.char)
    return Row("bounds", "open-question", str(spec), "quotient", "depth", f"Evidence({target})",
               "is depth = ceil(n/3)ceil(m/3)?", d, d, EVIDENCE, "equal" if d == target else "differs", limits.char)


def suite_stretch(limits: Limits) -> list[Row]:
    spec = FamilySpec("P", 4, 4)
    return [measure_row("stretch", spec, "quotient", "depth", limits, check="cocoa")]


class StretchRefused(RuntimeError):
    pass


def run_suite(suite: str, limits: Optional[Limits] = None, allow_stretch: bool = False) -> Report:
    limits = limits or Limits()
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if suite == "stretch" and not allow_stretch:
        raise StretchRefused("the stretch suite needs 16+ variables and long budgets; pass --allow-stretch")
    runners = {
        "m1": lambda: suite_m(1, limits),
        "m2": lambda: suite_m(2, limits),
        "m3": lambda: suite_m(3, limits),
        "aux": lambda: suite_aux(limits),
        "pairs": lambda: suite_pairs(limits),
        "conjecture": lambda: suite_conjecture(limits),
        "bounds": lambda: suite_bounds(limits),
        "stretch": lambda: suite_stretch(limits),
    }
    return Report(suite, runners[suite](), limits.char, limits.max_vars, limits.budget)


__all__ = [
    "Expectation",
    "Form",
    "Limits",
    "Report",
    "Row",
    "colon_identity_checks",
    "expected_value",
    "run_suite",
    "verdict",
]
