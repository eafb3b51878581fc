"""Rationality verdicts for the normal-form families.

``analyze`` walks a fixed decision tree: validate the parameters, audit the
declared singular points, look for real singular points, then apply the
family's criterion (discriminant root patterns, fibre counts, witnesses,
plane counts or the Galois-cohomology obstruction). Every step that
influences the answer is recorded in the trace.
"""

import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from . import criteria
from .bundles import bundle_for, component_count_over_line, conic_bundle_from_cubic
from .cohomology import galois_module_catalog, h1_c2, plane_action
from .exact.multipoly import MultiPoly, parse_poly
from .exact.roots import distinct_real_root_count
from .exact.upoly import UPoly, is_squarefree
from .families import (
    F_, RAW_FAMILIES, FamilyId, LinearSubspace, build_cubic, conic_delta, conic_delta_derived,
    declared_singularities, eight_a1_points, nongeneric_discriminants, normalize_params,
    real_planes_in_x3_section,
    validate_constraints, verify_line_witness, verify_scroll_witness,
)
from .singular import (
    A, DEFAULT_CAP, ade_type, conjugation_permutation, find_real_singular_points, is_cone,
    is_singular_at, node_over_quadratic,
)


class Status(Enum):
    Rational = "Rational"
    NotRational = "NotRational"
    NotStablyRational = "NotStablyRational"
    Open = "Open"


class ConstraintError(ValueError):
    """The parameters violate the family's defining conditions."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class AuditError(ValueError):
    """Declared data disagrees with what is computed from the equation."""


@dataclass
class TraceEntry:
    rule: str
    citation: str
    inputs: dict
    outcome: str

    def to_dict(self):
        return {"rule": self.rule, "citation": self.citation,
                "inputs": {k: str(v) for k, v in self.inputs.items()}, "outcome": self.outcome}


@dataclass
class Verdict:
    status: Status
    components: int = None
    trace: list = field(default_factory=list)
    flags: list = field(default_factory=list)

    def to_dict(self):
        return {
            "status": self.status.value,
            "components": self.components,
            "flags": list(self.flags),
            "trace": [t.to_dict() for t in self.trace],
        }


@dataclass
class AnalysisInput:
    family: FamilyId
    params: dict = None
    cubic: MultiPoly = None
    witnesses: dict = None
    declared: dict = None
    oracle_resolution: int = 512
    ade_cap: int = DEFAULT_CAP
    strict_4a2: bool = False
    search_real_singular: bool = True

    def __post_init__(self):
        if not isinstance(self.family, FamilyId):
            self.family = FamilyId.parse(self.family)
        self.witnesses = dict(self.witnesses or {})
        self.declared = dict(self.declared or {})
        allowed_w = WITNESS_USERS
        for key in self.witnesses:
            if self.family not in allowed_w.get(key, ()):
                raise ValueError(f"witness {key!r} is not used by {self.family.value}")
        for key in self.declared:
            if self.family not in DECLARED_USERS.get(key, ()):
                raise ValueError(f"declared field {key!r} is not used by {self.family.value}")
        for key, kind in (("line", "Line"), ("plane", "Plane")):
            if isinstance(self.witnesses.get(key), str):
                self.witnesses[key] = LinearSubspace.parse(kind, self.witnesses[key])
        if isinstance(self.cubic, str):
            self.cubic = parse_poly(self.cubic)
        if self.family in RAW_FAMILIES:
            if self.params:
                raise ValueError(f"{self.family.value} takes a cubic, not parameters")
        elif self.cubic is not None:
            raise ValueError(f"{self.family.value} is built from parameters; do not pass a cubic")


WITNESS_USERS = {
    "line": (F_.TwoA3Plane, F_.FourA1Plane, F_.TwoA3TwoA1ThreePlanes),
    "plane": (F_.TwoA3Plane, F_.FourA1Plane, F_.TwoA3TwoA1ThreePlanes),
    "scroll": (F_.SixA1NoPlane,),
}
DECLARED_USERS = {
    "galois_swaps_scrolls": (F_.SixA1NoPlane,),
    "eight_a1_iota": (F_.EightA1,),
    "defect": (F_.TwoA3TwoA1OnePlane, F_.TwoA3TwoA1ThreePlanes),
}

CONIC_ORACLE_FAMILIES = (F_.TwoA3NoPlane, F_.TwoA4, F_.FourA1Gen, F_.FourA2, F_.TwoA2TwoA1)


class _Ctx:
    def __init__(self, inp):
        self.inp = inp
        self.trace = []
        self.flags = []

    def note(self, rule, citation, inputs, outcome):
        self.trace.append(TraceEntry(rule, citation, dict(inputs), outcome))

    def done(self, status, components=None):
        return Verdict(status, components, self.trace, self.flags)


# -- 8A1 combinatorics -----------------------------------------------------------

def eight_a1_classify(perm):
    """Induced action on the five planes; ``perm`` maps node k to perm[k] (1-based dict or 0-based list)."""
    if isinstance(perm, (list, tuple)):
        perm = {i + 1: j + 1 for i, j in enumerate(perm)}
    act = plane_action(perm)
    fixed = [i for i, j in enumerate(act) if i == j]
    fixed_set = frozenset(fixed)
    if len(fixed) == 1:
        case = 3
    elif fixed_set == frozenset({2, 3, 4}):
        case = 1
    elif fixed_set == frozenset({0, 1, 2}):
        case = 2
    else:
        case = None
    return {"fixed_plane_count": len(fixed), "fixed_planes": [i + 1 for i in fixed],
            "plane_action": [j + 1 for j in act], "case": case}


# -- steps ---------------------------------------------------------------------------

def _audit(ctx, f, family, p):
    data = declared_singularities(family, p)
    if not data.points:
        return
    for coords, modulus, typ in data.quadratic:
        singular, node = node_over_quadratic(f, coords, modulus)
        if not singular:
            raise AuditError(f"declared singular pair {coords} mod {modulus} is not singular")
        if typ == A(1) and not node:
            raise AuditError(f"declared type A1 at the pair {coords} mod {modulus}, computed non-nodal")
    for pt, typ in zip(data.points, data.types):
        if not is_singular_at(f, pt):
            raise AuditError(f"declared singular point {pt} is not singular")
        if pt.is_real():
            raise AuditError(f"declared singular point {pt} is real")
        if typ is not None:
            got = ade_type(f, pt, ctx.inp.ade_cap)
            if got != typ:
                raise AuditError(f"declared type {typ} at {pt}, computed {got}")
    types = [str(t) for t in data.types if t is not None] + [str(q[2]) + "," + str(q[2]) for q in data.quadratic]
    ctx.note("singularity audit", "declared singular points and ADE types",
             {"points": len(data.points) + 2 * len(data.quadratic)},
             "types " + ",".join(types) if types else "singular along the declared locus")


def _real_singular(ctx, f):
    if not ctx.inp.search_real_singular:
        return None
    if is_cone(f):
        ctx.note("cone check", "projection rule needs a non-cone", {}, "X is a cone; rule skipped")
        return None
    search = find_real_singular_points(f)
    if search.numeric_only:
        ctx.flags.append("numeric-only real singular candidates")
        ctx.note("real singular search", "numeric critical points of F on the sphere",
                 {"starts": search.starts}, f"{len(search.numeric_only)} unconfirmed numeric candidate(s)")
    if search.points:
        ctx.note("real singular point", "projection from a real singular point",
                 {"point": search.points[0]}, "X is rational")
        return ctx.done(Status.Rational)
    ctx.note("real singular search", "numeric search with exact confirmation",
             {"starts": search.starts}, "no real singular point found")
    return None


def _h1(ctx, case, rule):
    group = h1_c2(galois_module_catalog(case))
    ctx.note(rule, "Galois action on the class group", {"case": case}, f"H1 = {group}")
    return group


def _exact_count(ctx, family, p):
    cc = component_count_over_line(bundle_for(family, p))
    outcome = f"{cc.count} component(s)"
    if cc.decomposition.boundary_cases:
        outcome += "; degenerate fibre over " + ", ".join(b.label() for b in cc.decomposition.boundary_cases)
    ctx.note("fibre arc count", "components of X(R) = components of the fibre image",
             {"plane": bundle_for(family, p).plane}, outcome)
    return cc.count


def _conic_oracle(ctx, f):
    from .oracle import region_components_p2

    model = conic_bundle_from_cubic(f)
    g = model.region_poly
    # squarefreeness of G along a fixed line is a cheap sufficient check that
    # the discriminant has no repeated component
    s = MultiPoly.var(("s",), "s")
    images = [0, 0, s * 0 + 1, s, s * 2 + 3]
    uni = UPoly(g.substitute(images, ("s",)).to_univariate("s"))
    if uni.degree > 0 and not is_squarefree(uni):
        ctx.flags.append("discriminant smoothness not certified")
    rep = region_components_p2(g, ctx.inp.oracle_resolution, ("x3", "x4", "x5"))
    ctx.note("region oracle", "image of the conic bundle is {G >= 0} in P2",
             {"resolution": rep.resolution, "min_margin": f"{rep.min_margin:.3g}"},
             f"{rep.component_count} component(s), stable={rep.stable}")
    return rep


# -- per-family rules ------------------------------------------------------------------

def _rules(ctx, family, p, f):
    inp = ctx.inp
    w, decl = inp.witnesses, inp.declared

    if family in (F_.TwoA1, F_.TwoA2):
        ctx.note("smooth quartic discriminant", "conic bundle with trivial double cover",
                 {"q_case": p["q_case"]}, "X is not rational")
        return ctx.done(Status.NotRational)

    if family in CONIC_ORACLE_FAMILIES:
        rep = _conic_oracle(ctx, f)
        ctx.flags.append("numeric-assisted")
        if rep.stable and rep.component_count >= 2:
            return ctx.done(Status.NotStablyRational, rep.component_count)
        if not rep.stable:
            ctx.flags.append("oracle unstable")
            return ctx.done(Status.Open)
        return ctx.done(Status.Open, rep.component_count)

    if family in (F_.TwoA3Plane, F_.FourA1Plane):
        if "line" in w and "plane" in w:
            res = verify_line_witness(f, w["line"], w["plane"])
            ctx.note("line witness", "real line disjoint from the real plane",
                     {"line": w["line"], "plane": w["plane"]},
                     f"contained={res.contained}, disjoint={res.disjoint_from_plane}")
            if res.contained and res.disjoint_from_plane:
                return ctx.done(Status.Rational)
        ctx.note("no verified witness", "rational iff a real line misses the plane", {}, "undecided")
        return ctx.done(Status.Open)

    if family is F_.TwoA5:
        group = _h1(ctx, "TwoA5", "H1 obstruction")
        if group.is_trivial():  # pragma: no cover - catalog value is fixed
            return ctx.done(Status.Open)
        return ctx.done(Status.NotStablyRational)

    if family is F_.TwoD4MinusQ:
        exact = _exact_count(ctx, family, p)
        if criteria.two_d4_minus_line(p):
            ctx.note("line criterion", "real line disjoint from two of the three real planes",
                     {"D1": criteria.d1_poly(p), "t5": p["t5"]}, "line exists")
            return ctx.done(Status.Rational, exact)
        if criteria.two_d4_minus_two_components(p):
            ctx.note("two-component criterion", "D1 has 4 real roots, all below t5",
                     {"D1": criteria.d1_poly(p), "t5": p["t5"]}, "X(R) has 2 components")
            return ctx.done(Status.NotStablyRational, 2)
        ctx.note("D1 root pattern", "connected, no line off the planes", {"D1": criteria.d1_poly(p)}, "undecided")
        return ctx.done(Status.Open, 1)

    if family is F_.TwoD4PlusQ:
        exact = _exact_count(ctx, family, p)
        if criteria.two_d4_plus_connected(p):
            ctx.note("D2 connectivity criterion", "root pattern of D2 against -t5",
                     {"D2": criteria.d2_poly(p), "t5": p["t5"]}, "X(R) connected")
            return ctx.done(Status.Open, 1)
        ctx.note("D2 connectivity criterion", "root pattern of D2 against -t5",
                 {"D2": criteria.d2_poly(p), "t5": p["t5"]}, "X(R) disconnected")
        return ctx.done(Status.NotStablyRational, max(2, exact))

    if family is F_.TwoA3TwoA1OnePlane:
        defect = decl.get("defect", 1)
        if defect != 1:
            raise AuditError(f"TwoA3TwoA1OnePlane has defect 1, declared {defect}")
        ctx.note("defect one", "2A3+2A1 with defect 1 is rational", {"defect": 1}, "X is rational")
        return ctx.done(Status.Rational)

    if family is F_.TwoA3TwoA1ThreePlanes:
        defect = decl.get("defect", 2)
        if defect != 2:
            raise AuditError(f"TwoA3TwoA1ThreePlanes has defect 2, declared {defect}")
        exact = _exact_count(ctx, family, p)
        if criteria.two_a3_two_a1_disconnected(p):
            ctx.note("cubic Delta root pattern", "three real roots on the side fixed by sign(t6)",
                     {"Delta": criteria.delta_2a3_2a1(p), "t6": p["t6"]}, "X(R) disconnected")
            return ctx.done(Status.NotStablyRational, max(2, exact))
        if "line" in w:
            plane = w.get("plane")
            res = verify_line_witness(f, w["line"], plane)
            ctx.note("line witness", "real line disjoint from a real plane",
                     {"line": w["line"], "plane": plane}, f"contained={res.contained}, disjoint={res.disjoint_from_plane}")
            if res.contained and res.disjoint_from_plane:
                return ctx.done(Status.Rational, exact)
        ctx.note("cubic Delta root pattern", "connected", {"Delta": criteria.delta_2a3_2a1(p)}, "undecided")
        return ctx.done(Status.Open, 1)

    if family is F_.TwoD4TwoA1:
        a, b4 = p["a"], p["b4"]
        planes = real_planes_in_x3_section(family, p)
        ctx.note("real plane count", "planes through the two D4 points", {"a": a, "b4": b4},
                 f"{planes.count} real plane(s)")
        if b4 * b4 > 4 * a:
            ctx.note("plane-count criterion", "rational iff b4^2 > 4a", {"b4^2-4a": b4 * b4 - 4 * a},
                     "X is rational (three real planes; the line through the A1 points misses one)")
            return ctx.done(Status.Rational)
        _h1(ctx, "TwoD4TwoA1OnePlane", "H1 obstruction")
        return ctx.done(Status.NotStablyRational)

    if family is F_.SixA1NoPlane:
        swaps = decl.get("galois_swaps_scrolls")
        scroll_ok = None
        if "scroll" in w:
            scroll_ok = verify_scroll_witness(f, w["scroll"])
            ctx.note("scroll witness", "real normal cubic scroll in X", {"quadrics": len(w["scroll"])},
                     f"verified={scroll_ok}")
        if swaps and scroll_ok:
            raise AuditError("declared galois_swaps_scrolls=true but a real cubic scroll was verified")
        if swaps:
            _h1(ctx, "SixA1Swap", "H1 obstruction")
            return ctx.done(Status.NotStablyRational)
        if scroll_ok:
            return ctx.done(Status.Rational)
        ctx.note("no scroll data", "rational iff X contains a real cubic scroll", {}, "undecided")
        return ctx.done(Status.Open)

    if family is F_.SixA1OnePlane:
        ctx.note("one plane", "real line through the two nodes off the plane", {}, "X is rational")
        return ctx.done(Status.Rational)

    if family is F_.SixA1ThreeRealPlanes:
        polys = criteria.delta1_triple(p)
        roots = [distinct_real_root_count(d) for d in polys]
        ctx.note("Delta1 triple", "a real root gives a line off one plane",
                 {"real roots": roots}, "line exists" if any(roots) else "no line")
        if any(roots):
            return ctx.done(Status.Rational)
        return ctx.done(Status.Open, 1)

    if family is F_.SixA1OneRealPlane:
        exact = _exact_count(ctx, family, p)
        if criteria.six_a1_one_plane_disconnected(p):
            ctx.note("Delta2 root pattern", "negative Delta2 interval inside (0, 4)",
                     {"Delta2": criteria.delta2(p)}, "X(R) disconnected")
            return ctx.done(Status.NotStablyRational, max(2, exact))
        ctx.note("Delta2 root pattern", "connected", {"Delta2": criteria.delta2(p)}, "undecided")
        return ctx.done(Status.Open, 1)

    if family in (F_.TwoA2FourA1, F_.TwoA3FourA1):
        ctx.note("always rational", "six-point configurations with a real plane", {}, "X is rational")
        return ctx.done(Status.Rational)

    if family is F_.EightA1:
        return _eight_a1_rule(ctx, p)

    if family is F_.ConicLocus:
        derived = conic_delta_derived(p)
        printed = conic_delta(p)
        n_d = distinct_real_root_count(derived) if derived.degree > 0 else 0
        n_p = distinct_real_root_count(printed) if printed.degree > 0 else 0
        ctx.note("conic-locus quartic", "fibre u1^2+u2^2+u3^2+Delta u4^2 is empty iff Delta > 0",
                 {"Delta": derived}, f"{n_d} distinct real root(s)")
        if (n_p == 4) != (n_d == 4):
            ctx.flags.append("printed conic discriminant disagrees with the fibre form")
        if derived.degree == 4 and n_d == 4:
            return ctx.done(Status.NotStablyRational, 2)
        return ctx.done(Status.Open, 1)

    if family is F_.Chordal:
        ctx.note("chordal cubic", "the real chordal cubic is rational", {}, "X is rational")
        return ctx.done(Status.Rational)

    raise AssertionError(f"unhandled family {family}")  # pragma: no cover


def parse_permutation(spec, n=8):
    """1-based permutation from a dict {k: image}, a list of images, a list of
    cycles, or a cycle string such as ``"(12)(34)(58)(67)"`` (single digits)."""
    if isinstance(spec, str):
        if not re.fullmatch(r"\s*(\(\d+\)\s*)*", spec):
            raise ValueError(f"cannot read permutation {spec!r}; use cycle notation like '(12)(34)'")
        spec = [[int(ch) for ch in cyc] for cyc in re.findall(r"\((\d+)\)", spec)]
        if not spec:
            return {k: k for k in range(1, n + 1)}
    if isinstance(spec, dict):
        m = {int(k): int(v) for k, v in spec.items()}
    elif spec and all(isinstance(c, (list, tuple)) for c in spec):
        m = {}
        for cyc in spec:
            cyc = [int(x) for x in cyc]
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                m[a] = b
    else:
        m = {i + 1: int(j) for i, j in enumerate(spec)}
    full = {k: m.get(k, k) for k in range(1, n + 1)}
    if sorted(full.values()) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {spec}")
    return full


def _eight_a1_rule(ctx, p):
    # a1 > 0, so every node is non-real and the conjugation pattern does not
    # depend on the value of a1: read it off the a1 = 1 coordinates
    perm, _ = conjugation_permutation(eight_a1_points(p["variant"], 1))
    computed = {i + 1: j + 1 for i, j in enumerate(perm)}
    declared = ctx.inp.declared.get("eight_a1_iota")
    if declared is not None:
        full = parse_permutation(declared)
        if full != computed:
            raise AuditError(f"declared iota {full} but conjugation acts as {computed}")
    info = eight_a1_classify(computed)
    ctx.note("node conjugation", "complex conjugation on the eight nodes",
             {"variant": p["variant"]},
             f"plane action {info['plane_action']}, fixed planes {info['fixed_planes']}, case {info['case']}")
    if info["fixed_plane_count"] >= 3:
        ctx.note("three real planes", "real line through two nodes misses a real plane", {}, "X is rational")
        return ctx.done(Status.Rational)
    _h1(ctx, "EightA1Case3", "H1 obstruction")
    return ctx.done(Status.NotStablyRational)


def analyze(inp):
    """Rationality verdict for ``inp`` (an :class:`AnalysisInput`)."""
    ctx = _Ctx(inp)
    family = inp.family
    if family in RAW_FAMILIES:
        if inp.cubic is None:
            raise ValueError(f"{family.value} needs the cubic itself")
        f, p = inp.cubic, {}
        if not (f.is_homogeneous(3) and f.nvars == 5):
            raise ValueError("expected a cubic form in x1..x5")
    else:
        p = normalize_params(family, inp.params)
        violations = validate_constraints(family, p, strict_4a2=inp.strict_4a2)
        if violations:
            raise ConstraintError(violations)
        f = build_cubic(family, p)
        _audit(ctx, f, family, p)
        if nongeneric_discriminants(family, p):
            ctx.flags.append("non-generic parameters")
            ctx.note("genericity", "a repeated discriminant factor allows extra singular points",
                     {"instances": nongeneric_discriminants(family, p)}, "discriminant not squarefree")
    early = _real_singular(ctx, f)
    if early is not None:
        return early
    return _rules(ctx, family, p, f)


def analyze_family(family, params=None, **kw):
    """Convenience wrapper: ``analyze(AnalysisInput(family, params, ...))``."""
    return analyze(AnalysisInput(family, params, **kw))


def check_invariants(verdict):
    """The soundness couplings every verdict must satisfy."""
    h1_nontrivial = any(t.outcome.startswith("H1 = Z/") for t in verdict.trace)
    if verdict.status is Status.NotStablyRational:
        assert (verdict.components or 0) >= 2 or h1_nontrivial, "NSR without obstruction"
    if h1_nontrivial or (verdict.components or 0) >= 2:
        assert verdict.status is Status.NotStablyRational
    if verdict.status is Status.Rational:
        assert any("rational" in t.outcome.lower() or "line exists" in t.outcome or "verified=True" in t.outcome
                   or "disjoint=True" in t.outcome for t in verdict.trace)
    return True
