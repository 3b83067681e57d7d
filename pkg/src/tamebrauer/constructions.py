"""Explicit division algebras with abelian Galois maximal subfields, and certificates.

Two families are produced over a base field k = F_q:

* ``Thm45``: over K(t) with K = k((pi)),
  D = (t, pi - lam*t)_{l1 l2} (x) (t + 1, pi)_{l3 l4}.
* ``Thm42``: over the fraction field of a two-dimensional regular local ring
  with parameters s, t,
  D1 = (s/(s - t), (s - t^2)/(s - A t^2))_{n1 n2} with A = a^{n1 n2},
  D2 = (s/(s - t^2), (s - lam t^2)/(s - t^2))_{n3 n4}.

Divisionness is argued along one discrete valuation: a parameter-twisted
symbol contributes its cyclic degree d, the remaining unramified symbols are
reduced to the residue field adjoined a d-th root, that field is identified
with a rational function field k(s) by an explicit substitution, and the
last index is computed there by local invariants.  A
:class:`DivisionCertificate` records that chain as text; :func:`verify_certificate`
recomputes every step.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import prod

from .brauer import BrauerClassGlobal, global_index, parse_class
from .errors import (
    HypothesisError,
    OrderConditionFailed,
    ParseError,
    RootsOfUnityMissing,
    StepFailed,
)
from .finite_field import FFElem, FiniteField, field_from_order, parse_field, power_class_order, root_degree
from .groups.abelian import AbelianGroup
from .mpoly import MPoly, MRat, parse_mrat
from .parser import parse, parse_constant
from .ratfunc import RatFunc, class_order_global

HEADER = "CERT/1"
KINDS = ("Thm45", "Thm42")
STEP_KINDS = ("UNIT", "DEGREE", "TWIST", "REDUCE", "BASE")


# -- specifications -----------------------------------------------------------------


def _as_elem(F: FiniteField, value) -> FFElem:
    if isinstance(value, FFElem):
        return F(value)
    if isinstance(value, str):
        return parse_constant(value, F)
    return F(int(value))


@dataclass(frozen=True)
class ConstructionSpec:
    """Input data; order conditions are checked on construction unless ``check`` is false.

    ``check=False`` exists so that a certificate can be emitted for bad
    parameters and shown to fail verification.
    """

    kind: str
    orders: tuple
    q: int
    lam: object = None
    a: object = None
    check: bool = True
    field: FiniteField = dc_field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise HypothesisError(f"kind must be one of {', '.join(KINDS)}")
        orders = tuple(int(x) for x in self.orders)
        if len(orders) != 4 or any(x < 1 for x in orders):
            raise HypothesisError("exactly four positive cyclic orders are required")
        object.__setattr__(self, "orders", orders)
        F = field_from_order(self.q)
        object.__setattr__(self, "field", F)
        if (self.q - 1) % self.n:
            raise RootsOfUnityMissing(f"n = {self.n} does not divide q - 1 = {self.q - 1}")
        lam = _as_elem(F, 1 if self.lam is None else self.lam)
        if lam.is_zero():
            raise HypothesisError("lambda must be nonzero")
        object.__setattr__(self, "lam", lam)
        if self.kind == "Thm42":
            a = _as_elem(F, 1 if self.a is None else self.a)
            if a.is_zero():
                raise HypothesisError("a must be a unit")
            object.__setattr__(self, "a", a)
        if self.check:
            self.check_order_conditions()

    @property
    def n(self):
        return prod(self.orders)

    @property
    def first(self):
        return self.orders[0] * self.orders[1]

    @property
    def second(self):
        return self.orders[2] * self.orders[3]

    def check_order_conditions(self):
        F = self.field
        if self.kind == "Thm45":
            got = root_degree(F, self.lam, self.first)
            if got != self.first:
                raise OrderConditionFailed(
                    f"k(lambda^(1/{self.first})) has degree {got}, need {self.first} (lambda = {self.lam})"
                )
            return
        if self.first > 1 and (self.a ** self.first).value == 1:
            raise OrderConditionFailed(f"a^{self.first} = 1 for a = {self.a}")
        got = power_class_order(F, self.lam, self.second)
        if got != self.second:
            raise OrderConditionFailed(f"lambda = {self.lam} has order {got} in k*/k*^{self.second}, need {self.second}")


@dataclass(frozen=True)
class AlgebraPresentation:
    vars: tuple
    symbols: tuple  # (degree, a_text, b_text)
    relations: tuple

    @property
    def degree(self):
        return prod(n for n, _, _ in self.symbols)

    def format(self):
        lines = [f"({a}, {b})_{n}" for n, a, b in self.symbols]
        return "\n".join(lines + list(self.relations))


@dataclass(frozen=True)
class SubfieldPresentation:
    generators: tuple  # (name, exponent, radicand_text)
    galois_group: AbelianGroup

    @property
    def degree(self):
        return prod(e for _, e, _ in self.generators)

    def format(self):
        gens = ", ".join(f"{name}^{e} = {r}" for name, e, r in self.generators)
        return f"{gens}; Gal = {self.galois_group.format()}"


@dataclass(frozen=True)
class CertStep:
    kind: str
    args: tuple

    def format(self):
        return f"step {self.kind} " + " | ".join(self.args)


@dataclass(frozen=True)
class DivisionCertificate:
    """The index chain as text; every field is in the rational-function grammar."""

    kind: str
    field: str
    degree: int
    vars: tuple  # (residue variable, valuation variable)
    symbols: tuple  # (degree, a, b) in certificate coordinates
    steps: tuple
    chart: tuple = ()  # (source vars..., target var, expression) when coordinates changed
    sources: tuple = ()  # symbols before the chart

    def to_text(self):
        lines = [HEADER, f"kind {self.kind}", f"field {self.field}", f"degree {self.degree}", "vars " + " ".join(self.vars)]
        if self.chart:
            *src, target, expr = self.chart
            lines.append("chart " + " ".join(src) + f" | {target} = {expr}")
            lines += [f"source {n} | {a} | {b}" for n, a, b in self.sources]
        lines += [f"symbol {n} | {a} | {b}" for n, a, b in self.symbols]
        lines += [s.format() for s in self.steps]
        lines.append("end")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines or lines[0] != HEADER:
            raise ParseError(f"certificate must start with {HEADER}", 0, text)
        if lines[-1] != "end":
            raise ParseError("certificate must finish with 'end'", len(text), text)
        info, symbols, sources, steps, chart = {}, [], [], [], ()
        for ln in lines[1:-1]:
            tag, _, rest = ln.partition(" ")
            if tag in ("kind", "field", "degree", "vars"):
                info[tag] = rest.strip()
            elif tag in ("symbol", "source"):
                parts = [p.strip() for p in rest.split("|")]
                if len(parts) != 3:
                    raise ParseError(f"malformed {tag} line: {ln}", 0, text)
                (symbols if tag == "symbol" else sources).append((_int(parts[0], ln, text), parts[1], parts[2]))
            elif tag == "chart":
                src, _, sub = rest.partition("|")
                target, _, expr = sub.partition("=")
                chart = tuple(src.split()) + (target.strip(), expr.strip())
            elif tag == "step":
                kind, _, args = rest.partition(" ")
                if kind not in STEP_KINDS:
                    raise ParseError(f"unknown step kind {kind!r}", 0, text)
                steps.append(CertStep(kind, tuple(a.strip() for a in args.split("|"))))
            else:
                raise ParseError(f"unknown certificate line {ln!r}", 0, text)
        missing = {"kind", "field", "degree", "vars"} - set(info)
        if missing:
            raise ParseError(f"certificate lacks {', '.join(sorted(missing))}", 0, text)
        return cls(
            kind=info["kind"],
            field=info["field"],
            degree=_int(info["degree"], "degree", text),
            vars=tuple(info["vars"].split()),
            symbols=tuple(symbols),
            steps=tuple(steps),
            chart=chart,
            sources=tuple(sources),
        )


def _int(word, line, text):
    try:
        return int(word)
    except ValueError:
        raise ParseError(f"expected an integer in {line!r}", 0, text) from None


@dataclass(frozen=True)
class VerifiedIndex:
    index: int
    degree: int
    division: bool
    trace: tuple


# -- builders -----------------------------------------------------------------------


def _fmt(F, v: FFElem | int):
    return F.format_raw(v.value if isinstance(v, FFElem) else v)


def _zeta(F: FiniteField, n: int) -> str:
    return _fmt(F, F.pow(F.generator, (F.q - 1) // n))


def _relations(F, index, n, a, b):
    x, y = f"x{index}", f"y{index}"
    return f"{x}^{n} = {a}, {y}^{n} = {b}, {x}*{y} = {_zeta(F, n)}*{y}*{x}"


def _canon(text, F, vars):
    return parse_mrat(text, F, vars).format()


def build_thm45(spec: ConstructionSpec):
    if spec.kind != "Thm45":
        raise HypothesisError("build_thm45 needs a Thm45 specification")
    F = spec.field
    l1, l2, l3, l4 = spec.orders
    n1, m = spec.first, spec.second
    lam = _fmt(F, spec.lam)
    V = ("t", "pi")
    a1, b1 = _canon("t", F, V), _canon(f"pi - {lam}*t", F, V)
    a2, b2 = _canon("t + 1", F, V), _canon("pi", F, V)
    algebra = AlgebraPresentation(
        vars=V,
        symbols=((n1, a1, b1), (m, a2, b2)),
        relations=(_relations(F, 1, n1, a1, b1), _relations(F, 2, m, a2, b2)),
    )
    gens = tuple((name, e, r) for name, e, r in (("y1", l1, a1), ("y2", l2, b1), ("y3", l3, a2), ("y4", l4, b2)) if e > 1)
    subfield = SubfieldPresentation(gens, AbelianGroup.from_cyclic(spec.orders))

    steps = []
    if n1 > 1:
        steps += [CertStep("UNIT", ("pi", a1, "0")), CertStep("UNIT", ("pi", b1, "0"))]
    if m > 1:
        steps += [
            CertStep("UNIT", ("pi", b2, "1")),
            CertStep("UNIT", ("pi", a2, "0")),
            CertStep("DEGREE", ("t", parse("t + 1", F).format("t"), str(m), str(m))),
            CertStep("TWIST", ("pi", "2", b2, str(m))),
        ]
    radicand = RatFunc.t(F) + 1
    subst = RatFunc.t(F) ** m - 1
    steps.append(CertStep("REDUCE", ("pi", radicand.format("t"), str(m), f"t = {subst.format('s')}", "s")))
    image = BrauerClassGlobal.from_pairs(F, n1, [(subst, -spec.lam * subst)] if n1 > 1 else [])
    steps.append(CertStep("BASE", ("s", image.format("s"), str(n1))))
    cert = DivisionCertificate("Thm45", str(F), spec.n, ("t", "pi"), algebra.symbols, tuple(steps))
    return algebra, subfield, cert


def build_thm42(spec: ConstructionSpec):
    if spec.kind != "Thm42":
        raise HypothesisError("build_thm42 needs a Thm42 specification")
    F = spec.field
    k1, k2, k3, k4 = spec.orders
    N1, N2 = spec.first, spec.second
    A = spec.a**N1
    Af, lam = _fmt(F, A), _fmt(F, spec.lam)
    S, V = ("s", "t"), ("x", "t")
    src1 = (_canon("s/(s - t)", F, S), _canon(f"(s - t^2)/(s - {Af}*t^2)", F, S))
    src2 = (_canon("s/(s - t^2)", F, S), _canon(f"(s - {lam}*t^2)/(s - t^2)", F, S))
    algebra = AlgebraPresentation(
        vars=S,
        symbols=((N1,) + src1, (N2,) + src2),
        relations=(_relations(F, 1, N1, *src1), _relations(F, 2, N2, *src2)),
    )
    gens = tuple(
        (name, e, r)
        for name, e, r in (("u1", k2, src1[0]), ("u2", k1, src1[1]), ("u3", k4, src2[0]), ("u4", k3, src2[1]))
        if e > 1
    )
    subfield = SubfieldPresentation(gens, AbelianGroup.from_cyclic(spec.orders))

    d1 = (_canon("t*x/(t*x - 1)", F, V), _canon(f"(x - 1)/(x - {Af})", F, V))
    d2 = (_canon("x/(x - 1)", F, V), _canon(f"(x - {lam})/(x - 1)", F, V))
    steps = []
    if N2 > 1:
        steps += [CertStep("UNIT", ("t", d2[0], "0")), CertStep("UNIT", ("t", d2[1], "0"))]
    x = RatFunc.t(F)
    if N1 > 1:
        u = (x - 1) / (x - A) if A.value != 1 else RatFunc.const(F, 1)
        steps += [
            CertStep("UNIT", ("t", d1[0], "1")),
            CertStep("UNIT", ("t", d1[1], "0")),
            CertStep("DEGREE", ("x", u.format("x"), str(N1), str(N1))),
            CertStep("TWIST", ("t", "1", d1[0], str(N1))),
        ]
        yN = RatFunc.t(F) ** N1
        # With A = 1 the chain is already broken at the degree check; keep the text well formed.
        subst = (yN * A - 1) / (yN - 1) if A.value != 1 else RatFunc.t(F)
        steps.append(CertStep("REDUCE", ("t", u.format("x"), str(N1), f"x = {subst.format('y')}", "y")))
    else:
        subst = RatFunc.t(F)
        steps.append(CertStep("REDUCE", ("t", "x", "1", "x = y", "y")))
    pairs = []
    if N2 > 1:
        pairs = [(parse("x/(x - 1)", F, "x").compose(subst), parse(f"(x - {lam})/(x - 1)", F, "x").compose(subst))]
    image = BrauerClassGlobal.from_pairs(F, N2, pairs)
    steps.append(CertStep("BASE", ("y", image.format("y"), str(N2))))
    cert = DivisionCertificate(
        "Thm42",
        str(F),
        spec.n,
        ("x", "t"),
        ((N1,) + d1, (N2,) + d2),
        tuple(steps),
        chart=("s", "t", "s", "t^2*x"),
        sources=algebra.symbols,
    )
    return algebra, subfield, cert


def build(spec: ConstructionSpec):
    return build_thm45(spec) if spec.kind == "Thm45" else build_thm42(spec)


# -- verification -------------------------------------------------------------------


class _Replay:
    """State threaded through the steps of one certificate."""

    def __init__(self, cert: DivisionCertificate):
        self.cert = cert
        self.F = parse_field(cert.field)
        if len(cert.vars) != 2:
            raise ParseError("certificate needs exactly two variables", 0)
        self.res_var, self.val_var = cert.vars
        self.symbols = [(n, self.mrat(a), self.mrat(b)) for n, a, b in cert.symbols]
        self.units = []  # (element, valuation) proven so far
        self.degrees = []  # (residue element, modulus, order) proven so far
        self.twists = []  # (symbol index, parameter, radicand, d)
        self.reduced = None
        self.base = None
        self.trace = []

    def mrat(self, text):
        return parse_mrat(text, self.F, self.cert.vars)

    def residue_ratfunc(self, f: MRat) -> RatFunc:
        return f.residue(self.val_var).to_ratfunc(self.res_var)

    def proven_valuation(self, f: MRat):
        for g, v in self.units:
            if g == f:
                return v
        return None


def _check_chart(R: _Replay):
    cert, F = R.cert, R.F
    *src_vars, target, expr = cert.chart
    src_vars = tuple(src_vars)
    if target not in src_vars:
        raise StepFailed(0, "CHART", target, "a source variable")
    image = parse_mrat(expr, F, cert.vars)
    # The chart must be invertible over the coefficient field: degree one in the new variable.
    num, den = image.num, image.den
    new = R.res_var
    i = cert.vars.index(new)
    if max(e[i] for e in den.terms) != 0 or max(e[i] for e in num.terms) != 1 or min(e[i] for e in num.terms) != 1:
        raise StepFailed(0, "CHART", expr, f"a nonzero multiple of {new}")
    values = {target: image}
    if len(cert.sources) != len(cert.symbols):
        raise StepFailed(0, "CHART", len(cert.sources), len(cert.symbols))
    for (n0, a0, b0), (n1, a1, b1) in zip(cert.sources, R.symbols):
        if n0 != n1:
            raise StepFailed(0, "CHART", n1, n0)
        for e0, e1 in ((a0, a1), (b0, b1)):
            got = parse_mrat(e0, F, src_vars).substitute(values, cert.vars)
            if not got == e1:
                raise StepFailed(0, "CHART", got.format(), e1.format())
    R.trace.append(f"0 CHART {target} = {image.format()} -> ok")


def _step_unit(R: _Replay, i, args):
    var, elem, expected = args
    f = R.mrat(elem)
    got = f.valuation(var)
    if got != int(expected):
        raise StepFailed(i, "UNIT", got, int(expected), elem)
    if var == R.val_var:
        R.units.append((f, got))
    R.trace.append(f"{i} UNIT v_{var}({f.format()}) = {got}")


def _step_degree(R: _Replay, i, args):
    var, elem, n, expected = args
    f = parse(elem, R.F, var)
    got = class_order_global(f, int(n))
    if got != int(expected):
        raise StepFailed(i, "DEGREE", got, int(expected), elem)
    R.degrees.append((f, int(n), got))
    R.trace.append(f"{i} DEGREE order of {f.format(var)} mod {n}-th powers = {got}")


def _step_twist(R: _Replay, i, args):
    var, index, param_text, d_text = args
    k, d = int(index) - 1, int(d_text)
    if var != R.val_var or not 0 <= k < len(R.symbols):
        raise StepFailed(i, "TWIST", f"{var}/{index}", "valuation variable and symbol index")
    n, a, b = R.symbols[k]
    param = R.mrat(param_text)
    if param == a:
        radicand = b
    elif param == b:
        radicand = a
    else:
        raise StepFailed(i, "TWIST", param.format(), "an entry of the twisted symbol")
    if R.proven_valuation(param) != 1:
        raise StepFailed(i, "TWIST", R.proven_valuation(param), 1, "parameter not certified")
    if R.proven_valuation(radicand) != 0:
        raise StepFailed(i, "TWIST", R.proven_valuation(radicand), 0, "radicand not certified a unit")
    for j, (nj, aj, bj) in enumerate(R.symbols):
        if j != k and nj > 1:
            for e in (aj, bj):
                if R.proven_valuation(e) != 0:
                    raise StepFailed(i, "TWIST", R.proven_valuation(e), 0, f"{e.format()} not certified a unit")
    u = R.residue_ratfunc(radicand)
    order = next((o for f, m, o in R.degrees if f == u and m == n), None)
    if order is None:
        raise StepFailed(i, "TWIST", None, n, "no degree check for the residue of the radicand")
    if order != d or d != n:
        raise StepFailed(i, "TWIST", order, d)
    R.twists.append((k, param, u, d))
    R.trace.append(f"{i} TWIST symbol {k + 1} along {param.format()} contributes {d}")


def _step_reduce(R: _Replay, i, args):
    var, rad_text, exp_text, sub_text, new_var = args
    F = R.F
    if var != R.val_var:
        raise StepFailed(i, "REDUCE", var, R.val_var)
    lhs, _, rhs = sub_text.partition("=")
    if lhs.strip() != R.res_var:
        raise StepFailed(i, "REDUCE", lhs.strip(), R.res_var)
    radicand = parse(rad_text, F, R.res_var)
    e = int(exp_text)
    subst = parse(rhs.strip(), F, new_var)
    if R.twists:
        _, _, u, d = R.twists[-1]
        if not (u == radicand and e == d):
            raise StepFailed(i, "REDUCE", (radicand.format(R.res_var), e), (u.format(R.res_var), d))
    elif e != 1:
        raise StepFailed(i, "REDUCE", e, 1, "no twist to adjoin a root for")
    got = radicand.compose(subst)
    if got != RatFunc.t(F) ** e:
        raise StepFailed(i, "REDUCE", got.format(new_var), f"{new_var}^{e}")
    deg = max(subst.num.degree, subst.den.degree)
    if deg != e:
        raise StepFailed(i, "REDUCE", deg, e, "degree of the substitution")
    twisted = {k for k, *_ in R.twists}
    pairs, n = [], None
    for j, (nj, aj, bj) in enumerate(R.symbols):
        if j in twisted or nj == 1:
            continue
        for x in (aj, bj):
            if R.proven_valuation(x) != 0:
                raise StepFailed(i, "REDUCE", R.proven_valuation(x), 0, f"{x.format()} not certified a unit")
        if n is not None and nj != n:
            raise StepFailed(i, "REDUCE", nj, n, "unramified symbols of mixed degree")
        n = nj
        pairs.append((R.residue_ratfunc(aj).compose(subst), R.residue_ratfunc(bj).compose(subst)))
    R.reduced = (new_var, n or 1, pairs)
    R.trace.append(f"{i} REDUCE {R.res_var} = {subst.format(new_var)}, {new_var}^{e} = {rad_text}")


def _step_base(R: _Replay, i, args):
    var, class_text, expected = args
    if R.reduced is None:
        raise StepFailed(i, "BASE", None, "a preceding REDUCE")
    new_var, n, pairs = R.reduced
    if var != new_var:
        raise StepFailed(i, "BASE", var, new_var)
    claimed = parse_class(class_text, R.F, var)
    mine = BrauerClassGlobal.from_pairs(R.F, n, pairs)
    if claimed.n != n or [(s.a, s.b) for s in claimed.symbols] != [(s.a, s.b) for s in mine.symbols]:
        raise StepFailed(i, "BASE", mine.format(var), claimed.format(var), "reduced class differs")
    got = global_index(mine)
    if got != int(expected):
        raise StepFailed(i, "BASE", got, int(expected))
    R.base = got
    R.trace.append(f"{i} BASE index of {mine.format(var)} over F_q({var}) = {got}")


_HANDLERS = {"UNIT": _step_unit, "DEGREE": _step_degree, "TWIST": _step_twist, "REDUCE": _step_reduce, "BASE": _step_base}
_ARITY = {"UNIT": 3, "DEGREE": 4, "TWIST": 4, "REDUCE": 5, "BASE": 3}


def verify_certificate(cert: DivisionCertificate | str) -> VerifiedIndex:
    """Replay every step from scratch; expected values are only compared, never used."""
    if isinstance(cert, str):
        cert = DivisionCertificate.from_text(cert)
    R = _Replay(cert)
    if prod(n for n, _, _ in R.symbols) != cert.degree:
        raise StepFailed(0, "DEGREE", prod(n for n, _, _ in R.symbols), cert.degree, "symbol degrees")
    if cert.chart:
        _check_chart(R)
    for i, step in enumerate(cert.steps, 1):
        if len(step.args) != _ARITY[step.kind]:
            raise StepFailed(i, step.kind, len(step.args), _ARITY[step.kind], "argument count")
        try:
            _HANDLERS[step.kind](R, i, step.args)
        except (StepFailed, ParseError):
            raise
        except HypothesisError as exc:
            raise StepFailed(i, step.kind, type(exc).__name__, "a computable step", str(exc)) from None
        except ValueError as exc:
            raise StepFailed(i, step.kind, "malformed argument", "well-formed arguments", str(exc)) from None
    if R.base is None:
        raise StepFailed(len(cert.steps), "BASE", None, "a final BASE step")
    index = prod(d for *_, d in R.twists) * R.base
    R.trace.append(f"index {index} degree {cert.degree}")
    return VerifiedIndex(index, cert.degree, index == cert.degree, tuple(R.trace))


def galois_group_matches(spec: ConstructionSpec, subfield: SubfieldPresentation) -> bool:
    """Structural check: radical exponents give the requested group and the full degree."""
    requested = AbelianGroup.from_cyclic(spec.orders)
    from_gens = AbelianGroup.from_cyclic([e for _, e, _ in subfield.generators])
    return subfield.galois_group == requested == from_gens and subfield.degree == spec.n


def smallest_q(n: int) -> int:
    """Smallest prime power q with n | q - 1."""
    from .arith import prime_power

    q = n + 1
    while prime_power(q) is None:
        q += n
    return q
