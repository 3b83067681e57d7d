"""Command line front end.

Subcommands: residue, index, classify, construct, verify, hasse.  Exit codes:
0 success, 2 parse error, 3 unmet hypothesis, 4 failed order condition,
5 internal failure (including a certificate step that does not replay).
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .arith import lcm, prime_power
from .brauer import (
    global_index,
    global_index_direct,
    hasse_witness,
    local_data,
    local_index,
    parse_class,
    random_class,
    reciprocity_check,
)
from .constructions import ConstructionSpec, DivisionCertificate, build, galois_group_matches, verify_certificate
from .errors import NotPrimePower, ParseError, RootsOfUnityMissing, ToolkitError
from .finite_field import parse_field
from .groups import AbelianGroup, FieldModel, classify
from .groups import library
from .groups.cayley import CayleyGroup
from .groups.classify import RESIDUE_KINDS
from .rng import LCG64
from .tower import canonicalize, parse_tower_class, tower_index_report

import numpy as np


@dataclass
class RunReport:
    command: str
    inputs: list = field(default_factory=list)
    outputs: list = field(default_factory=list)
    table: tuple = ()  # (header, rows)
    trace: list = field(default_factory=list)
    blocks: list = field(default_factory=list)  # (name, multi-line text)
    version: str = __version__

    def render(self, fmt="text"):
        return self._record() if fmt == "record" else self._text()

    def _text(self):
        out = [f"tamebrauer {self.version} {self.command}"]
        out += [f"{k}: {v}" for k, v in self.inputs]
        out += [f"{k}: {v}" for k, v in self.outputs]
        if self.table:
            header, rows = self.table
            cells = [list(header)] + [[str(c) for c in r] for r in rows]
            widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
            for r in cells:
                out.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        for name, text in self.blocks:
            out.append(f"{name}:")
            out += ["  " + ln for ln in text.rstrip("\n").splitlines()]
        if self.trace:
            out.append("trace:")
            out += ["  " + t for t in self.trace]
        return "\n".join(out) + "\n"

    def _record(self):
        out = [f"command={self.command}", f"version={self.version}"]
        out += [f"input.{k}={v}" for k, v in self.inputs]
        out += [f"output.{k}={v}" for k, v in self.outputs]
        if self.table:
            header, rows = self.table
            out.append(f"rows={len(rows)}")
            for i, r in enumerate(rows, 1):
                out += [f"row.{i}.{h}={c}" for h, c in zip(header, r)]
        for name, text in self.blocks:
            for i, ln in enumerate(text.rstrip("\n").splitlines(), 1):
                out.append(f"{name}.{i}={ln}")
        out += [f"trace.{i}={t}" for i, t in enumerate(self.trace, 1)]
        return "\n".join(out) + "\n"


# -- input helpers --------------------------------------------------------------------


def _read_source(args, attr="expr"):
    text = getattr(args, attr)
    if text is not None:
        return text.strip()
    if args.file is None:
        raise ParseError("no input: give a file, '-' for stdin, or --expr")
    if args.file == "-":
        return sys.stdin.read().strip()
    try:
        return Path(args.file).read_text().strip()
    except OSError as exc:
        raise ParseError(f"cannot read {args.file}: {exc.strerror}") from None


def _class_text(args):
    text = _read_source(args)
    if args.modulus is not None:
        head = text.split(";", 1)[0].strip()
        if head.isdigit():
            if int(head) != args.modulus:
                raise ParseError(f"--modulus {args.modulus} disagrees with the class modulus {head}", 0, text)
        else:
            text = f"{args.modulus}; {text}"
    return text


def _global_class(args):
    if args.field is None:
        raise ParseError("--field GF(q) is required for classes over F_q(t)")
    return parse_class(_class_text(args), parse_field(args.field))


# -- subcommands ----------------------------------------------------------------------


def cmd_residue(args) -> RunReport:
    A = _global_class(args)
    rows = [
        (d.place.format(), d.place.degree, d.residue.format(), d.invariant, d.index) for d in local_data(A) if d.invariant
    ]
    return RunReport(
        "residue",
        inputs=[("field", str(A.field)), ("class", A.format())],
        outputs=[("ramified_places", len(rows))],
        table=(("place", "degree", "residue", "invariant", "index"), rows),
    )


def cmd_index(args) -> RunReport:
    if args.tower:
        A = parse_tower_class(_class_text(args))
        report = tower_index_report(A)
        nf = canonicalize(A)
        trace = [
            f"peel {s.param}: residue {s.residue}, d={s.d}, f {s.f_before}->{s.f_after}, e={s.e}" for s in report.trace
        ]
        return RunReport(
            "index",
            inputs=[("mode", "tower"), ("tower", str(A.tower)), ("class", A.format())],
            outputs=[("index", report.index), ("normal_form", f"a1={nf.a1}, a2={nf.a2}, r={nf.r}")],
            trace=trace,
        )
    A = _global_class(args)
    data = local_data(A)
    trace = [f"{d.place.format()}: invariant {d.invariant}/{A.n}, local index {d.index}" for d in data if d.invariant]
    return RunReport(
        "index",
        inputs=[("mode", "global"), ("field", str(A.field)), ("class", A.format())],
        outputs=[("index", global_index(A))],
        trace=trace,
    )


_NAMED = {
    "S3": lambda: library.symmetric(3),
    "S4": lambda: library.symmetric(4),
    "A4": lambda: library.alternating(4),
    "Q8": lambda: library.dicyclic(2),
    "SL2(3)": lambda: library.sl2(3),
    "Heis(3)": lambda: library.heisenberg(3),
}


def _parse_group(text):
    """``abelian: [3,3,3]`` (or just ``[3,3,3]``), a named group, or ``table:`` followed by rows of integers."""
    s = text.strip()
    if s.lower().startswith("table:"):
        s = s[len("table:") :].strip()
    body = s[len("abelian") :].strip().lstrip(":").strip() if s.lower().startswith("abelian") else s
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    tokens = body.replace(",", " ").split()
    if s.lower().startswith("abelian") or (s.startswith("[") and s.endswith("]")):
        try:
            return AbelianGroup.from_cyclic([int(x) for x in tokens])
        except ValueError:
            raise ParseError(f"cannot read abelian group {text!r}", 0, text) from None
    if s in _NAMED:
        return _NAMED[s]()
    for prefix, make in (("Z/", library.cyclic), ("Dic", lambda k: library.dicyclic(k // 4)), ("D", lambda k: library.dihedral(k // 2))):
        if s.startswith(prefix) and s[len(prefix) :].isdigit():
            return make(int(s[len(prefix) :]))
    rows = [ln.split() for ln in s.splitlines() if ln.strip()]
    try:
        table = np.array([[int(x) for x in r] for r in rows], dtype=np.int32)
    except ValueError:
        raise ParseError(f"cannot read group {s.splitlines()[0]!r}", 0, text) from None
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        raise ParseError("a Cayley table must be square", 0, text)
    try:
        return CayleyGroup(table, name="table")
    except ValueError as exc:
        raise ParseError(f"not a group table: {exc}", 0, text) from None


def cmd_classify(args) -> RunReport:
    G = _parse_group(_read_source(args, "group"))
    mu = args.mu if args.mu is not None else 1
    model = FieldModel(args.residue_char, args.residue_kind, mu, args.two_dim_local)
    verdict = classify(G, model)
    name = G.format() if isinstance(G, AbelianGroup) else G.name
    rows = [(s.prime, s.order, "yes" if s.abelian else "no", s.rank if s.rank is not None else "-", "yes" if s.has_series else "no") for s in verdict.sylows]
    return RunReport(
        "classify",
        inputs=[
            ("group", name),
            ("order", G.order),
            ("residue_char", model.residue_char),
            ("residue_kind", model.residue_kind),
            ("mu", model.roots_of_unity_bound),
            ("two_dim_local", str(model.two_dim_local).lower()),
        ],
        outputs=[("verdict", verdict.kind), ("prime", verdict.prime if verdict.prime is not None else "-")]
        + [(f"reason.{i}", r) for i, r in enumerate(verdict.reasons, 1)],
        table=(("prime", "order", "abelian", "rank", "series"), rows),
    )


def _orders(text):
    try:
        orders = [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise ParseError(f"cannot read orders {text!r}", 0, text) from None
    if len(orders) > 4:
        raise ParseError("at most four cyclic orders", 0, text)
    return tuple(orders + [1] * (4 - len(orders)))


def cmd_construct(args) -> RunReport:
    q = args.q if args.q is not None else (parse_field(args.field).q if args.field else None)
    if q is None:
        raise ParseError("give --q or --field")
    spec = ConstructionSpec(args.kind, _orders(args.orders), q, args.lam, args.a)
    algebra, subfield, cert = build(spec)
    text = cert.to_text()
    if args.cert_out:
        Path(args.cert_out).write_text(text)
    outputs = [("degree", algebra.degree), ("galois_group", subfield.galois_group.format())]
    trace = []
    if args.verify:
        v = verify_certificate(DivisionCertificate.from_text(text))
        if not galois_group_matches(spec, subfield):
            raise AssertionError("emitted Galois group differs from the requested group")
        outputs += [("index", v.index), ("division", str(v.division).lower())]
        trace = list(v.trace)
    inputs = [("kind", spec.kind), ("orders", ",".join(map(str, spec.orders))), ("field", str(spec.field)), ("lambda", str(spec.lam))]
    if spec.kind == "Thm42":
        inputs.append(("a", str(spec.a)))
    return RunReport(
        "construct",
        inputs=inputs,
        outputs=outputs,
        blocks=[("algebra", algebra.format()), ("subfield", subfield.format()), ("certificate", text)],
        trace=trace,
    )


def cmd_verify(args) -> RunReport:
    text = _read_source(args)
    cert = DivisionCertificate.from_text(text)
    v = verify_certificate(cert)
    return RunReport(
        "verify",
        inputs=[("kind", cert.kind), ("field", cert.field), ("degree", cert.degree), ("steps", len(cert.steps))],
        outputs=[("index", v.index), ("division", str(v.division).lower())],
        trace=list(v.trace),
    )


def cmd_hasse(args) -> RunReport:
    F = parse_field(args.field) if args.field else parse_field(str(args.q))
    n = args.n
    if n > 1 and prime_power(n) is None:
        raise NotPrimePower(f"{n} is not a prime power")
    if (F.q - 1) % n:
        raise RootsOfUnityMissing(f"{n} does not divide {F.q - 1}")
    rng = LCG64(args.seed)
    found = recip = agree = 0
    trace = []
    for i in range(1, args.random + 1):
        A = random_class(F, n, rng)
        data = local_data(A)
        g = lcm(*(d.index for d in data))
        w = hasse_witness(A)
        ok_w = local_index(A, w) == g or g == 1
        ok_r = reciprocity_check(A)
        ok_a = global_index_direct(A) == global_index(A)
        found += ok_w
        recip += ok_r
        agree += ok_a
        trace.append(f"{i} index={g} witness={w.format()} reciprocity={'ok' if ok_r else 'FAIL'} direct={'ok' if ok_a else 'FAIL'}")
    report = RunReport(
        "hasse",
        inputs=[("field", str(F)), ("n", n), ("count", args.random), ("seed", args.seed)],
        outputs=[("witnesses", f"{found}/{args.random}"), ("reciprocity", f"{recip}/{args.random}"), ("agreement", f"{agree}/{args.random}")],
        trace=trace,
    )
    if min(found, recip, agree) != args.random:
        raise AssertionError(report.render())
    return report


# -- wiring ---------------------------------------------------------------------------


def _add_input(p, class_input=True):
    p.add_argument("file", nargs="?", help="input file, or '-' for stdin")
    p.add_argument("-e", "--expr", help="input text instead of a file")
    if class_input:
        p.add_argument("--field", help="base field, e.g. GF(5)")
        p.add_argument("--modulus", type=int, help="symbol degree n when the text omits it")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "record"), default=argparse.SUPPRESS)
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS, help="append elapsed time")
    parser = argparse.ArgumentParser(prog="tamebrauer", description=__doc__.splitlines()[0], parents=[common])
    parser.add_argument("--version", action="version", version=f"tamebrauer {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    add = sub.add_parser

    def sub_add(name, **kw):
        return add(name, parents=[common], **kw)

    sub.add_parser = sub_add

    p = sub.add_parser("residue", help="ramified places, residues and local invariants")
    _add_input(p)
    p.set_defaults(func=cmd_residue)

    p = sub.add_parser("index", help="global index over F_q(t) or index over a Laurent tower")
    _add_input(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--global", dest="tower", action="store_false")
    mode.add_argument("--tower", dest="tower", action="store_true")
    p.set_defaults(func=cmd_index, tower=False)

    p = sub.add_parser("classify", help="admissibility verdict for a finite group")
    p.add_argument("file", nargs="?", help="group file (Cayley table or abelian list)")
    p.add_argument("-g", "--group", help="group text: [3,3,3], abelian 2 4, S4, Q8, D8, Z/6, ...")
    p.add_argument("--residue-char", type=int, default=0)
    p.add_argument("--residue-kind", choices=RESIDUE_KINDS, default="finite")
    p.add_argument("--mu", type=int, help="the field contains the mu-th roots of unity")
    p.add_argument("--two-dim-local", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("construct", help="emit a division algebra with its certificate")
    p.add_argument("--kind", choices=("Thm45", "Thm42"), default="Thm45")
    p.add_argument("--orders", required=True, help="up to four cyclic orders, e.g. 2,2,1,1")
    p.add_argument("--q", type=int)
    p.add_argument("--field")
    p.add_argument("--lambda", dest="lam", default="1")
    p.add_argument("--a", default="1")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--cert-out", help="also write the certificate to this path")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="replay a certificate")
    _add_input(p, class_input=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hasse", help="random prime-power classes: witness, reciprocity, direct index")
    p.add_argument("--random", type=int, required=True)
    p.add_argument("--q", type=int, default=5)
    p.add_argument("--field")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_hasse)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        report = args.func(args)
    except ToolkitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return exc.exit_code
    except AssertionError as exc:
        print(f"error: internal assertion failed: {exc}", file=stderr)
        return 5
    text = report.render(getattr(args, "format", "text"))
    if getattr(args, "timing", False):
        text += f"elapsed_seconds={time.perf_counter() - start:.3f}\n"
    stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
