"""``hodgelab`` command line.

Every subcommand prints one JSON document.  Exit status is 0 on success,
1 on a domain error and 2 on an I/O, usage or parse error; failures print
``{"error": {"kind", "message", "position"?}}``.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from . import cochain as cc
from . import exterior as ext
from . import io
from .complex import Chain
from .errors import DomainError, HodgelabError, UsageError
from .expr import parse_and_eval, parse_polynomial
from .integrate import integrate_form, l2_inner, stokes_check

DEFAULT_MAX_DIM = 6

FORM_COMMANDS = ("eval", "d", "star", "codiff", "laplacian", "homotopy", "grad", "curl", "div")


@dataclass
class RunConfig:
    command: str
    exprs: List[str] = field(default_factory=list)
    dim: Optional[int] = None
    complex: Optional[str] = None
    chain: Optional[str] = None
    domain: Optional[str] = None
    cochains: List[str] = field(default_factory=list)
    weight: Optional[str] = None
    t: Optional[str] = None
    output: Optional[str] = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def max_dim() -> int:
    raw = os.environ.get("HODGELAB_MAX_DIM", str(DEFAULT_MAX_DIM))
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"HODGELAB_MAX_DIM must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError("HODGELAB_MAX_DIM must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hodgelab", description="Exact exterior calculus and combinatorial Hodge theory.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_output(p):
        p.add_argument("-o", "--output", help="write JSON here instead of standard output")
        return p

    for name in FORM_COMMANDS:
        p = with_output(sub.add_parser(name, help=f"apply {name} to a form expression"))
        p.add_argument("expr")
        p.add_argument("-n", "--dim", type=int, default=3, help="ambient dimension (default 3)")

    p = with_output(sub.add_parser("witten", help="deformed differential d + t df^"))
    p.add_argument("expr")
    p.add_argument("-n", "--dim", type=int, default=3)
    p.add_argument("--f", dest="weight", required=True, help="weight polynomial f")
    p.add_argument("--t", required=True, help="rational deformation parameter")

    p = with_output(sub.add_parser("maxwell", help="field report for a potential 1-form on R^4"))
    p.add_argument("expr")
    p.add_argument("--domain", help="4-chain JSON; adds the action 1/2 (F, F)")

    for name in ("integrate", "stokes"):
        p = with_output(sub.add_parser(name, help=f"{name} a form over an embedded chain"))
        p.add_argument("expr")
        p.add_argument("--chain", required=True, help="embedded chain JSON")

    p = with_output(sub.add_parser("l2", help="Hodge L2 product of two forms over a domain"))
    p.add_argument("expr", nargs=2)
    p.add_argument("--domain", required=True, help="full-degree chain JSON")

    for name in ("betti", "euler", "complex"):
        p = with_output(sub.add_parser(name, help=f"{name} of a complex (OFF or JSON)"))
        p.add_argument("--complex", required=True)

    for name in ("decompose", "harmonic-rep"):
        p = with_output(sub.add_parser(name, help=f"{name} of a cochain"))
        p.add_argument("--complex", required=True)
        p.add_argument("--cochain", required=True)

    p = with_output(sub.add_parser("pairing", help="period of a cochain on a chain"))
    p.add_argument("--complex", required=True)
    p.add_argument("--chain", required=True, help="chain JSON in the cochain schema")
    p.add_argument("--cochain", required=True)

    p = with_output(sub.add_parser("cohomologous", help="test two closed cochains"))
    p.add_argument("--complex", required=True)
    p.add_argument("--cochain", nargs=2, required=True)
    return parser


def parse_args(argv: Sequence[str]) -> RunConfig:
    ns = build_parser().parse_args(list(argv))
    cochains = getattr(ns, "cochain", None)
    expr = getattr(ns, "expr", None)
    cfg = RunConfig(
        command=ns.command,
        exprs=list(expr) if isinstance(expr, list) else ([expr] if expr is not None else []),
        dim=getattr(ns, "dim", None),
        complex=getattr(ns, "complex", None),
        chain=getattr(ns, "chain", None),
        domain=getattr(ns, "domain", None),
        cochains=list(cochains) if isinstance(cochains, list) else ([cochains] if cochains else []),
        weight=getattr(ns, "weight", None),
        t=getattr(ns, "t", None),
        output=ns.output,
    )
    if ns.command == "maxwell":
        cfg.dim = 4
    return cfg


def _check_dim(n: int) -> int:
    cap = max_dim()
    if not 1 <= n <= cap:
        raise UsageError(f"ambient dimension {n} outside 1..{cap} (HODGELAB_MAX_DIM)")
    return n


def _domain(fn: Callable, *args):
    try:
        return fn(*args)
    except HodgelabError:
        raise
    except (ValueError, IndexError) as exc:
        raise DomainError(str(exc)) from exc


_FORM_OPS: Dict[str, Callable] = {
    "eval": lambda w: w,
    "d": ext.exterior_derivative,
    "star": ext.hodge_star,
    "codiff": ext.codifferential,
    "laplacian": ext.hodge_laplacian,
    "homotopy": ext.homotopy_operator,
    "grad": ext.grad,
    "curl": ext.curl,
    "div": ext.div,
}


def _form_command(cfg: RunConfig):
    n = _check_dim(cfg.dim)
    w = parse_and_eval(cfg.exprs[0], n)
    if cfg.command == "witten":
        try:
            t = Fraction(cfg.t)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--t must be a rational, got {cfg.t!r}") from None
        f = parse_polynomial(cfg.weight, n)
        return io.form_payload(_domain(ext.witten_derivative, w, f, t))
    return io.form_payload(_domain(_FORM_OPS[cfg.command], w))


def _maxwell(cfg: RunConfig):
    A = parse_and_eval(cfg.exprs[0], 4)
    report = _domain(ext.maxwell_field, A)
    out = {
        "F": io.form_to_json(report.field),
        "bianchi_ok": report.bianchi_ok,
        "pi_J": io.form_to_json(report.pi_current),
        "continuity_ok": report.continuity_ok,
    }
    if cfg.domain:
        out["action"] = str(_domain(ext.maxwell_action, report.field, io.load_embedded_chain(cfg.domain)))
    return out


def _chain_form(cfg: RunConfig, path: str):
    chain = io.load_embedded_chain(path)
    _check_dim(chain.ambient)
    return chain, parse_and_eval(cfg.exprs[0], chain.ambient)


def _integrate(cfg: RunConfig):
    chain, w = _chain_form(cfg, cfg.chain)
    return {"value": str(_domain(integrate_form, w, chain))}


def _stokes(cfg: RunConfig):
    chain, w = _chain_form(cfg, cfg.chain)
    res = _domain(stokes_check, w, chain)
    return {"lhs": str(res.lhs), "rhs": str(res.rhs), "equal": res.equal}


def _l2(cfg: RunConfig):
    domain = io.load_embedded_chain(cfg.domain)
    n = _check_dim(domain.ambient)
    a, b = (parse_and_eval(e, n) for e in cfg.exprs)
    return {"value": str(_domain(l2_inner, a, b, domain))}


def _betti(cfg: RunConfig):
    report = _domain(cc.cohomology_report, io.ingest_complex(cfg.complex))
    return {"betti": report.betti, "euler": report.euler}


def _euler(cfg: RunConfig):
    K = io.ingest_complex(cfg.complex)
    report = _domain(cc.cohomology_report, K)
    return {"euler": report.euler, "simplex_counts": K.counts()}


def _complex(cfg: RunConfig):
    return io.complex_to_json(io.ingest_complex(cfg.complex))


def _decompose(cfg: RunConfig):
    K = io.ingest_complex(cfg.complex)
    w = io.ingest_cochain_json(cfg.cochains[0], K)
    return io.split_to_json(_domain(cc.hodge_decompose, w))


def _harmonic_rep(cfg: RunConfig):
    K = io.ingest_complex(cfg.complex)
    w = io.ingest_cochain_json(cfg.cochains[0], K)
    return {"harmonic": io.cochain_to_json(_domain(cc.harmonic_representative, w))}


def _pairing(cfg: RunConfig):
    K = io.ingest_complex(cfg.complex)
    c = io.ingest_cochain_json(cfg.chain, K, cls=Chain)
    w = io.ingest_cochain_json(cfg.cochains[0], K)
    return {"value": str(_domain(cc.pairing, c, w))}


def _cohomologous(cfg: RunConfig):
    K = io.ingest_complex(cfg.complex)
    w1, w2 = (io.ingest_cochain_json(path, K) for path in cfg.cochains)
    res = _domain(cc.cohomologous, w1, w2)
    return {
        "cohomologous": res.cohomologous,
        "witness": io.cochain_to_json(res.witness) if res.witness is not None else None,
    }


_DISPATCH: Dict[str, Callable[[RunConfig], dict]] = {
    **{name: _form_command for name in FORM_COMMANDS},
    "witten": _form_command,
    "maxwell": _maxwell,
    "integrate": _integrate,
    "stokes": _stokes,
    "l2": _l2,
    "betti": _betti,
    "euler": _euler,
    "complex": _complex,
    "decompose": _decompose,
    "harmonic-rep": _harmonic_rep,
    "pairing": _pairing,
    "cohomologous": _cohomologous,
}


def _emit(payload: dict, output: Optional[str], stdout) -> None:
    text = io.dumps(payload) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def run(cfg: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        payload = _DISPATCH[cfg.command](cfg)
        _emit(payload, cfg.output, stdout)
        return 0
    except HodgelabError as exc:
        stdout.write(io.dumps(exc.to_json()) + "\n")
        return exc.exit_code
    except OSError as exc:
        stdout.write(io.dumps({"error": {"kind": "input", "message": str(exc)}}) + "\n")
        return 2


def main(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        cfg = parse_args(sys.argv[1:] if argv is None else argv)
    except HodgelabError as exc:
        stdout.write(io.dumps(exc.to_json()) + "\n")
        return exc.exit_code
    return run(cfg, stdout)


if __name__ == "__main__":
    sys.exit(main())
