"""Command-line front end.

Exit codes: 0 for success or a true answer, 1 for a false or missing
answer, 2 for errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import io
from .chain import FreeUComplex, FreeUVComplex, cancel_reduce, d_squared_is_zero
from .equivalence import (
    SearchBounds,
    StandardParams,
    iota_k_equivalent,
    iota_k_local_map_search,
    is_equivalent,
    standard_rep_search,
    verify_certificate,
    verify_iota_k_certificate,
)
from .group import SignedCnTerm, simplified_sum_params, sf_member
from .involutive import IotaComplex, IotaKComplex, a0_subcomplex, dual, tensor_iota, tensor_iota_k, verify_involution
from .knots import box_complex, dn, en_complex, staircase, torus_alexander, yn_fixture
from .ring import InvalidInputError

__all__ = ["YnResult", "BoxCheck", "run_yn_pipeline", "box_reduction_check", "main"]


@dataclass
class BoxCheck:
    """Equivalence of D_n tensor a box complex with the Y_n fixture.

    ``box_to_y`` and ``y_to_box`` are the two one-way certificates (or None).
    """

    label: str
    box_to_y: object
    y_to_box: object

    @property
    def equivalent(self) -> bool:
        return self.box_to_y is not None and self.y_to_box is not None


@dataclass
class YnResult:
    n: int
    params: StandardParams | None
    sf: bool | None
    checks: list


def box_reduction_check(n: int) -> list[BoxCheck]:
    """Compare ``D_n x B_n`` and ``D_n x dual(B_n)`` with the Y_n fixture.

    With the box complex as constructed, the equivalence holds for the dual
    box; for the box itself only the map from Y_n exists. Both are reported.
    """
    y = yn_fixture(n)
    out = []
    for label, b in (("D_n x B_n", box_complex(n)), ("D_n x dual(B_n)", dual(box_complex(n)))):
        t = tensor_iota_k(dn(n), b)
        fwd = iota_k_local_map_search(t, y)
        bwd = iota_k_local_map_search(y, t)
        for src, tgt, cert in ((t, y, fwd), (y, t, bwd)):
            if cert is not None and not verify_iota_k_certificate(src, tgt, cert):
                raise AssertionError(f"{label}: certificate failed to re-verify")
        out.append(BoxCheck(label, fwd, bwd))
    return out


def run_yn_pipeline(n: int, bounds: SearchBounds | None = None, full_check: bool = False) -> YnResult:
    """Standard representative and SF verdict for the A0 complex E_n."""
    if n < 3 or n % 2 == 0:
        raise InvalidInputError(f"n must be an odd integer >= 3, got {n}")
    bounds = bounds or SearchBounds(3, n)
    p = standard_rep_search(en_complex(n), bounds)
    checks = box_reduction_check(n) if full_check else []
    return YnResult(n, p, None if p is None else sf_member(p), checks)


def _read(path):
    return io.load(path)


def _emit(x, args) -> int:
    if isinstance(x, (IotaComplex, IotaKComplex)):
        c = x.complex
    else:
        c = x
    if not d_squared_is_zero(c):
        raise AssertionError("refusing to write a complex with d^2 != 0")
    text = io.serialize(x)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_torus_cfk(args):
    return _emit(staircase(torus_alexander(args.p, args.q)), args)


def _cmd_staircase(args):
    return _emit(staircase(args.steps), args)


def _cmd_box(args):
    return _emit(box_complex(args.n), args)


def _cmd_tensor(args):
    a, b = _read(args.a), _read(args.b)
    if args.knot:
        if not (isinstance(a, IotaKComplex) and isinstance(b, IotaKComplex)):
            raise InvalidInputError("--knot needs two F2[U,V] documents with involutions")
        return _emit(tensor_iota_k(a, b), args)
    if not (isinstance(a, IotaComplex) and isinstance(b, IotaComplex)):
        raise InvalidInputError("tensor needs two F2[U] documents with involutions (use --knot for F2[U,V])")
    return _emit(tensor_iota(a, b), args)


def _cmd_dual(args):
    return _emit(dual(_read(args.a)), args)


def _cmd_a0(args):
    a = _read(args.a)
    if not isinstance(a, IotaKComplex):
        raise InvalidInputError("a0 needs an F2[U,V] document with an involution")
    return _emit(a0_subcomplex(a), args)


def _cmd_reduce(args):
    a = _read(args.a)
    if isinstance(a, IotaKComplex):
        c, (m,) = cancel_reduce(a.complex, [a.iota_k])
        return _emit(IotaKComplex(c, m), args)
    if isinstance(a, IotaComplex):
        c, (m,) = cancel_reduce(a.complex, [a.iota])
        return _emit(IotaComplex(c, m), args)
    c, _ = cancel_reduce(a)
    return _emit(c, args)


def _cmd_verify(args):
    a = _read(args.a)
    if isinstance(a, (FreeUComplex, FreeUVComplex)):
        ok = d_squared_is_zero(a)
        print("d^2 = 0" if ok else "d^2 != 0")
        return 0 if ok else 1
    if not d_squared_is_zero(a.complex):
        print("d^2 != 0")
        return 1
    res = verify_involution(a, "almost" if args.almost else "strict")
    print("involution relation holds" if res else f"involution relation fails: {res.residual}")
    return 0 if res else 1


def _cmd_equiv(args):
    a, b = _read(args.a), _read(args.b)
    if isinstance(a, IotaKComplex) and isinstance(b, IotaKComplex):
        res = iota_k_equivalent(a, b)
        ok = bool(res) and verify_iota_k_certificate(a, b, res.forward) and verify_iota_k_certificate(b, a, res.backward)
    elif isinstance(a, IotaComplex) and isinstance(b, IotaComplex):
        res = is_equivalent(a, b, "almost" if args.almost else "strict")
        ok = bool(res) and verify_certificate(a, b, res.forward) and verify_certificate(b, a, res.backward)
    else:
        raise InvalidInputError("equiv needs two documents over the same ring, both with involutions")
    fwd = "found" if res.forward is not None else "none"
    bwd = "found" if res.backward is not None else "none"
    print(f"A -> B: {fwd}; B -> A: {bwd}; {'equivalent' if ok else 'not equivalent'}")
    return 0 if ok else 1


def _cmd_standard_rep(args):
    a = _read(args.a)
    if not isinstance(a, IotaComplex):
        raise InvalidInputError("standard-rep needs an F2[U] document with an involution")
    p = standard_rep_search(a, SearchBounds(args.max_steps, args.max_weight), strategy=args.strategy)
    if p is None:
        print("not found within bounds; raise --max-steps or --max-weight")
        return 1
    print(f"({p})")
    return 0


def _cmd_sum_params(args):
    terms = [SignedCnTerm.parse(t) for t in args.terms]
    print(f"({simplified_sum_params(terms)})")
    return 0


def _cmd_sf_check(args):
    p = StandardParams.parse(args.params)
    ok = sf_member(p)
    print("in the SF image" if ok else "not in the SF image")
    return 0 if ok else 1


def _cmd_yn(args):
    bounds = SearchBounds(args.max_steps or 3, args.max_weight or args.n)
    res = run_yn_pipeline(args.n, bounds, args.full_check)
    if res.params is None:
        print("not found within bounds; raise --max-steps or --max-weight")
        return 1
    print(f"n = {res.n}: standard representative ({res.params}); in SF image: {'yes' if res.sf else 'no'}")
    status = 0
    for chk in res.checks:
        fwd = "found" if chk.box_to_y is not None else "none"
        bwd = "found" if chk.y_to_box is not None else "none"
        verdict = "equivalent" if chk.equivalent else "not equivalent"
        print(f"{chk.label} vs Y_n: forward {fwd}, backward {bwd}: {verdict}")
    if res.checks and not res.checks[1].equivalent:
        status = 1
    return status


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="iotacx", description="Involutive complexes over F2[U,V] and F2[U].")
    sub = ap.add_subparsers(dest="command", required=True)

    def out(p):
        p.add_argument("-o", "--output", help="write the document here instead of stdout")
        return p

    p = out(sub.add_parser("torus-cfk", help="staircase of the torus knot T(P,Q)"))
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.set_defaults(func=_cmd_torus_cfk)

    p = out(sub.add_parser("staircase", help="staircase from a symmetric step sequence"))
    p.add_argument("steps", type=int, nargs="+")
    p.set_defaults(func=_cmd_staircase)

    p = out(sub.add_parser("box", help="the five-generator box complex"))
    p.add_argument("n", type=int)
    p.set_defaults(func=_cmd_box)

    p = out(sub.add_parser("tensor", help="tensor product of two documents"))
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--knot", action="store_true", help="F2[U,V] product with the iota_K rule")
    p.set_defaults(func=_cmd_tensor)

    for name, func, helptext in (
        ("dual", _cmd_dual, "dual complex"),
        ("a0", _cmd_a0, "Alexander-grading-zero subcomplex"),
        ("reduce", _cmd_reduce, "cancel all constant differential entries"),
    ):
        p = out(sub.add_parser(name, help=helptext))
        p.add_argument("a")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="check d^2 = 0 and the involution relation")
    p.add_argument("a")
    p.add_argument("--almost", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("equiv", help="local equivalence of two documents")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--almost", action="store_true")
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("standard-rep", help="standard representative of an F2[U] document")
    p.add_argument("a")
    p.add_argument("--max-steps", type=int, required=True)
    p.add_argument("--max-weight", type=int, required=True)
    p.add_argument("--strategy", choices=("auto", "bisect", "enumerate"), default="auto")
    p.set_defaults(func=_cmd_standard_rep)

    p = sub.add_parser("sum-params", help="parameters of a signed sum of C(n), e.g. +3 -2")
    p.add_argument("terms", nargs="*")
    p.set_defaults(func=_cmd_sum_params)

    p = sub.add_parser("sf-check", help="SF image membership of parameters like +,-1,+,-2")
    p.add_argument("params")
    p.set_defaults(func=_cmd_sf_check)

    p = sub.add_parser("yn", help="standard representative of E_n and its SF verdict")
    p.add_argument("n", type=int)
    p.add_argument("--max-steps", type=int)
    p.add_argument("--max-weight", type=int)
    p.add_argument("--full-check", action="store_true", help="also certify the box reduction")
    p.set_defaults(func=_cmd_yn)
    return ap


def main(argv=None) -> int:
    ap = _parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidInputError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
