"""Command line entry point: ``python -m qtet.cli <subcommand> ...``.

Exit codes: 0 success, 1 a check failed (report written), 2 bad input.
"""
import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from dotenv import load_dotenv
from tqdm import tqdm

from . import linalg as la
from .exactmath import QParam
from .gen import example_module, write_fixtures
from .modrep import certify_module, check_module, module_summary, normalize_type, verify_module
from .pairs import (
    certify_qinverting,
    certify_qtridiagonal,
    extract_qinverting,
    extract_qtridiagonal,
    generalized_conditions_check,
    inverting_assignments,
    orbit_isomorphism_pattern,
    pairs_isomorphic,
    rho_action,
    tridiagonal_assignments,
    verify_qinverting,
    verify_qtridiagonal,
    z4_orbit,
)
from .reports import CertificationError, InputError, Report
from .split import (
    check_reconstruction_steps,
    check_split_lemmas,
    check_vij_lemmas,
    reconstruct_module,
    split_data,
)
from .tetra import GENERATOR_NAMES
from .utils_io import (
    is_module_json,
    module_from_json,
    module_to_json,
    pair_from_json,
    pair_kind,
    pair_to_json,
    read_json,
    write_json,
)

logger = logging.getLogger(__name__)

# env/config
LOG_LEVEL = os.getenv("QTET_LOG_LEVEL", "WARNING")
FIXTURES_DIR = os.getenv("QTET_FIXTURES", "fixtures")
DEFAULT_EXAMPLE_DS = (0, 1, 2, 3)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _emit(rep: Report, a) -> int:
    text = rep.to_text() if a.format == "text" else rep.dumps()
    if a.out and not getattr(a, "out_is_artifact", False):
        Path(a.out).write_text(text + "\n")
        print("Wrote report", a.out)
    else:
        print(text)
    return EXIT_OK if rep.ok else EXIT_FAIL


def _single_input(a) -> Path:
    if not a.inputs or len(a.inputs) != 1:
        raise InputError(f"{a.cmd} needs exactly one --in")
    return Path(a.inputs[0])


def _q(a) -> Optional[QParam]:
    return QParam.parse(a.q) if a.q is not None else None


def _load_module(a):
    return module_from_json(read_json(_single_input(a)), _q(a))


def _load_pair(a, path: Optional[Path] = None, kind: Optional[str] = None):
    obj = read_json(path or _single_input(a))
    found, q, X, Y = pair_from_json(obj, _q(a))
    if kind is not None and found != kind:
        raise InputError(f"expected a {kind} pair, found a {found} pair")
    return found, q, X, Y


def _certified_type1(a):
    return normalize_type(certify_module(_load_module(a)))


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify_module(a) -> int:
    ok, payload = verify_module(_load_module(a))
    if ok:
        return _emit(Report(subject="module", details=module_summary(payload)), a)
    return _emit(payload, a)


def _verify_pair(a, kind: str) -> int:
    _, q, X, Y = _load_pair(a, kind=kind)
    verify = verify_qinverting if kind == "inverting" else verify_qtridiagonal
    ok, payload = verify(X, Y, q)
    if ok:
        rep = Report(subject=f"q{kind}", details={"d": payload.d, "delta": payload.delta, "dim": payload.dim})
        return _emit(rep, a)
    return _emit(payload, a)


def cmd_verify_pair(a) -> int:
    return _verify_pair(a, "inverting")


def cmd_verify_tdpair(a) -> int:
    return _verify_pair(a, "tridiagonal")


def _write_artifact(a, obj, default_name: str) -> Path:
    path = Path(a.out) if a.out else Path(default_name)
    write_json(path, obj)
    print("Wrote", path)
    return path


def cmd_extract_pair(a) -> int:
    P = extract_qinverting(_certified_type1(a))
    _write_artifact(a, pair_to_json(P.q, P.K, P.Kstar, "inverting"), "pair.json")
    return EXIT_OK


def cmd_extract_tdpair(a) -> int:
    P = extract_qtridiagonal(_certified_type1(a))
    _write_artifact(a, pair_to_json(P.q, P.A, P.Astar, "tridiagonal"), "tdpair.json")
    return EXIT_OK


def cmd_reconstruct(a) -> int:
    _, q, K, Kstar = _load_pair(a, kind="inverting")
    M = reconstruct_module(certify_qinverting(K, Kstar, q))
    _write_artifact(a, module_to_json(M.assignment), "module.json")
    return EXIT_OK


def cmd_roundtrip(a) -> int:
    obj = read_json(_single_input(a))
    rep = Report(subject="roundtrip")
    if is_module_json(obj):
        M = normalize_type(certify_module(module_from_json(obj, _q(a))))
        M2 = reconstruct_module(extract_qinverting(M))
        for name in GENERATOR_NAMES:
            if not la.matrices_equal(M[name], M2[name]):
                rep.fail("roundtrip.mismatch", name)
        rep.details.update(module_summary(M))
    elif pair_kind(obj) == "inverting":
        _, q, K, Kstar = pair_from_json(obj, _q(a))
        P = certify_qinverting(K, Kstar, q)
        P2 = extract_qinverting(reconstruct_module(P))
        if not P.same_matrices(P2):
            rep.fail("roundtrip.mismatch", "K/Kstar")
        rep.details.update({"d": P.d, "dim": P.dim})
    else:
        raise InputError("roundtrip needs a module or a q-inverting pair")
    return _emit(rep, a)


def cmd_z4_orbit(a) -> int:
    _, q, K, Kstar = _load_pair(a, kind="inverting")
    orbit = z4_orbit(certify_qinverting(K, Kstar, q))
    rep = Report(subject="z4_orbit", details={"d": orbit[0].d})
    if not rho_action(orbit[3]).same_matrices(orbit[0]):
        rep.fail("z4.order", note="rho^4 is not the identity")
    rep.details["isomorphism_pattern"] = orbit_isomorphism_pattern(orbit[0])
    rep.details["orbit"] = [pair_to_json(q, P.K, P.Kstar) for P in orbit]
    return _emit(rep, a)


def cmd_isomorphic(a) -> int:
    if not a.inputs or len(a.inputs) != 2:
        raise InputError("isomorphic needs exactly two --in")
    kind1, q1, X1, Y1 = _load_pair(a, Path(a.inputs[0]))
    kind2, q2, X2, Y2 = _load_pair(a, Path(a.inputs[1]))
    if kind1 != kind2:
        raise InputError(f"cannot compare a {kind1} pair with a {kind2} pair")
    certify = certify_qinverting if kind1 == "inverting" else certify_qtridiagonal
    P1, P2 = certify(X1, Y1, q1), certify(X2, Y2, q2)
    S = pairs_isomorphic(P1, P2)
    rep = Report(subject="isomorphic", details={"isomorphic": S is not None})
    if S is None:
        rep.fail("isomorphism.none")
    else:
        rep.details["witness"] = q1.format_matrix(S)
    return _emit(rep, a)


def cmd_gen_example(a) -> int:
    q = _q(a) or QParam.from_env()
    ds = a.ds or list(DEFAULT_EXAMPLE_DS)
    if any(d < 0 for d in ds):
        raise InputError("--d must be nonnegative")
    modules = [example_module(d, q) for d in tqdm(ds, desc="modules")]
    out = Path(a.out or FIXTURES_DIR)
    for p in write_fixtures(modules, out):
        print("Wrote", p)
    return EXIT_OK


def cmd_check_tables(a) -> int:
    return _emit(check_module(_certified_type1(a)), a)


def cmd_check_gen9(a) -> int:
    kind, q, X, Y = _load_pair(a)
    if kind == "inverting":
        P = certify_qinverting(X, Y, q)
        ops = inverting_assignments(P)
    else:
        P = certify_qtridiagonal(X, Y, q)
        ops = tridiagonal_assignments(P)
    rep = generalized_conditions_check(P.V, P.Vstar, ops)
    rep.details["kind"] = kind
    return _emit(rep, a)


def cmd_check_split(a) -> int:
    _, q, K, Kstar = _load_pair(a, kind="inverting")
    P = certify_qinverting(K, Kstar, q)
    rep = Report(subject="split_checks")
    rep.extend(check_vij_lemmas(P))
    rep.extend(check_split_lemmas(split_data(P)))
    rep.extend(check_reconstruction_steps(P, reconstruct_module(P)))
    return _emit(rep, a)


COMMANDS = {
    "verify-module": (cmd_verify_module, False),
    "verify-pair": (cmd_verify_pair, False),
    "verify-tdpair": (cmd_verify_tdpair, False),
    "extract-pair": (cmd_extract_pair, True),
    "extract-tdpair": (cmd_extract_tdpair, True),
    "reconstruct": (cmd_reconstruct, True),
    "roundtrip": (cmd_roundtrip, False),
    "z4-orbit": (cmd_z4_orbit, False),
    "isomorphic": (cmd_isomorphic, False),
    "gen-example": (cmd_gen_example, True),
    "check-tables": (cmd_check_tables, False),
    "check-gen9": (cmd_check_gen9, False),
    "check-split": (cmd_check_split, False),
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qtet", description="q-tetrahedron module toolkit")
    sub = ap.add_subparsers(dest="cmd", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument('--q', default=None, help="deformation parameter, e.g. 2, -1/3 or q")
        sp.add_argument('--in', dest='inputs', action='append', default=[])
        sp.add_argument('--out', default='')
        sp.add_argument('--format', choices=('json', 'text'), default='json')
        if name == "gen-example":
            sp.add_argument('--d', dest='ds', type=int, action='append', default=[])
    return ap


def run(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    handler, out_is_artifact = COMMANDS[a.cmd]
    a.out_is_artifact = out_is_artifact
    try:
        return handler(a)
    except CertificationError as e:
        logger.warning("%s", e)
        return _emit(e.report, a)
    except (InputError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    load_dotenv()
    logging.basicConfig(level=os.getenv("QTET_LOG_LEVEL", LOG_LEVEL), format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
