"""Command-line surface: every construction, one machine-readable report.

Each invocation prints a single-line JSON RunReport on stdout and exits
with 0 (ok), 2 (a quantitative hypothesis was violated), 3 (a tolerance
decision was ambiguous), or 4 (I/O or format problem).  ``verify suite``
exits 1 when any invariant check fails.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from .affiliation import affiliate, split
from .config import active_tolerances
from .core import _op_norm
from .errors import FormatError, HypothesisViolated, NonConvergence, ToleranceAmbiguity
from .generate import orbit_pair
from .intertwiner import orbit_intertwiner, projection_intertwiner
from .invariants import example_pair_generator, moment_signature, orbit_comparison, projective_distances
from .matrixio import RunReport, file_digest, load_matrix, save_matrix
from .rng import SplitMix64
from .spectral import decompose, lagrange_projector, reconstruct
from .verify import run_suite

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_HYPOTHESIS = 2
EXIT_AMBIGUITY = 3
EXIT_FORMAT = 4


class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors, which collides with the
    # hypothesis-violated code; route usage problems to the format code
    def error(self, message):
        raise _ArgumentError(message)


def _cert_outputs(cert):
    return {
        "epsilon": cert.epsilon,
        "delta_j": list(cert.delta_j),
        "delta": cert.delta,
        "op_norm_dev": cert.op_norm_dev,
        "hs_norm_dev": cert.hs_norm_dev,
        "bound_ok": cert.bound_ok,
        "conjugation_residual": cert.conjugation_residual,
    }


def _cmd_decompose(args, tol):
    rho = load_matrix(args.file, tol).as_hermitian(tol)
    dec = decompose(rho, args.cluster_tol, tol)
    back = reconstruct(dec, tol)
    return {
        "n": dec.n,
        "total_rank": dec.total_rank,
        "eigenvalues": list(dec.eigenvalues),
        "multiplicities": list(dec.multiplicities),
        "complement_rank": dec.complement.rank,
        "recon_residual": _op_norm(back.matrix - rho.matrix),
    }


def _cmd_project(args, tol):
    rho = load_matrix(args.file, tol).as_hermitian(tol)
    dec = decompose(rho, args.cluster_tol, tol)
    proj = lagrange_projector(rho, dec, args.eig, tol)
    ref = dec.complement if args.eig == 0 else dec.projections[args.eig - 1]
    outputs = {
        "j": args.eig,
        "node": 0.0 if args.eig == 0 else dec.eigenvalues[args.eig - 1],
        "rank": proj.rank,
        "deviation_from_spectral": _op_norm(proj.matrix - ref.matrix),
    }
    if args.out:
        save_matrix(args.out, proj.matrix, "projection", {"source": "project"})
        outputs["out"] = args.out
    return outputs


def _cmd_affiliate(args, tol):
    e = load_matrix(args.e_file, tol).as_projection(tol)
    f = load_matrix(args.f_file, tol).as_projection(tol)
    parts = split(e, f, tol)
    outputs = {
        "rank": e.rank,
        "common_rank": parts.q.rank,
        "n_prime": parts.n_prime,
    }
    if parts.n_prime > 0:
        bases = affiliate(parts.e_prime, parts.f_prime, tol)
        outputs["overlaps"] = [float(x) for x in bases.overlaps]
        outputs["alpha"] = [float(x) for x in bases.alpha]
        outputs["beta"] = [float(x) for x in bases.beta]
    return outputs


def _cmd_intertwine_proj(args, tol):
    e = load_matrix(args.e_file, tol).as_projection(tol)
    f = load_matrix(args.f_file, tol).as_projection(tol)
    cert = projection_intertwiner(e, f, args.eps, tol)
    outputs = _cert_outputs(cert)
    if args.out:
        save_matrix(args.out, cert.v, "unitary", {"source": "intertwine-proj"})
        outputs["out"] = args.out
    return outputs


def _cmd_intertwine(args, tol):
    rho = load_matrix(args.rho_file, tol).as_hermitian(tol)
    rho_p = load_matrix(args.rho_prime_file, tol).as_hermitian(tol)
    cert = orbit_intertwiner(rho, rho_p, args.eps, args.cluster_tol, tol)
    outputs = _cert_outputs(cert)
    if args.out:
        save_matrix(args.out, cert.v, "unitary", {"source": "intertwine"})
        outputs["out"] = args.out
    return outputs


def _cmd_distance(args, tol):
    p = load_matrix(args.p_file, tol).as_projection(tol)
    r = load_matrix(args.r_file, tol).as_projection(tol)
    geo, tdist = projective_distances(p, r, tol)
    overlap = float(np.trace(p.matrix @ r.matrix).real)
    return {"geodesic": geo, "trace_dist": tdist, "overlap": overlap}


def _cmd_moments(args, tol):
    rho = load_matrix(args.file, tol).as_hermitian(tol)
    sig = moment_signature(rho, args.order, args.cluster_tol, tol)
    duality = max(
        abs(a - sig.measure_moment(n)) for n, a in enumerate(sig.moments)
    )
    return {
        "K": sig.order,
        "moments": list(sig.moments),
        "atoms": [[lam, w] for lam, w in sig.atoms],
        "duality_defect": duality,
    }


def _cmd_same_orbit(args, tol):
    a = load_matrix(args.a_file, tol).as_hermitian(tol)
    b = load_matrix(args.b_file, tol).as_hermitian(tol)
    comp = orbit_comparison(a, b, args.order, args.tol, args.cluster_tol, tol)
    return {
        "same_orbit": comp.same_orbit,
        "moments_match": comp.moments_match,
        "spectra_match": comp.spectra_match,
        "anomaly": comp.anomaly,
    }


def _parse_alpha(text):
    values = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        values.append(complex(part))
    if not values:
        raise _ArgumentError("--alpha must list at least one value")
    return values


def _parse_spectrum(text):
    spectrum = []
    for part in text.split(","):
        lam, _, mult = part.partition(":")
        try:
            spectrum.append((float(lam), int(mult) if mult else 1))
        except ValueError as exc:
            raise _ArgumentError(f"bad spectrum entry {part!r}: {exc}") from exc
    if not spectrum:
        raise _ArgumentError("--spectrum must list at least one eigenvalue")
    return spectrum


def _cmd_gen_example(args, tol):
    alphas = _parse_alpha(args.alpha)
    e, f, expected = example_pair_generator(args.dim, alphas, tol)
    meta = {"seed": args.seed, "generator": "example", "dim": args.dim}
    e_path = f"{args.out_prefix}_E.json"
    f_path = f"{args.out_prefix}_F.json"
    save_matrix(e_path, e.matrix, "projection", meta)
    save_matrix(f_path, f.matrix, "projection", meta)
    return {
        "files": [e_path, f_path],
        "efe_spectrum": list(expected.efe_spectrum),
        "hs_sq": expected.hs_sq,
        "op_norm": expected.op_norm,
    }


def _cmd_gen_orbit_pair(args, tol):
    spectrum = _parse_spectrum(args.spectrum)
    rng = SplitMix64(args.seed)
    rho, rho_p, _ = orbit_pair(rng, spectrum, args.perturb, dim=args.dim, tol=tol)
    meta = {
        "seed": args.seed,
        "generator": "orbit-pair",
        "perturb": args.perturb,
        "spectrum": args.spectrum,
    }
    rho_path = f"{args.out_prefix}_rho.json"
    rho_p_path = f"{args.out_prefix}_rho_prime.json"
    save_matrix(rho_path, rho.matrix, "hermitian", meta)
    save_matrix(rho_p_path, rho_p.matrix, "hermitian", meta)
    return {
        "files": [rho_path, rho_p_path],
        "dim": rho.dim,
        "rank": sum(m for _, m in spectrum),
        "perturb": args.perturb,
    }


def _cmd_verify_suite(args, tol):
    result = run_suite(args.seed, args.count, tol)
    checks = {
        c.name: {
            "passed": c.passed,
            "instances": c.instances,
            "worst": c.worst,
            "detail": c.detail,
        }
        for c in sorted(result.checks, key=lambda c: c.name)
    }
    return {
        "seed": result.seed,
        "count": result.count,
        "checks": checks,
        "failures": sorted(result.failures),
        "ok": result.ok,
    }


def build_parser() -> _Parser:
    parser = _Parser(prog="orbitkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="spectral decomposition of a Hermitian matrix file")
    p.add_argument("file")
    p.add_argument("--cluster-tol", type=float, default=None, dest="cluster_tol")
    p.set_defaults(handler=_cmd_decompose, inputs=lambda a: [a.file])

    p = sub.add_parser("project", help="spectral projection via interpolation polynomial")
    p.add_argument("file")
    p.add_argument("--eig", type=int, required=True, help="block index; 0 is the kernel block")
    p.add_argument("--cluster-tol", type=float, default=None, dest="cluster_tol")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_project, inputs=lambda a: [a.file])

    p = sub.add_parser("affiliate", help="affiliated bases of a projection pair")
    p.add_argument("e_file")
    p.add_argument("f_file")
    p.set_defaults(handler=_cmd_affiliate, inputs=lambda a: [a.e_file, a.f_file])

    p = sub.add_parser("intertwine-proj", help="near-identity unitary mapping E to F")
    p.add_argument("e_file")
    p.add_argument("f_file")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_intertwine_proj, inputs=lambda a: [a.e_file, a.f_file])

    p = sub.add_parser("intertwine", help="near-identity unitary conjugating rho to rho'")
    p.add_argument("rho_file")
    p.add_argument("rho_prime_file")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--cluster-tol", type=float, default=None, dest="cluster_tol")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_intertwine, inputs=lambda a: [a.rho_file, a.rho_prime_file])

    p = sub.add_parser("distance", help="geodesic and trace distance of rank-1 projections")
    p.add_argument("p_file")
    p.add_argument("r_file")
    p.set_defaults(handler=_cmd_distance, inputs=lambda a: [a.p_file, a.r_file])

    p = sub.add_parser("moments", help="moment signature a_n = Tr(rho^(n+2))")
    p.add_argument("file")
    p.add_argument("-K", "--order", type=int, default=None, dest="order")
    p.add_argument("--cluster-tol", type=float, default=None, dest="cluster_tol")
    p.set_defaults(handler=_cmd_moments, inputs=lambda a: [a.file])

    p = sub.add_parser("same-orbit", help="double-certificate orbit membership test")
    p.add_argument("a_file")
    p.add_argument("b_file")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("-K", "--order", type=int, default=None, dest="order")
    p.add_argument("--cluster-tol", type=float, default=None, dest="cluster_tol")
    p.set_defaults(handler=_cmd_same_orbit, inputs=lambda a: [a.a_file, a.b_file])

    gen = sub.add_parser("gen", help="seeded fixture generators")
    gen_sub = gen.add_subparsers(dest="generator", required=True)

    p = gen_sub.add_parser("example", help="projection pair with closed-form spectral data")
    p.add_argument("--alpha", required=True, help="comma-separated overlap coefficients")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-prefix", default="example", dest="out_prefix")
    p.set_defaults(handler=_cmd_gen_example, inputs=lambda a: [])

    p = gen_sub.add_parser("orbit-pair", help="rho and u rho u* for a seeded near-identity u")
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--spectrum", required=True, help="l1:m1,l2:m2,... eigenvalue:multiplicity")
    p.add_argument("--perturb", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-prefix", default="orbit_pair", dest="out_prefix")
    p.set_defaults(handler=_cmd_gen_orbit_pair, inputs=lambda a: [])

    ver = sub.add_parser("verify", help="run the seeded invariant battery")
    ver_sub = ver.add_subparsers(dest="suite", required=True)
    p = ver_sub.add_parser("suite")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.set_defaults(handler=_cmd_verify_suite, inputs=lambda a: [])

    return parser


def _status_and_code(exc: Exception) -> tuple[str, int]:
    if isinstance(exc, FormatError):
        return "format-error", EXIT_FORMAT
    if isinstance(exc, (ToleranceAmbiguity, NonConvergence)):
        return "tolerance-ambiguity", EXIT_AMBIGUITY
    if isinstance(exc, HypothesisViolated):
        return "hypothesis-violated", EXIT_HYPOTHESIS
    if isinstance(exc, (_ArgumentError, ValueError, OSError)):
        return "format-error", EXIT_FORMAT
    return "error", EXIT_FAILURE


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    started = time.monotonic()
    command = " ".join(argv[:2]) if argv[:1] in (["gen"], ["verify"]) else (argv[0] if argv else "")
    try:
        args = parser.parse_args(argv)
        tol = active_tolerances()
        inputs = [file_digest(path) for path in args.inputs(args)]
        outputs = args.handler(args, tol)
    except Exception as exc:  # noqa: BLE001 - mapped to exit codes
        status, code = _status_and_code(exc)
        report = RunReport(
            command=command,
            inputs=[],
            outputs={"error": str(exc)},
            status=status,
            elapsed_ms=int((time.monotonic() - started) * 1000),
        )
        print(report.to_json())
        return code
    code = EXIT_OK
    if command == "verify suite" and not outputs.get("ok", True):
        code = EXIT_FAILURE
    report = RunReport(
        command=command,
        inputs=inputs,
        outputs=outputs,
        status="ok",
        elapsed_ms=int((time.monotonic() - started) * 1000),
    )
    print(report.to_json())
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
