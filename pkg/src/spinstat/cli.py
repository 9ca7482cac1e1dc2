"""Command-line front end.

Every subcommand prints one JSON envelope (or CSV rows with ``--format
csv``) on stdout.  Exit codes: 0 success, 1 domain error (serialized with
a machine-readable code), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import beam as beam_mod
from . import condprob as condprob_mod
from . import measurement, permstats, rotations, spin_algebra
from .errors import SpinstatError
from .exact import ExactScalar, format_scalar, parse_scalar
from .kets import Ket, index_of_m, spin_values

SCHEMA_VERSION = "1.0"

EXACT = "exact"
FLOAT = "float"


# ---------------------------------------------------------------------------
# serialization


def scalar_payload(value: Any, mode: str) -> Any:
    """Serialize exact values as {"exact": ..., "value": ...} pairs."""
    if isinstance(value, ExactScalar):
        if mode == FLOAT:
            return float(value)
        return {"exact": format_scalar(value), "value": float(value)}
    if isinstance(value, Fraction):
        if mode == FLOAT:
            return float(value)
        return {"exact": str(value), "value": float(value)}
    if isinstance(value, complex):
        return value.real if value.imag == 0 else {"re": value.real, "im": value.imag}
    return value


def _label_token(dim: int, index: int) -> str:
    if dim == 2:
        return "+" if index == 0 else "-"
    return str(spin_values(dim)[index])


def ket_payload(ket: Ket, mode: str) -> dict[str, Any]:
    amplitudes = {
        ",".join(_label_token(d, i) for d, i in zip(ket.dims, label)): scalar_payload(
            amp, mode
        )
        for label, amp in sorted(ket.amplitudes.items())
    }
    return {"dims": list(ket.dims), "amplitudes": amplitudes}


def coupled_payload(state: spin_algebra.CoupledState, mode: str) -> dict[str, Any]:
    return {
        "s": str(state.s),
        "m": str(state.m),
        "coefficients": {
            f"{m1},{m2}": scalar_payload(amp, mode)
            for (m1, m2), amp in sorted(state.amplitudes.items(), reverse=True)
        },
    }


def _flatten(prefix: str, value: Any, rows: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(value, list):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, rows)
    else:
        rows.append((prefix, "" if value is None else str(value)))


def emit(envelope: dict[str, Any], fmt: str) -> None:
    if fmt == "csv":
        rows: list[tuple[str, str]] = []
        _flatten("", envelope, rows)
        sys.stdout.write("key,value\n")
        for key, value in rows:
            value = value.replace('"', '""')
            sys.stdout.write(f'{key},"{value}"\n')
    else:
        sys.stdout.write(json.dumps(envelope, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# argument parsing helpers


def fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}") from exc


def angle_arg(text: str) -> Fraction:
    try:
        return measurement.parse_pi_angle(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def angle_list_arg(text: str) -> list[Fraction]:
    return [angle_arg(part) for part in text.split(",")]


def fraction_list_arg(text: str) -> list[Fraction]:
    return [fraction_arg(part) for part in text.split(",")]


def parse_state_sections(text: str) -> list[Ket]:
    """Parse the line-oriented ket format.

    Sections are separated by blank lines.  A section may start with
    ``dims d1 d2 ...``; the remaining lines are ``label amplitude`` pairs,
    the label being comma-joined per-slot tokens (``+``/``-`` for
    two-dimensional slots, projection fractions otherwise) and the
    amplitude an exact scalar such as ``-1/2*sqrt(2)``.  ``#`` starts a
    comment.
    """
    kets = []
    sections: list[list[str]] = [[]]
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            if sections[-1]:
                sections.append([])
            continue
        sections[-1].append(line)
    for lines in sections:
        if not lines:
            continue
        dims: tuple[int, ...] | None = None
        if lines[0].startswith("dims"):
            dims = tuple(int(tok) for tok in lines[0].split()[1:])
            lines = lines[1:]
        amps: dict[tuple[int, ...], ExactScalar] = {}
        for line in lines:
            label_text, _, amp_text = line.partition(" ")
            tokens = label_text.split(",")
            if dims is None:
                if not all(t in "+-" for t in tokens):
                    raise ValueError(
                        "sections with projection labels need a 'dims' header"
                    )
                dims = (2,) * len(tokens)
            label = []
            for token, dim in zip(tokens, dims):
                if token == "+" and dim == 2:
                    label.append(0)
                elif token == "-" and dim == 2:
                    label.append(1)
                else:
                    label.append(index_of_m(dim, Fraction(token)))
            amps[tuple(label)] = parse_scalar(amp_text)
        kets.append(Ket(dims, amps))
    return kets


def _read_states(path: str) -> list[Ket]:
    with open(path, encoding="utf-8") as fh:
        return parse_state_sections(fh.read())


# ---------------------------------------------------------------------------
# subcommand handlers


def cmd_state(args: argparse.Namespace) -> dict[str, Any]:
    ket = rotations.make_state(args.tag, j=args.j)
    payload: dict[str, Any] = {"tag": args.tag, **ket_payload(ket, args.mode)}
    if args.j is not None:
        payload["j"] = str(args.j)
    checks: dict[str, Any] = {}
    if args.check_invariance:
        inv = rotations.is_rotationally_invariant(
            ket, c=args.c, grid=args.grid, tol=args.tol
        )
        checks["rotational_invariance"] = {
            "invariant": inv.invariant,
            "max_deviation": scalar_payload(
                Fraction(0) if inv.max_deviation == 0 else inv.max_deviation, args.mode
            ),
            "c": str(args.c),
            "grid": args.grid,
        }
    if args.check_isc:
        isc = rotations.is_isc(ket, c=args.c, grid=args.grid, tol=args.tol)
        checks["isc"] = {
            "isc": isc.isc,
            "witness_angle": isc.witness_angle,
            "max_deviation": isc.max_deviation,
        }
    if args.decompose:
        decomposition = rotations.decompose_spin_j_singlet(args.j)
        checks["decomposition"] = {
            "pairs": [
                {"m": str(p.m), **ket_payload(p.ket, args.mode)}
                for p in decomposition.pairs
            ],
            "center": None
            if decomposition.center is None
            else ket_payload(decomposition.center, args.mode),
        }
    if checks:
        payload["checks"] = checks
    return payload


def _bell_payload(ev: measurement.BellEvaluation, mode: str) -> dict[str, Any]:
    return {
        "gaps": [measurement.format_pi_angle(g) for g in (ev.theta_ij, ev.theta_jk, ev.theta_ki)],
        "formula": ev.mode,
        "lhs": scalar_payload(ev.lhs, mode),
        "rhs": scalar_payload(ev.rhs, mode),
        "doubled_lhs": scalar_payload(ev.doubled_lhs, mode),
        "doubled_rhs": scalar_payload(ev.doubled_rhs, mode),
        "violated": ev.violated,
    }


def cmd_bell(args: argparse.Namespace) -> dict[str, Any]:
    if args.search:
        violations = measurement.search_violations(
            denominator=args.denominator, mode=args.formula
        )
        reference = (Fraction(1, 3), Fraction(1, 3), Fraction(2, 3))
        return {
            "search_denominator": args.denominator,
            "violations_found": len(violations),
            "contains_reference_gaps": any(v.gaps == reference for v in violations),
            "first_violations": [
                {
                    "angles": [measurement.format_pi_angle(a) for a in v.angles],
                    **_bell_payload(v.evaluation, args.mode),
                }
                for v in violations[:3]
            ],
        }
    if args.gaps is None or len(args.gaps) != 3:
        raise SpinstatError("bell needs --gaps with three comma-separated angles")
    ev = measurement.bell_inequality(*args.gaps, mode=args.formula)
    return _bell_payload(ev, args.mode)


def cmd_wigner(args: argparse.Namespace) -> dict[str, Any]:
    if len(args.angles) != 3:
        raise SpinstatError("wigner needs --angles with three comma-separated angles")
    report = measurement.wigner_argument(
        *args.angles, variant=args.variant, mode=args.formula
    )
    return {
        "variant": report.variant,
        "angles": [measurement.format_pi_angle(a) for a in args.angles],
        "subset_event": ["".join(o) for o in report.subset],
        "superset_event": ["".join(o) for o in report.superset],
        "subset_probability": scalar_payload(report.subset_probability, args.mode),
        "pair_events": {
            name: {
                "outcomes": ["".join(o) for o in outcomes],
                "probability": scalar_payload(p, args.mode),
            }
            for name, (outcomes, p) in report.pair_events.items()
        },
        "superset_probability": scalar_payload(report.superset_probability, args.mode),
        "consistent": report.consistent,
    }


def cmd_perm(args: argparse.Namespace) -> dict[str, Any]:
    if args.op == "energy":
        if args.levels is None or args.count is None:
            raise SpinstatError("perm energy needs --levels and --count")
        energy = permstats.ground_state_energy(args.levels, args.count)
        return {
            "op": "energy",
            "levels": [str(level) for level in args.levels],
            "count": args.count,
            "energy": scalar_payload(energy, args.mode),
        }
    if args.states is None:
        raise SpinstatError(f"perm {args.op} needs --states FILE")
    states = _read_states(args.states)
    if args.op in ("antisymmetrize", "symmetrize"):
        func = permstats.antisymmetrize if args.op == "antisymmetrize" else permstats.symmetrize
        return {"op": args.op, **ket_payload(func(states), args.mode)}
    if args.op == "classify":
        builder = {
            "fd": permstats.PermutationExpansion.fermi_dirac,
            "be": permstats.PermutationExpansion.bose_einstein,
            "mixed": permstats.PermutationExpansion.mixed,
        }[args.construction]
        result = permstats.classify_statistics(builder(states))
        return {"op": "classify", "construction": args.construction, "class": result.value}
    if args.op == "signature":
        signature = permstats.invariance_signature(states[0])
        return {
            "op": "signature",
            "signature": {
                str(p): ("none" if v is None else f"{v:+d}")
                for p, v in sorted(signature.items(), key=lambda kv: kv[0].image)
            },
        }
    raise SpinstatError(f"unknown perm op {args.op!r}")


def cmd_cg(args: argparse.Namespace) -> dict[str, Any]:
    if args.photon:
        table = spin_algebra.photon_pair_table()
        top = table[(Fraction(2), Fraction(2))]
        lowered = spin_algebra.ladder_apply("-", top)
        payload: dict[str, Any] = {"photon": True}
        payload["lowering_scale"] = scalar_payload(lowered.norm(), args.mode)
    else:
        if args.j1 is None or args.j2 is None:
            raise SpinstatError("cg needs --j1 and --j2 (or --photon)")
        table = spin_algebra.cg_decompose(args.j1, args.j2)
        payload = {"j1": str(args.j1), "j2": str(args.j2)}
    payload["rows"] = {
        f"{s},{m}": coupled_payload(state, args.mode)["coefficients"]
        for (s, m), state in sorted(table.items(), reverse=True)
    }
    return payload


def cmd_algebra(args: argparse.Namespace) -> dict[str, Any]:
    check = spin_algebra.verify_rescaled_algebra(args.n, args.j)
    return {
        "n": check.n,
        "j": str(check.j),
        "max_commutator_residual": check.max_residual,
        "ladder_product_identity": check.ladder_product_identity,
        "holds": check.holds,
    }


def cmd_condprob(args: argparse.Namespace) -> dict[str, Any]:
    if args.prior is None:
        raise SpinstatError("condprob needs --prior p(+1),p(0),p(-1)")
    if len(args.prior) != 3:
        raise SpinstatError("--prior needs exactly three probabilities")
    dist = condprob_mod.SpinDistribution(
        Fraction(1), dict(zip((Fraction(1), Fraction(0), Fraction(-1)), args.prior))
    )
    payload: dict[str, Any] = {
        "prior": {str(m): scalar_payload(p, args.mode) for m, p in dist.probabilities.items()},
        "total": str(args.total),
    }
    if args.compare_cg:
        comparison = condprob_mod.compare_with_cg(dist, args.total, s=args.s)
        payload["table"] = {
            f"{m1},{m2}": scalar_payload(p, args.mode)
            for (m1, m2), p in sorted(comparison.conditional.items(), reverse=True)
        }
        payload["cg_comparison"] = {
            "s": str(comparison.s),
            "squares": {
                f"{m1},{m2}": scalar_payload(p, args.mode)
                for (m1, m2), p in sorted(comparison.cg_squares.items(), reverse=True)
            },
            "max_deviation": scalar_payload(comparison.max_deviation, args.mode),
            "matches": comparison.matches,
        }
    else:
        table = condprob_mod.conditional_given_total(dist, dist, args.total)
        payload["table"] = {
            f"{m1},{m2}": scalar_payload(p, args.mode)
            for (m1, m2), p in sorted(table.items(), reverse=True)
        }
    return payload


def cmd_beam(args: argparse.Namespace) -> dict[str, Any]:
    config = beam_mod.BeamConfig(args.atoms, args.hypothesis, args.seed)
    result = beam_mod.simulate_beam(config)
    payload: dict[str, Any] = {
        "atoms": config.n_atoms,
        "hypothesis": config.hypothesis,
        "seed": config.seed,
        "counts": {(f"{v:+d}" if v else "0"): c for v, c in result.counts.items()},
        "proportions": {(f"{v:+d}" if v else "0"): p for v, p in result.proportions.items()},
    }
    if args.test_null:
        report = beam_mod.chi_square_discriminate(
            result, args.test_null, critical=args.critical
        )
        payload["chi_square"] = {
            "null": report.null_hypothesis,
            "statistic": report.statistic,
            "degrees_of_freedom": report.degrees_of_freedom,
            "critical": report.critical,
            "p_value": report.p_value,
            "reject": report.reject,
        }
    return payload


# ---------------------------------------------------------------------------
# parser


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--mode", choices=(EXACT, FLOAT), default=EXACT)
    parser.add_argument(
        "--seed",
        type=int,
        default=int(os.environ.get("SPINSTAT_SEED", "0")),
        help="seed for randomized subcommands (default: SPINSTAT_SEED or 0)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinstat",
        description="Spin-pair states, Bell inequality, permutation statistics, "
        "coupling tables, and beam simulation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("state", help="build a cataloged state and run checks")
    p.add_argument("tag", choices=rotations.STATE_TAGS)
    p.add_argument("--j", type=fraction_arg, default=None, help="spin for spin_j_singlet")
    p.add_argument("--check-invariance", action="store_true")
    p.add_argument("--check-isc", action="store_true")
    p.add_argument("--decompose", action="store_true", help="two-level components (spin_j_singlet)")
    p.add_argument("--c", type=fraction_arg, default=Fraction(1, 2), help="rotation rate")
    p.add_argument("--grid", type=int, default=360)
    p.add_argument("--tol", type=float, default=1e-12)
    _add_common(p)
    p.set_defaults(handler=cmd_state)

    p = sub.add_parser("bell", help="evaluate the angle-gap inequality")
    p.add_argument("--gaps", type=angle_list_arg, default=None, help="e.g. pi/3,pi/3,2pi/3")
    p.add_argument("--formula", choices=("half", "full"), default="half")
    p.add_argument("--search", action="store_true", help="scan the angle grid")
    p.add_argument("--denominator", type=int, default=12, help="grid step pi/denominator")
    _add_common(p)
    p.set_defaults(handler=cmd_bell)

    p = sub.add_parser("wigner", help="three-angle set-inclusion argument")
    p.add_argument("--angles", type=angle_list_arg, required=True, help="e.g. 0,pi/3,2pi/3")
    p.add_argument("--variant", choices=("same-state", "singlet-inclusive"), default="same-state")
    p.add_argument("--formula", choices=("half", "full"), default="half")
    _add_common(p)
    p.set_defaults(handler=cmd_wigner)

    p = sub.add_parser("perm", help="permutation sums and classification")
    p.add_argument("op", choices=("antisymmetrize", "symmetrize", "classify", "signature", "energy"))
    p.add_argument("--states", default=None, help="state spec file")
    p.add_argument("--construction", choices=("fd", "be", "mixed"), default="fd")
    p.add_argument("--levels", type=fraction_list_arg, default=None)
    p.add_argument("--count", type=int, default=None)
    _add_common(p)
    p.set_defaults(handler=cmd_perm)

    p = sub.add_parser("cg", help="coupling tables")
    p.add_argument("--j1", type=fraction_arg, default=None)
    p.add_argument("--j2", type=fraction_arg, default=None)
    p.add_argument("--photon", action="store_true", help="two-valued pair via n=2 ladders")
    _add_common(p)
    p.set_defaults(handler=cmd_cg)

    p = sub.add_parser("algebra", help="rescaled commutator residuals")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=fraction_arg, required=True)
    _add_common(p)
    p.set_defaults(handler=cmd_algebra)

    p = sub.add_parser("condprob", help="conditional spin-sum tables")
    p.add_argument("--prior", type=fraction_list_arg, default=None)
    p.add_argument("--total", type=int, default=0)
    p.add_argument("--compare-cg", action="store_true")
    p.add_argument("--s", type=int, default=2)
    _add_common(p)
    p.set_defaults(handler=cmd_condprob)

    p = sub.add_parser("beam", help="simulate a beam and test a null")
    p.add_argument("--atoms", type=int, required=True)
    p.add_argument("--hypothesis", choices=("uniform", "paper"), default="paper")
    p.add_argument("--test-null", choices=("uniform", "paper"), default=None)
    p.add_argument("--critical", type=float, default=beam_mod.DEFAULT_CRITICAL)
    _add_common(p)
    p.set_defaults(handler=cmd_beam)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    envelope: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "mode": getattr(args, "mode", EXACT),
    }
    try:
        envelope["payload"] = args.handler(args)
    except SpinstatError as exc:
        envelope["error"] = {"code": exc.code, "message": str(exc)}
        emit(envelope, getattr(args, "format", "json"))
        return 1
    except OSError as exc:
        envelope["error"] = {"code": "io-error", "message": str(exc)}
        emit(envelope, getattr(args, "format", "json"))
        return 1
    emit(envelope, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
