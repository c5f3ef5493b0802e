"""
Command-line front end: resumable file-backed stages from curve analysis
through sieving and linear algebra to the rank report.

Exit codes: 1 usage or bad input, 2 data inconsistency (hash mismatch),
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import math
import sys

import mpmath

from . import io
from .analytic import AnalyticBoundParams, PrimeBudgetError, analytic_rank_bound, \
    arithmetic_term, archimedean_term, conductor_term
from .classgroup import CertificationError, build_matrix, selmer_lower_bound, \
    upper_bound_2rank
from .cubic import BinaryCubicForm, CubicField, bach_bound, build_factor_base, \
    julia_reduce, maximalize, remove_index
from .elliptic import SingularCurveError, conductor, invariants, tate_local, \
    two_division_cubic, verify_point
from .numeric import is_prime, primes_below
from .planner import SievePlan, alpha_bits, choose_skew, estimate_relations, \
    make_plan, murphy_alpha
from .sieve import RelationSet, SieveBudgetError, line_sieve, rational_relations, \
    targeted_relations, trial_factor


class UsageError(ValueError):
    pass


def _parse_form(text: str) -> BinaryCubicForm:
    parts = text.replace(",", " ").split()
    if len(parts) != 4:
        raise UsageError("a form needs exactly four coefficients c3 c2 c1 c0")
    return BinaryCubicForm(*(int(p) for p in parts))


def _parse_factors(text: str):
    out = []
    for tok in text.split(","):
        p, _, e = tok.partition(":")
        out.append((int(p), int(e) if e else 1))
    return out


def _bad_primes(curve, extra, bound=10 ** 6):
    if "bad_primes" in extra:
        return extra["bad_primes"]
    d = abs(curve.discriminant())
    found = []
    for p in primes_below(bound):
        if d % p == 0:
            found.append(p)
            while d % p == 0:
                d //= p
    if d != 1:
        raise UsageError(
            "discriminant has prime factors beyond the trial bound; "
            "supply bad_primes in the curve file"
        )
    return tuple(found)


def cmd_curve_analyze(args):
    curve, extra = io.read_curve_file(args.curve)
    b2, b4, b6, b8, disc = invariants(curve)
    print(f"curve a-invariants = {curve.ainvs()}")
    print(f"b-invariants = {(b2, b4, b6, b8)}  # from a-invariants")
    print(f"disc = {disc}  # standard discriminant formula")
    bad = _bad_primes(curve, extra)
    print(f"bad_primes = {','.join(str(p) for p in bad)}  # input or trial factoring")
    ncond = 1
    for p in bad:
        local = tate_local(curve, p)
        ncond *= p ** local.conductor_exponent
        print(
            f"local p={p}: type={local.reduction_type} kodaira={local.kodaira} "
            f"ord_disc={local.ord_p_disc} f={local.conductor_exponent} a_p={local.a_p}"
        )
    print(f"conductor = {ncond}  # product of p^f over listed bad primes")
    try:
        cubic = two_division_cubic(curve)
        print(f"two_division_cubic = {cubic}  # (4, b2, 2*b4, b6)")
    except ValueError as e:
        print(f"two_division_cubic = unavailable ({e})")
    return 0


def cmd_analytic_bound(args):
    curve, extra = io.read_curve_file(args.curve)
    nconductor = args.conductor or extra.get("conductor")
    if nconductor is None:
        raise UsageError("conductor unknown: pass --conductor or set it in the file")
    eps = args.root_number if args.root_number is not None else extra.get("root_number")
    cache = io.read_ap_cache(args.ap_cache) if args.ap_cache else {}
    params = AnalyticBoundParams(
        delta=args.delta,
        conductor=int(nconductor),
        root_number=eps,
        bad_primes=_bad_primes(curve, extra),
        ap_cache=cache,
        prime_budget=args.prime_budget,
    )
    g = arithmetic_term(curve, params)
    u = archimedean_term(params.delta)
    n = conductor_term(params.conductor, params.delta)
    raw, refined = analytic_rank_bound(curve, params)
    print(f"delta = {args.delta}")
    print(f"arithmetic_term = {mpmath.nstr(g, 12)}  # prime sum to exp(2*delta*pi)")
    print(f"archimedean_term = {mpmath.nstr(u, 12)}  # closed form")
    print(f"conductor_term = {mpmath.nstr(n, 12)}  # log(sqrt(N)/2pi)/(delta*pi)")
    print(f"zero_sum_bound = {mpmath.nstr(raw, 12)}  # conditional on GRH")
    if refined is not None:
        print(f"parity_refined_bound = {refined}  # root number {eps}")
    return 0


def cmd_field_reduce(args):
    if args.form:
        form = _parse_form(args.form)
    else:
        curve, extra = io.read_curve_file(args.curve)
        form = BinaryCubicForm(*two_division_cubic(curve))
    print(f"input_form = {form.coeffs}")
    print(f"input_disc = {form.disc()}")
    if args.disc_factors:
        field = maximalize(form, _parse_factors(args.disc_factors))
    elif args.index_primes:
        field = CubicField.from_maximal_form(
            julia_reduce(remove_index(form, [int(p) for p in args.index_primes.split(",")]))
        )
    else:
        field = CubicField.from_maximal_form(julia_reduce(form))
    print(f"reduced_form = {field.form.coeffs}")
    print(f"field_disc = {field.disc}")
    print(f"signature = {field.signature}")
    print(f"bach_bound = {bach_bound(field)}  # floor(12 ln^2 |disc|)")
    return 0


def cmd_factor_base(args):
    form = _parse_form(args.form)
    field = CubicField.from_maximal_form(form)
    bound = args.bound or bach_bound(field)
    base = build_factor_base(field, bound, jobs=args.jobs)
    h = io.write_factor_base(args.out, base)
    print(f"bound = {bound}")
    print(f"degree_one_primes = {len(base)}  # factor base entries")
    print(f"rational_primes_scanned = {base.rational_prime_count}  # primes below bound")
    print(f"factor_base_file = {args.out} (hash {h})")
    return 0


def cmd_sieve_plan(args):
    form = _parse_form(args.form)
    skew = choose_skew(form)
    print(f"skew = 2^{mpmath.nstr(mpmath.log(skew, 2), 8)}")
    alpha = murphy_alpha(form, args.alpha_cutoff)
    print(f"alpha = {mpmath.nstr(alpha, 6)}  # natural log; {alpha_bits(alpha):.4f} bits")
    if args.region_bits:
        plan = make_plan(form, args.bound, args.region_bits, args.alpha_cutoff)
        exact = None
        if args.table1_exact:
            exact = tuple(float(x) for x in args.table1_exact.split(","))
        est = estimate_relations(plan, args.shell_width, exact)
        print(f"region_bits = {args.region_bits}")
        print(f"a_bound = {plan.a_bound}")
        print(f"b_bound = {plan.b_bound}")
        print(f"estimated_relations = {int(round(float(est)))}")
    return 0


def cmd_sieve_run(args):
    base, h = io.read_factor_base(args.fb)
    rels = RelationSet(base)
    n_sieved = 0
    for a, b in line_sieve(base, args.a_bound, args.b_bound, args.threshold):
        rel = trial_factor(base, a, b)
        if rel is not None and rels.add(rel):
            n_sieved += 1
    n_rat = rels.extend(rational_relations(base, base.bound))
    n_targ = 0
    for p in args.targeted or []:
        n_targ += rels.extend(targeted_relations(base, int(p), args.targeted_count))
    io.write_relations(args.out, rels, h)
    print(f"sieved_relations = {n_sieved}  # region [-{args.a_bound},{args.a_bound}] x [1,{args.b_bound}]")
    print(f"rational_relations = {n_rat}  # completely split primes")
    print(f"targeted_relations = {n_targ}")
    print(f"relation_file = {args.out} (factor base {h})")
    return 0


def cmd_classgroup_upper(args):
    base, h = io.read_factor_base(args.fb)
    rels = io.read_relations(args.relations, base, h)
    belabas = args.belabas or bach_bound(base.field)
    nullity, (pruned, kept_cols, kept_rows, *_rest) = _upper_with_details(
        base, rels, belabas
    )
    if args.matrix_out:
        io.write_matrix(args.matrix_out, pruned, h)
    print(f"relations = {len(rels)}")
    print(f"protected_bound = {belabas}  # generation bound (GRH)")
    print(f"pruned_matrix = {pruned.nrows} x {pruned.ncols}")
    print(f"upper_bound_2rank = {nullity}  # conditional on GRH")
    return 0


def _upper_with_details(base, rels, belabas):
    nullity, details = upper_bound_2rank(base, rels, belabas)
    return nullity, details


def cmd_classgroup_lower(args):
    base, h = io.read_factor_base(args.fb)
    rels = io.read_relations(args.relations, base, h)
    count, cert = selmer_lower_bound(base, rels, args.aux_budget, args.row_limit)
    r1, r2 = base.field.signature
    lower = max(0, count - (r1 + r2))
    print(f"independent_selmer_elements = {count}  # certified by character matrix")
    print(f"character_primes = {len(cert.aux_primes)}")
    print(f"unit_contribution = {r1 + r2}  # r1 + r2")
    print(f"lower_bound_2rank = {lower}  # unconditional")
    if args.certificate_out:
        _write_certificate(args.certificate_out, cert)
        print(f"certificate_file = {args.certificate_out}")
    return 0


def _write_certificate(path, cert):
    lines = [f"rank = {cert.rank}", "begin aux_primes"]
    lines += [f"{q} {r}" for q, r in cert.aux_primes]
    lines.append("end aux_primes")
    lines.append("begin candidates")
    for vec, bits in zip(cert.candidate_vectors, cert.character_bits):
        lines.append(f"{vec:x} {bits:x}")
    lines.append("end candidates")
    from pathlib import Path

    Path(path).write_text("\n".join(lines) + "\n")


def cmd_rank_report(args):
    from .cubic import CubicField
    from .rankbounds import BKTerms, compute_bk_terms, rank_report, selmer_upper_bound

    curve, extra = io.read_curve_file(args.curve)
    eps = args.root_number if args.root_number is not None else extra.get("root_number")
    known = args.known_rank if args.known_rank is not None else extra.get("known_rank")
    if args.field_form:
        field = CubicField.from_maximal_form(_parse_form(args.field_form))
    else:
        raise UsageError("pass --field-form (the reduced maximal form of the field)")
    terms = compute_bk_terms(
        curve, _bad_primes(curve, extra), field,
        root_number=eps, known_rank_lower=known, g=args.g,
    )
    print(f"phi_m = {','.join(str(p) for p in terms.phi_m) or '-'}  # even-ord multiplicative")
    print(f"phi_a = {','.join(f'{p}:{np}' for p, np in terms.phi_a) or '-'}  # additive, primes above")
    print(f"u = {terms.u}  # sign of curve discriminant")
    print(f"n = {terms.n}  # |phi_m| + sum (n_p - 1)")
    report = rank_report(terms)
    print(f"g = {terms.g}  # class group 2-rank bound (input)")
    print(f"selmer_upper = {report.selmer_upper}  # g+u+n with parity refinement")
    if report.rank_lower is not None:
        print(f"known_rank_lower = {report.rank_lower}")
        print(f"g_reverse_lower = {report.g_lower}  # known_rank - u - n")
    print(f"status = {report.status}")
    return 0


def cmd_verify_points(args):
    curve, _ = io.read_curve_file(args.curve)
    n_ok = 0
    total = 0
    from pathlib import Path

    for line in Path(args.points).read_text().splitlines():
        line = line.strip().strip("(),")
        if not line or line.startswith("#"):
            continue
        x, y = (s.strip() for s in line.split(","))
        total += 1
        if verify_point(curve, int(x), int(y)):
            n_ok += 1
        else:
            print(f"FAIL: ({x}, {y})")
    print(f"points_verified = {n_ok} / {total}")
    return 0 if n_ok == total else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="ranksieve")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curve-analyze", help="invariants and local reduction data")
    p.add_argument("--curve", required=True)
    p.set_defaults(func=cmd_curve_analyze)

    p = sub.add_parser("analytic-bound", help="explicit-formula rank bound")
    p.add_argument("--curve", required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--conductor", type=int)
    p.add_argument("--root-number", type=int, choices=(-1, 1))
    p.add_argument("--ap-cache")
    p.add_argument("--prime-budget", type=int, default=10 ** 7)
    p.set_defaults(func=cmd_analytic_bound)

    p = sub.add_parser("field-reduce", help="reduce a form / extract the 2-division field")
    p.add_argument("--form")
    p.add_argument("--curve")
    p.add_argument("--disc-factors", help="complete factorization p:e,p:e,... of disc")
    p.add_argument("--index-primes", help="primes where the form may be non-maximal")
    p.set_defaults(func=cmd_field_reduce)

    p = sub.add_parser("factor-base", help="degree-one prime ideals below a bound")
    p.add_argument("--form", required=True)
    p.add_argument("--bound", type=int)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_factor_base)

    p = sub.add_parser("sieve-plan", help="skew, alpha, and yield estimates")
    p.add_argument("--form", required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--region-bits", type=float)
    p.add_argument("--shell-width", type=float, default=0.25)
    p.add_argument("--alpha-cutoff", type=int, default=2000)
    p.add_argument("--table1-exact", help="base,step,log2bound constants")
    p.set_defaults(func=cmd_sieve_plan)

    p = sub.add_parser("sieve-run", help="line sieve a rectangle into relations")
    p.add_argument("--fb", required=True)
    p.add_argument("--a-bound", type=int, required=True)
    p.add_argument("--b-bound", type=int, required=True)
    p.add_argument("--threshold", type=float, default=20.0)
    p.add_argument("--targeted", nargs="*", help="primes p for extra b=p lines")
    p.add_argument("--targeted-count", type=int, default=4)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sieve_run)

    p = sub.add_parser("classgroup-upper", help="GRH upper bound for the 2-rank")
    p.add_argument("--fb", required=True)
    p.add_argument("--relations", required=True)
    p.add_argument("--belabas", type=int)
    p.add_argument("--matrix-out")
    p.set_defaults(func=cmd_classgroup_upper)

    p = sub.add_parser("classgroup-lower", help="unconditional lower bound")
    p.add_argument("--fb", required=True)
    p.add_argument("--relations", required=True)
    p.add_argument("--aux-budget", type=int, default=48)
    p.add_argument("--row-limit", type=int)
    p.add_argument("--certificate-out")
    p.set_defaults(func=cmd_classgroup_lower)

    p = sub.add_parser("rank-report", help="Selmer bound assembly")
    p.add_argument("--curve", required=True)
    p.add_argument("--field-form", required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--root-number", type=int, choices=(-1, 1))
    p.add_argument("--known-rank", type=int)
    p.set_defaults(func=cmd_rank_report)

    p = sub.add_parser("verify-points", help="check listed points lie on the curve")
    p.add_argument("--curve", required=True)
    p.add_argument("--points", required=True)
    p.set_defaults(func=cmd_verify_points)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        return args.func(args)
    except (UsageError, ValueError, FileNotFoundError, SingularCurveError) as e:
        if isinstance(e, io.HashMismatchError):
            print(f"error: {e}", file=sys.stderr)
            return 2
        if isinstance(e, (SieveBudgetError, PrimeBudgetError)):
            print(f"error: {e}", file=sys.stderr)
            return 3
        print(f"error: {e}", file=sys.stderr)
        return 1
    except CertificationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
