"""Acceptance criteria as callable checks returning (passed, detail).

Each check is seeded and exact.  ``run_all`` drives the ``selftest`` CLI command
and the acceptance test module.
"""
from __future__ import annotations

import contextlib
import io
import random
from fractions import Fraction
from typing import Callable

from .algebra import dual_numbers, matrix_algebra, rationals, truncated_polynomials, upper_triangular
from .hallbasis import HallBasis, lie_rank
from .ncpoly import CommPoly, LocalizedElement, NCPoly, abelianize, parse_comm, parse_nc, random_ncpoly
from .pbw import (BracketMonomial, FormalSection, OperatorTable, PBWElement, enumerate_monomials,
                  check_associativity_constraint, extract_C_operator, filtration_degree,
                  formal_section_mul, pbw_expand, pbw_normalize, truncated_mul)
from .quiver import Quiver, enumerate_dimvectors, euler_form, euler_form_extended, extend_quiver, random_quiver, random_rep
from .repscheme import Presentation, RepPoint, conjugate, is_representation, random_invertible, relation_ideal
from .rootalg import (effective_generators, lower, raise_, random_matrix_map, random_root_map,
                      root_presentation)
from .strata import (SemisimpleType, build_tilde_rep, check_theta_stability, enumerate_substrata,
                     local_quiver, multiset_count, partitions, tilde_from_maps)

Result = tuple[bool, str]


def criterion_1() -> Result:
    sizes2 = tuple(len(HallBasis(2, 6).layer(k)) for k in range(1, 7))
    ok = sizes2 == (2, 1, 2, 3, 6, 9) and all(sizes2[k - 1] == lie_rank(2, k) for k in range(1, 7))
    b3 = HallBasis(3, 5)
    sizes3 = tuple(len(b3.layer(k)) for k in range(1, 6))
    ok &= all(sizes3[k - 1] == lie_rank(3, k) for k in range(1, 6))
    return ok, f"d=2 {sizes2}, d=3 {sizes3}"


def criterion_2(samples: int = 500, seed: int = 0) -> Result:
    rng = random.Random(seed)
    bases = {d: HallBasis(d, 5) for d in (1, 2, 3)}
    bad = 0
    for _ in range(samples):
        d = rng.randint(1, 3)
        p = random_ncpoly(d, 5, rng)
        if pbw_expand(pbw_normalize(p, bases[d])) != p:
            bad += 1
    return bad == 0, f"{samples - bad}/{samples} exact round trips"


def criterion_3() -> Result:
    B = HallBasis(2, 3)
    got = pbw_normalize(parse_nc("x2*x2*x1", 2), B)
    c21 = B.find(1, 0)
    c212 = B.find(c21, 1)
    want = (PBWElement.block(B, parse_comm("x1*x2^2", 2))
            + PBWElement.block(B, parse_comm("2*x2", 2), [c21])
            + PBWElement.block(B, parse_comm("1", 2), [c212]))
    return got == want, repr(got)


def _random_pbw(B: HallBasis, max_degree: int, rng) -> PBWElement:
    return pbw_normalize(random_ncpoly(B.d, max_degree, rng, max_terms=3), B)


def criterion_4(samples: int = 200, seed: int = 0) -> Result:
    rng = random.Random(seed)
    B = HallBasis(2, 9)
    bad = 0
    for t in range(samples):
        K = 1 + t % 4
        a, b, c = (_random_pbw(B, 3, rng) for _ in range(3))
        if truncated_mul(truncated_mul(a, b, K), c, K) != truncated_mul(a, truncated_mul(b, c, K), K):
            bad += 1
        comm = abelianize(pbw_expand(a)) * abelianize(pbw_expand(b))
        if truncated_mul(a, b, 1) != PBWElement.block(B, comm):
            bad += 1
    return bad == 0, f"{bad} failures over {samples} triples, K = 1..4"


def _sample_polys(d: int, rng, count: int, max_degree: int = 3) -> list:
    out = []
    for _ in range(count):
        p = random_ncpoly(d, max_degree, rng, max_terms=3)
        out.append(abelianize(p))
    return out


def criterion_5(samples: int = 50, seed: int = 0) -> Result:
    B = HallBasis(2, 4)
    c21 = B.find(1, 0)
    empty = BracketMonomial.empty()
    nu = BracketMonomial.of(B, [c21])
    op = extract_C_operator(B, empty, empty, nu, 5)
    single = op.stabilized and len(op.terms) == 1 and op.terms[0][1:] == ((0, 1), (1, 0)) \
        and op.terms[0][0] == CommPoly.constant(2)
    rng = random.Random(seed)
    table = OperatorTable(B)
    triples = [tuple(_sample_polys(2, rng, 3)) for _ in range(samples)]
    mons = enumerate_monomials(B, 2)
    checked = failed = 0
    for nu in mons:
        for l1 in mons:
            for l2 in mons:
                for l3 in mons:
                    if l1.ord + l2.ord + l3.ord > nu.ord:
                        continue
                    checked += 1
                    if not check_associativity_constraint(table, l1, l2, l3, nu, triples):
                        failed += 1
    return single and failed == 0, (f"C = {op.describe()}; associativity {checked - failed}/{checked} "
                                    f"(lambda, nu) combinations on {samples} triples")


def criterion_6(samples: int = 100, seed: int = 0) -> Result:
    rng = random.Random(seed)
    B = HallBasis(2, 6)
    table = OperatorTable(B)
    one = CommPoly.constant(2)
    bad = 0
    for t in range(samples):
        K = 1 + t % 3
        a, b = _random_pbw(B, 3, rng).truncate(K), _random_pbw(B, 3, rng).truncate(K)
        got = formal_section_mul(FormalSection.from_pbw(a, one, K), FormalSection.from_pbw(b, one, K), table)
        if got != FormalSection.from_pbw(truncated_mul(a, b, K), one, K):
            bad += 1
    x1 = parse_comm("x1", 2)
    sa = FormalSection(B, x1, 2, {BracketMonomial.empty(): parse_comm("x2", 2)})
    sb = FormalSection(B, x1, 2, {BracketMonomial.empty(): LocalizedElement(one, 1, x1)})
    got = formal_section_mul(sa, sb, table)
    want = FormalSection(B, x1, 2, {BracketMonomial.empty(): LocalizedElement(parse_comm("x2", 2), 1, x1),
                                    BracketMonomial.of(B, [B.find(1, 0)]): LocalizedElement(-one, 2, x1)})
    return bad == 0 and got == want, f"{samples - bad}/{samples} oracle matches; example -> {got!r}"


def criterion_7(samples: int = 200, seed: int = 0) -> Result:
    B = HallBasis(2, 8)
    c = "x2*x1 - x1*x2"
    examples = [("x1", 0), (c, 1), (f"x2*x1*x2*x1 - x2*x1*x1*x2 - x1*x2*x2*x1 + x1*x2*x1*x2", 2),
                ("x2*x1*x1 - 2*x1*x2*x1 + x1*x1*x2", 2)]
    ok = all(filtration_degree(parse_nc(p, 2), B) == v for p, v in examples)
    rng = random.Random(seed)
    bad = 0
    for _ in range(samples):
        p, q = random_ncpoly(2, 3, rng, 3), random_ncpoly(2, 3, rng, 3)
        if rng.random() < 0.5:
            p = p * parse_nc(c, 2)
        if filtration_degree(p * q, B) < filtration_degree(p, B) + filtration_degree(q, B):
            bad += 1
    return ok and bad == 0, f"worked values ok={ok}; {bad} multiplicativity failures in {samples}"


def criterion_8(samples: int = 100, seed: int = 0) -> Result:
    rng = random.Random(seed)
    algebras = (matrix_algebra(2), truncated_polynomials(3), upper_triangular(2))
    pres = [root_presentation("free", n, d=d) for d in (1, 2) for n in (1, 2, 3)]
    pres += [root_presentation("path", n, quiver=Q) for n in (1, 2) for Q in
             (Quiver.loops(2), Quiver(2, ()), Quiver(2, ((1, 2),)), Quiver(3, ((1, 2), (2, 3), (3, 3))))]
    free, path = pres[:6], pres[6:]
    bad = 0
    for B in algebras:
        for family in (free, path):
            for t in range(samples):
                P = family[t % len(family)]
                phi = random_matrix_map(P, B, rng)
                psi = random_root_map(P, B, rng)
                if raise_(lower(phi)) != phi or lower(raise_(psi)) != psi:
                    bad += 1
    counts = all(len(root_presentation("free", n, d=d).generators) == d * n * n
                 for d in (1, 2, 3) for n in (1, 2, 3))
    loops = all(effective_generators(root_presentation("path", n, quiver=Quiver.loops(2))) == 2 * n * n
                for n in (1, 2, 3))
    return bad == 0 and counts and loops, (f"{bad} round-trip failures over {6 * samples} samples; "
                                           f"free counts {counts}; 2n^2 arrow generators {loops}")


def criterion_9(samples: int = 100, seed: int = 0) -> Result:
    rng = random.Random(seed)
    bad = 0
    for _ in range(samples):
        Q = random_quiver(rng, 4, 5)
        n = rng.randint(1, 5)
        a = [rng.randint(0, 3) for _ in range(Q.k + 1)]
        b = [rng.randint(0, 3) for _ in range(Q.k + 1)]
        if euler_form_extended(Q, n)(a, b) != euler_form(extend_quiver(Q, n).quiver)(a, b):
            bad += 1
    worked = euler_form_extended(Quiver.loops(2), 2)((1, 2), (1, 2))
    return bad == 0 and worked == -7, f"{bad} mismatches; worked value {worked}"


def criterion_10() -> Result:
    ok = True
    for d in (1, 2, 3):
        for n in (1, 2, 3, 4):
            t = SemisimpleType((1,), ((n,),))
            ok &= local_quiver(t, n, Quiver.loops(d)).counts == ((d * n * n,),)
    pair = local_quiver(SemisimpleType((1, 1), ((2,), (2,))), 2, Quiver.loops(2)).counts
    return ok and pair == ((8, 7), (7, 8)), f"d*n^2 loops ok={ok}; lambda=(1,1) counts {pair}"


def criterion_11() -> Result:
    two = enumerate_substrata(2, 2, Quiver.loops(2))
    p_of_m = (1, 2, 3, 5, 7, 11)
    parts_ok = tuple(len(partitions(m)) for m in range(1, 7)) == p_of_m
    A = Quiver(2, ())
    subs = enumerate_substrata(2, 2, A)
    pairs = sum(1 for t in subs if t.partition == (1, 1))
    formula = len(subs) == multiset_count(2, len(enumerate_dimvectors(2, 2)))
    ok = len(two) == 2 and parts_ok and pairs == 6 and formula
    return ok, (f"loops: {len(two)} substrata; p(m) ok={parts_ok}; arrowless: {pairs} multiset pairs, "
                f"{len(subs)} in total = formula {formula}")


def criterion_12(samples: int = 100, seed: int = 0) -> Result:
    rng = random.Random(seed)
    bad = 0
    for _ in range(samples):
        Q = random_quiver(rng, 3, 4)
        n = rng.randint(1, 4)
        alpha = rng.choice(enumerate_dimvectors(Q.k, n))
        if not check_theta_stability(build_tilde_rep(random_rep(Q, alpha, rng), n)):
            bad += 1
    S = random_rep(Quiver.loops(2), (2,), rng)
    zero = tilde_from_maps(S, 2, [[[0, 0], [0, 0]]])
    counter = check_theta_stability(zero)
    return bad == 0 and counter is False, f"{bad} unstable tilde reps; zero x-arrows -> {counter}"


def criterion_13(samples: int = 100, seed: int = 0) -> Result:
    P = Presentation(2, (parse_nc("x1*x2 - x2*x1", 2),))
    ideal = relation_ideal(P, 2)
    polys = dict(ideal.polynomials)
    trace = len(ideal.polynomials) == 4 and (polys["f1_11"] + polys["f1_22"]).is_zero()
    F = Fraction
    diag = RepPoint(([[F(1), F(0)], [F(0), F(2)]], [[F(3), F(0)], [F(0), F(-1)]]))
    elem = RepPoint(([[F(0), F(1)], [F(0), F(0)]], [[F(0), F(0)], [F(1), F(0)]]))
    points = is_representation(P, diag) and not is_representation(P, elem)
    rng = random.Random(seed)
    bad = 0
    for _ in range(samples):
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        g = random_invertible(2, rng)
        base = RepPoint(([[F(a), F(0)], [F(0), F(b)]], [[F(b), F(0)], [F(0), F(a)]]))
        if not is_representation(P, conjugate(base, g)):
            bad += 1
        if is_representation(P, conjugate(elem, g)):
            bad += 1
    return trace and points and bad == 0, f"4 polys, trace zero={trace}; points ok={points}; {bad} failures"


def cli_determinism(seed: int = 0) -> Result:
    from .cli import main
    commands = [["hall-basis", "--d", "2", "--weight", "4"],
                ["pbw-normalize", "--d", "2", "x2*x2*x1"],
                ["root-roundtrip", "--free", "2", "2", "--samples", "5", "--seed", str(seed)],
                ["check-localization", "--quiver-inline", '{"vertices": 2, "arrows": [[1, 2]]}',
                 "--n", "2", "--seed", str(seed)],
                ["strata", "--quiver-inline", '{"vertices": 1, "arrows": [[1, 1], [1, 1]]}',
                 "--n", "2", "--m", "2"]]
    for argv in commands:
        outs = []
        for _ in range(2):
            buf = io.StringIO()
            with contextlib.redirect_stdout(buf):
                code = main(argv)
            outs.append((code, buf.getvalue()))
        if outs[0] != outs[1] or outs[0][0] != 0:
            return False, f"{argv[0]} not reproducible (exit {outs[0][0]})"
    return True, f"{len(commands)} commands byte-identical across runs"


CRITERIA: dict[int, tuple[str, Callable[[], Result]]] = {
    1: ("Hall basis layer sizes vs brute-force rank", criterion_1),
    2: ("PBW round trip on 500 random polynomials", criterion_2),
    3: ("worked straightening example", criterion_3),
    4: ("truncated multiplication associative, K=1 commutative", criterion_4),
    5: ("operator extraction and associativity constraint", criterion_5),
    6: ("formal sections vs truncated multiplication", criterion_6),
    7: ("filtration degrees and multiplicativity", criterion_7),
    8: ("root algebra correspondences", criterion_8),
    9: ("extended Euler form block formula", criterion_9),
    10: ("local quiver arrow counts", criterion_10),
    11: ("substrata and partition counts", criterion_11),
    12: ("theta-stability of tilde representations", criterion_12),
    13: ("representation scheme ideals and points", criterion_13),
    14: ("CLI determinism", cli_determinism),
}


def run_all(only=None) -> list[tuple[int, str, bool, str]]:
    rows = []
    for number, (title, check) in CRITERIA.items():
        if only is not None and number not in only:
            continue
        try:
            ok, detail = check()
        except Exception as exc:  # a crash is a failure of that criterion, not of the run
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        rows.append((number, title, ok, detail))
    return rows
