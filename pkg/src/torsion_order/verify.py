"""Oracle-versus-implementation checks, runnable from the CLI as ``verify``.

Every check compares two independent routes to the same number (enumeration
against closed form, tableau counting against Pieri, ...) or replays a
mutation test.  Implementations are looked up through their modules at call
time, so a test can swap one out and watch the named check fail.
"""

from __future__ import annotations

import dataclasses
import random
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from . import arith, bounds, lr_oracle, resolution, schubert


@dataclass
class VerifyConfig:
    max_d: int = 6
    max_r: int = 3
    max_m: int = 4
    max_lcm: int = 1000
    max_grassmannian: int = 8
    max_n: int = 10
    max_fano_n: int = 20
    mutations: int = 100
    seed: int = 0


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0


@dataclass
class VerifyReport:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failed(self) -> list[str]:
        return [r.name for r in self.results if not r.passed]

    def lines(self) -> list[str]:
        return [
            f"{'PASS' if r.passed else 'FAIL'}  {r.name:<24} {r.detail} ({r.seconds:.2f}s)"
            for r in self.results
        ]


def check_lcm_closed_form(cfg: VerifyConfig) -> tuple[bool, str]:
    for d in range(1, cfg.max_lcm + 1):
        if arith.lcm_factorial(d) != arith.lcm_factorial_closed_form(d):
            return False, f"lcm(1..{d}) differs from the prime-power product"
    return True, f"d <= {cfg.max_lcm}"


def check_product_lemma(cfg: VerifyConfig) -> tuple[bool, str]:
    count = 0
    for r in range(1, cfg.max_r + 1):
        for degs in product(range(1, cfg.max_d + 1), repeat=r):
            count += 1
            if arith.lcm_factorial_product(degs) != arith.product_lcm_oracle(degs):
                return False, f"mismatch at degrees {list(degs)}"
    return True, f"{count} degree lists, r <= {cfg.max_r}, d <= {cfg.max_d}"


def check_lr_oracle(cfg: VerifyConfig) -> tuple[bool, str]:
    pairs = 0
    for m in range(3, cfg.max_grassmannian + 1):
        basis = list(schubert.partitions(m))
        for lam in basis:
            for mu in basis:
                pairs += 1
                got = schubert.multiply(
                    schubert.SchubertClass.sigma(m, *lam),
                    schubert.SchubertClass.sigma(m, *mu),
                )
                want = lr_oracle.grassmannian_product(m, lam, mu)
                if dict(got.terms) != want:
                    return False, f"Gr(2,{m}): s{lam}*s{mu} = {got}, oracle {want}"
    return True, f"{pairs} basis products, m <= {cfg.max_grassmannian}"


def check_poincare(cfg: VerifyConfig) -> tuple[bool, str]:
    for m in range(3, cfg.max_grassmannian + 1):
        top = m - 2
        basis = list(schubert.partitions(m))
        for lam in basis:
            for mu in basis:
                if sum(lam) + sum(mu) != 2 * top:
                    continue
                val = schubert.integrate(
                    schubert.SchubertClass.sigma(m, *lam) * schubert.SchubertClass.sigma(m, *mu)
                )
                dual = (top - lam[1], top - lam[0])
                if val != (1 if mu == dual else 0):
                    return False, f"Gr(2,{m}): <s{lam}, s{mu}> = {val}"
    return True, f"m <= {cfg.max_grassmannian}"


def check_c4(cfg: VerifyConfig) -> tuple[bool, str]:
    c4 = schubert.chern_sym3(4)
    want = schubert.SymmetricPoly2({(0, 2): 9, (2, 1): 18})
    if c4 != want:
        return False, f"c4(Sym^3 U) = {c4}"
    return True, "c4 = 9 e2^2 + 18 e1^2 e2"


def check_fano_lines(cfg: VerifyConfig) -> tuple[bool, str]:
    for n in range(2, cfg.max_fano_n + 1):
        for flip in (False, True):
            val = schubert.fano_lines_degree(n, flip_sign=flip)
            if val != 27:
                return False, f"n={n} flip={flip}: degree {val}"
    return True, f"27 for 2 <= n <= {cfg.max_fano_n}, both signs of c1"


def check_certificates(cfg: VerifyConfig) -> tuple[bool, str]:
    count = 0
    for prof in bounds.profiles(range(1, cfg.max_n + 1), cfg.max_r, cfg.max_d):
        for scen in bounds.Scenario:
            cert = bounds.certificate(prof, scen)
            count += 1
            if cert.known_multiple is not None and cert.known_multiple % cert.known_divisor:
                return False, f"{prof} [{scen.value}]: {cert.known_divisor} does not divide {cert.known_multiple}"
        if bounds.generic_with_point_lower_divisor(prof) * bounds.index_generic(prof) != bounds.generic_lower_divisor(prof):
            return False, f"{prof}: with-point * index != generic"
    return True, f"{count} certificates consistent"


def check_extreme_corollary(cfg: VerifyConfig) -> tuple[bool, str]:
    count = 0
    for n in range(3, 13):
        for prof in bounds.profiles([n], max_r=n + 1, max_d=8):
            if prof.d_prime != n + prof.r:
                continue
            div, _ = bounds.very_general_lower_divisor(prof)
            for d in prof.degrees:
                if (d % 2 == 1 or n % 2 == 0):
                    count += 1
                    if div % d:
                        return False, f"{prof}: {d} does not divide {div}"
    return True, f"{count} (profile, degree) pairs"


def check_totaro_range(cfg: VerifyConfig) -> tuple[bool, str]:
    for n in range(3, 31):
        for d in range(2, n + 2):
            got = bounds.prime_power_witness(bounds.MultiDegreeProfile(n, (d,)), 2, 1) is not None
            want = d >= 2 * -(-(n + 2) // 3)
            if got != want:
                return False, f"n={n}, d={d}: witness={got}, expected {want}"
    return True, "3 <= n <= 30"


Mutation = tuple[str, Callable[[], resolution.ResolutionPlan]]


def _case_mutations(plan: resolution.ResolutionPlan) -> list[Mutation]:
    out: list[Mutation] = []
    case = plan.case

    def with_case(**kw):
        return dataclasses.replace(plan, case=dataclasses.replace(case, **kw))

    for p in (2, 3, 4, 5, 7, 9):
        if p != case.p:
            out.append((f"case.p={p}", lambda p=p: with_case(p=p)))
    for m in (case.m - 1, case.m + 1):
        out.append((f"case.m={m}", lambda m=m: with_case(m=m)))
    for n in (case.n - 1, case.n + 1, case.n + 2):
        out.append((f"case.n={n}", lambda n=n: with_case(n=n)))
    for tag in resolution.CaseTag:
        if tag is not case.case_tag:
            out.append((f"case.tag={tag.value}", lambda tag=tag: with_case(case_tag=tag)))
    return out


def _step_mutations(plan: resolution.ResolutionPlan, k: int) -> list[Mutation]:
    out: list[Mutation] = []
    st = plan.steps[k]

    def with_step(**kw):
        steps = list(plan.steps)
        steps[k] = dataclasses.replace(st, **kw)
        return dataclasses.replace(plan, steps=tuple(steps))

    for delta in (-2, -1, 1, 2):
        out.append((f"steps[{k}].index{delta:+}", lambda v=st.index + delta: with_step(index=v)))
        out.append((f"steps[{k}].local_exponent{delta:+}",
                    lambda v=st.local_exponent + delta: with_step(local_exponent=v)))
        out.append((f"steps[{k}].outgoing_exponent{delta:+}",
                    lambda v=st.outgoing_exponent + delta: with_step(outgoing_exponent=v)))
    for delta in (-1, 1):
        out.append((f"steps[{k}].exceptional_dim{delta:+}",
                    lambda v=st.exceptional_dim + delta: with_step(exceptional_dim=v)))
    for t in resolution.DivisorType:
        if t is not st.exceptional_type:
            out.append((f"steps[{k}].exceptional_type={t.value}", lambda t=t: with_step(exceptional_type=t)))
        if t is not st.strict_transform_type:
            out.append((f"steps[{k}].strict_transform_type={t.value}",
                        lambda t=t: with_step(strict_transform_type=t)))
    g0 = st.coordinate_group
    for g in ([None, 1, 2] if g0 is None else [None, g0 - 1, g0 + 1]):
        if g != g0:
            out.append((f"steps[{k}].coordinate_group={g}", lambda g=g: with_step(coordinate_group=g)))
    return out


def _intersection_mutations(plan: resolution.ResolutionPlan, k: int) -> list[Mutation]:
    out: list[Mutation] = []
    x = plan.intersections[k]

    def with_inter(**kw):
        xs = list(plan.intersections)
        xs[k] = dataclasses.replace(x, **kw)
        return dataclasses.replace(plan, intersections=tuple(xs))

    for delta in (-1, 1):
        out.append((f"intersections[{k}].first{delta:+}", lambda v=x.first + delta: with_inter(first=v)))
        out.append((f"intersections[{k}].second{delta:+}", lambda v=x.second + delta: with_inter(second=v)))
        out.append((f"intersections[{k}].dim{delta:+}", lambda v=x.dim + delta: with_inter(dim=v)))
    for t in resolution.DivisorType:
        if t is not x.kind:
            out.append((f"intersections[{k}].kind={t.value}", lambda t=t: with_inter(kind=t)))
    return out


def _e_prime_mutations(plan: resolution.ResolutionPlan, k: int) -> list[Mutation]:
    out: list[Mutation] = []
    for new in (0, 1, 2, 3):
        if new != plan.e_prime_multiplicities[k]:
            def thunk(new=new):
                mult = list(plan.e_prime_multiplicities)
                mult[k] = new
                return dataclasses.replace(plan, e_prime_multiplicities=tuple(mult))
            out.append((f"e_prime[{k}]={new}", thunk))
    return out


def _mutation_slots(plan: resolution.ResolutionPlan) -> list[Callable[[], list[Mutation]]]:
    slots: list[Callable[[], list[Mutation]]] = [lambda: _case_mutations(plan)]
    slots += [lambda k=k: _step_mutations(plan, k) for k in range(len(plan.steps))]
    slots += [lambda k=k: _intersection_mutations(plan, k) for k in range(len(plan.intersections))]
    slots += [lambda k=k: _e_prime_mutations(plan, k) for k in range(len(plan.e_prime_multiplicities))]
    return slots


def _mutations(plan: resolution.ResolutionPlan) -> list[Mutation]:
    """All single-field changes of ``plan`` as ``(label, thunk)`` pairs."""
    return [mut for slot in _mutation_slots(plan) for mut in slot()]


def random_mutation(plan: resolution.ResolutionPlan, rng: random.Random):
    """Pick a component of ``plan`` at random, then one change to it."""
    label, thunk = rng.choice(rng.choice(_mutation_slots(plan))())
    return label, thunk()


def plan_grid(max_m: int = 4, max_n: int = 8) -> list[tuple[int, int, int]]:
    return [(p, m, n) for p in (2, 3, 5, 7) for m in range(1, max_m + 1) for n in range(2, max_n + 1)]


def check_resolution(cfg: VerifyConfig) -> tuple[bool, str]:
    grid = plan_grid(cfg.max_m)
    plans = []
    for p, m, n in grid:
        plan = resolution.resolution_plan(p, m, n)
        if len(plan.steps) != resolution.blowup_count(p, m, n):
            return False, f"(p={p}, m={m}, n={n}): {len(plan.steps)} steps"
        if not resolution.verify_plan(plan):
            return False, f"(p={p}, m={m}, n={n}): generated plan rejected"
        plans.append(plan)
    rng = random.Random(cfg.seed)
    for _ in range(cfg.mutations):
        plan = rng.choice(plans)
        label, bad = random_mutation(plan, rng)
        if resolution.verify_plan(bad):
            c = plan.case
            return False, f"(p={c.p}, m={c.m}, n={c.n}): mutation {label} accepted"
    return True, f"{len(plans)} plans, {cfg.mutations} mutations rejected"


CHECKS: dict[str, Callable[[VerifyConfig], tuple[bool, str]]] = {
    "lcm-closed-form": check_lcm_closed_form,
    "product-lemma": check_product_lemma,
    "lr-oracle": check_lr_oracle,
    "poincare-pairing": check_poincare,
    "c4-sym3": check_c4,
    "fano-lines": check_fano_lines,
    "certificate-consistency": check_certificates,
    "extreme-corollary": check_extreme_corollary,
    "totaro-range": check_totaro_range,
    "resolution-plans": check_resolution,
}


def verify_suite(cfg: VerifyConfig | None = None, only: list[str] | None = None) -> VerifyReport:
    cfg = cfg or VerifyConfig()
    report = VerifyReport()
    for name, check in CHECKS.items():
        if only and name not in only:
            continue
        t0 = time.perf_counter()
        try:
            ok, detail = check(cfg)
        except Exception as exc:  # a crash is a failed check, not a crashed suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        report.results.append(CheckResult(name, ok, detail, time.perf_counter() - t0))
    return report
