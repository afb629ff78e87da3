"""Tabular and machine-readable output of certificates and resolution plans.

JSON is canonical: sorted keys, and every certificate integer is written as a
decimal string so consumers with 53-bit floats cannot truncate it.  An unknown
multiple is the string ``"unknown"``.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .bounds import MultiDegreeProfile, Scenario, TorsionCertificate, certificate
from .resolution import ResolutionPlan

MAX_TABLE_ROWS = 10**5
FORMATS = ("json", "md", "csv")


class TableTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class ReportRow:
    n: int
    degrees: tuple[int, ...]
    scenario: str
    known_divisor: int
    known_multiple: int | None
    witnesses: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def exact(self) -> bool:
        return self.known_multiple is not None and self.known_divisor == self.known_multiple

    @property
    def profile(self) -> str:
        return str(MultiDegreeProfile(self.n, self.degrees))

    @classmethod
    def from_certificate(cls, cert: TorsionCertificate) -> ReportRow:
        src = cert.original or cert.profile
        return cls(
            n=src.n,
            degrees=src.degrees,
            scenario=cert.scenario.value,
            known_divisor=cert.known_divisor,
            known_multiple=cert.known_multiple,
            witnesses=tuple(w.summary() for w in cert.witnesses),
            notes=cert.notes,
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "degrees": list(self.degrees),
            "profile": self.profile,
            "scenario": self.scenario,
            "known_divisor": str(self.known_divisor),
            "known_multiple": "unknown" if self.known_multiple is None else str(self.known_multiple),
            "exact": self.exact,
            "witnesses": list(self.witnesses),
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, data: dict) -> ReportRow:
        mult = data["known_multiple"]
        row = cls(
            n=int(data["n"]),
            degrees=tuple(int(d) for d in data["degrees"]),
            scenario=str(data["scenario"]),
            known_divisor=int(data["known_divisor"]),
            known_multiple=None if mult == "unknown" else int(mult),
            witnesses=tuple(data.get("witnesses", ())),
            notes=tuple(data.get("notes", ())),
        )
        if "exact" in data and bool(data["exact"]) != row.exact:
            raise ValueError("inconsistent 'exact' flag")
        return row


def certificate_to_dict(cert: TorsionCertificate) -> dict:
    out = ReportRow.from_certificate(cert).to_dict()
    out["normalized_profile"] = str(cert.profile)
    out["provenance"] = [
        {"rule": p.rule, "factor": None if p.factor is None else str(p.factor),
         "citation": p.citation}
        for p in cert.provenance
    ]
    out["witness_data"] = [
        {"p": w.p, "m": w.m, "index": w.index, "degree": w.degree, "a": w.a,
         "c": w.c, "method": w.method.value}
        for w in cert.witnesses
    ]
    out["level_note"] = cert.level_note
    return out


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def rows_to_json(rows: Sequence[ReportRow]) -> str:
    return dumps([r.to_dict() for r in rows])


def rows_from_json(text: str) -> list[ReportRow]:
    return [ReportRow.from_dict(d) for d in json.loads(text)]


_COLUMNS = ("profile", "scenario", "known_divisor", "known_multiple", "exact", "witnesses", "notes")


def _flat(row: ReportRow) -> dict[str, str]:
    d = row.to_dict()
    return {
        "profile": d["profile"],
        "scenario": d["scenario"],
        "known_divisor": d["known_divisor"],
        "known_multiple": d["known_multiple"],
        "exact": "yes" if row.exact else "no",
        "witnesses": "; ".join(row.witnesses),
        "notes": "; ".join(row.notes),
    }


def rows_to_markdown(rows: Sequence[ReportRow]) -> str:
    lines = ["| " + " | ".join(_COLUMNS) + " |", "|" + "---|" * len(_COLUMNS)]
    for row in rows:
        flat = _flat(row)
        lines.append("| " + " | ".join(flat[c].replace("|", "\\|") for c in _COLUMNS) + " |")
    return "\n".join(lines)


def rows_to_csv(rows: Sequence[ReportRow]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(_flat(row))
    return buf.getvalue().rstrip("\n")


def render_rows(rows: Sequence[ReportRow], fmt: str) -> str:
    if fmt == "json":
        return rows_to_json(rows)
    if fmt == "md":
        return rows_to_markdown(rows)
    if fmt == "csv":
        return rows_to_csv(rows)
    raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")


def render_certificate(cert: TorsionCertificate, fmt: str) -> str:
    if fmt == "json":
        return dumps(certificate_to_dict(cert))
    return render_rows([ReportRow.from_certificate(cert)], fmt)


def hypersurface_family(n_from: int, n_to: int, degree_rule: str = "n-plus-1") -> list[MultiDegreeProfile]:
    if degree_rule == "n-plus-1":
        degree_of = lambda n: n + 1  # noqa: E731
    elif degree_rule.startswith("fixed:"):
        try:
            fixed = int(degree_rule.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad degree rule {degree_rule!r}") from None
        if fixed < 1:
            raise ValueError(f"degree must be >= 1, got {fixed}")
        degree_of = lambda n: fixed  # noqa: E731
    else:
        raise ValueError(f"unknown degree rule {degree_rule!r}; use n-plus-1 or fixed:<d>")
    if n_to - n_from + 1 > MAX_TABLE_ROWS:
        raise TableTooLarge(f"{n_to - n_from + 1} rows exceeds {MAX_TABLE_ROWS}")
    return [MultiDegreeProfile(n, (degree_of(n),)) for n in range(max(n_from, 1), n_to + 1)]


def _row(args: tuple[MultiDegreeProfile, Scenario]) -> ReportRow:
    prof, scenario = args
    return ReportRow.from_certificate(certificate(prof, scenario))


def build_table(
    profiles: Iterable[MultiDegreeProfile],
    scenario: Scenario | str,
    jobs: int = 1,
) -> list[ReportRow]:
    """One row per profile, ordered by ``(n, degrees)`` whatever ``jobs`` is."""
    scenario = Scenario(scenario)
    profiles = sorted(set(profiles), key=lambda p: (p.n, p.degrees))
    if len(profiles) > MAX_TABLE_ROWS:
        raise TableTooLarge(f"{len(profiles)} rows exceeds {MAX_TABLE_ROWS}")
    work = [(p, scenario) for p in profiles]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_row, work, chunksize=16))
    return [_row(w) for w in work]


def emit_table(
    profiles: Iterable[MultiDegreeProfile],
    scenario: Scenario | str,
    fmt: str = "md",
    jobs: int = 1,
) -> str:
    return render_rows(build_table(profiles, scenario, jobs), fmt)


def plan_to_dict(plan: ResolutionPlan) -> dict:
    case = plan.case
    return {
        "p": case.p,
        "m": case.m,
        "n": case.n,
        "case": case.case_tag.value,
        "blowups": len(plan.steps),
        "steps": [
            {
                "index": s.index,
                "local_exponent": s.local_exponent,
                "outgoing_exponent": s.outgoing_exponent,
                "exceptional_type": s.exceptional_type.value,
                "strict_transform_type": s.strict_transform_type.value,
                "exceptional_dim": s.exceptional_dim,
                "coordinate_group": s.coordinate_group,
                "note": s.note,
            }
            for s in plan.steps
        ],
        "intersections": [
            {"first": x.first, "second": x.second, "kind": x.kind.value, "dim": x.dim}
            for x in plan.intersections
        ],
        "e_prime_multiplicities": list(plan.e_prime_multiplicities),
    }


def render_plan(plan: ResolutionPlan, fmt: str) -> str:
    if fmt == "json":
        return dumps(plan_to_dict(plan))
    if fmt not in ("md", "text"):
        raise ValueError(f"resolution output supports json or md, not {fmt!r}")
    case = plan.case
    lines = [
        f"p={case.p} m={case.m} n={case.n} case={case.case_tag.value} "
        f"blowups={len(plan.steps)}",
        "",
        "| step | y-exponent in | out | exceptional | strict transform | group | E' mult |",
        "|---|---|---|---|---|---|---|",
    ]
    for s, mult in zip(plan.steps, plan.e_prime_multiplicities):
        group = "" if s.coordinate_group is None else str(s.coordinate_group)
        lines.append(
            f"| {s.index} | {s.local_exponent} | {s.outgoing_exponent} | "
            f"{s.exceptional_type.value} | {s.strict_transform_type.value} | {group} | {mult} |"
        )
    return "\n".join(lines)
