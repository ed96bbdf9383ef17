"""Tasks behind the `ranges` and `sv` commands, plus their text renderings."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from tautcheck.strata.ranges import RangeReport, build_range_report, degree_text
from tautcheck.strata.relations import ModularMode, VerificationRecord, check_conjecture
from tautcheck.strata.siegel_veech import (
    VaryingReport,
    c_area_hyperelliptic,
    hyperelliptic_lift,
    varying_check,
)
from tautcheck.strata.signatures import (
    QuadraticSignatureGenus0,
    StratumSignature,
    format_signature,
    parse_quadratic_signature,
    parse_signature,
)
from tautcheck.tasks.base import BaseTask


@dataclass
class RangesInput:
    signature_text: str
    ell: int = 1
    specified: list[int] | None = None
    check_relation: bool = True
    start_prime: int = 10007
    max_primes: int = 8


@dataclass
class RangesOutput:
    report: RangeReport
    record: VerificationRecord | None = None

    def to_dict(self) -> dict[str, Any]:
        data = self.report.to_dict()
        data["relation"] = None if self.record is None else self.record.to_dict()
        return data


class RangesTask(BaseTask[RangesInput, RangesOutput]):
    """Evaluate every range formula for one signature.

    When the eta regime applies and g >= 2, the non-vanishing check runs
    first so the report can state whether the full presentation is known.
    """

    def __init__(self):
        super().__init__("RangesTask")

    def _process(self, input_data: RangesInput) -> RangesOutput:
        sig = parse_signature(input_data.signature_text, input_data.ell)
        record = None
        if input_data.check_relation and self._relation_applies(sig):
            mode = ModularMode(
                start_prime=input_data.start_prime, max_primes=input_data.max_primes
            )
            record = check_conjecture(sig, mode)
            self.logger.info(f"Relation check for {sig}: {record.status.value}")
        report = build_range_report(
            sig,
            specified=input_data.specified,
            conjecture_status=None if record is None else record.status,
        )
        return RangesOutput(report=report, record=record)

    @staticmethod
    def _relation_applies(sig: StratumSignature) -> bool:
        return sig.genus >= 2 and not sig.has_pole_of_order_ell


@dataclass
class VaryingInput:
    """Either the k/l lists of the varying criterion or raw genus-0 entries."""

    odd_k: list[int] = field(default_factory=list)
    ells: list[int] = field(default_factory=list)
    nu_text: str | None = None


@dataclass(frozen=True)
class HyperellipticReport:
    nu: QuadraticSignatureGenus0
    mu: StratumSignature
    c_area: Fraction

    def to_dict(self) -> dict[str, Any]:
        return {
            "nu": str(self.nu),
            "mu": format_signature(self.mu),
            "g": self.mu.genus,
            "pi2_c_area": str(self.c_area),
        }


class VaryingTask(BaseTask[VaryingInput, VaryingReport | HyperellipticReport]):
    def __init__(self):
        super().__init__("VaryingTask")

    def _process(self, input_data: VaryingInput) -> VaryingReport | HyperellipticReport:
        if input_data.nu_text is not None:
            nu = parse_quadratic_signature(input_data.nu_text)
            return HyperellipticReport(
                nu=nu, mu=hyperelliptic_lift(nu), c_area=c_area_hyperelliptic(nu)
            )
        return varying_check(input_data.odd_k, input_data.ells)


def render_record(record: VerificationRecord) -> str:
    data = record.to_dict()
    lines = [
        f"Signature:  ({data['signature']})  ell={data['ell']}  g={data['g']}  n={data['n']}",
        f"Target:     coefficient of t^{data['a']} ({data['case']}, g mod 3 = {data['residue_class']})",
        f"Status:     {data['status']}",
    ]
    if data["witness_prime"] is not None:
        lines.append(f"Witness:    residue {data['residue']} mod {data['witness_prime']}")
    if data["coefficient"] is not None:
        lines.append(f"Exact:      {data['coefficient']}")
    if data["primes_tried"]:
        lines.append(f"Primes:     {', '.join(str(p) for p in data['primes_tried'])}")
    return "\n".join(lines)


def render_range_report(output: RangesOutput) -> str:
    report = output.report
    sig = report.signature
    lines = [
        f"Signature:            ({format_signature(sig)})  ell={sig.ell}  g={sig.genus}  n={sig.n}",
        f"Specified parts:      {list(report.specified)}  (k={report.k}, r={report.r}, m={report.m})",
        f"Eta-degree bound:     {degree_text(report.theorem1_bound)}",
        f"Pure weight (inj):    {degree_text(report.purewt_injectivity)}",
        f"Pure weight (surj):   {degree_text(report.purewt_surjectivity)}",
        f"Stable cohomology:    {degree_text(report.stable_cohomology_bound)}",
        f"Rank of pushforward:  {report.rank_pushforward}",
    ]
    codim = report.codim
    if codim.applicable:
        lines.append(f"{codim.name}: >= {', '.join(str(v) for v in codim.values)}")
    else:
        lines.append(f"{codim.name}: n/a (needs {codim.hypothesis})")
    lines.append(f"Generators:           {report.presentation.generators}")
    if report.presentation.psi_indices:
        lines.append(f"Psi indices:          {list(report.presentation.psi_indices)}")
    if report.presentation.known_presentation:
        lines.append(f"Presentation:         {report.presentation.known_presentation}")
    lines.append(f"Note:                 {report.presentation.note}")
    if output.record is not None:
        lines.append(f"Relation check:       {output.record.status.value}")
    for note in report.notes:
        lines.append(f"- {note}")
    return "\n".join(lines)


def render_varying(result: VaryingReport | HyperellipticReport) -> str:
    if isinstance(result, HyperellipticReport):
        return "\n".join(
            [
                f"nu:            ({result.nu})",
                f"Lift mu:       ({format_signature(result.mu)})  g={result.mu.genus}",
                f"pi^2 c_area:   {result.c_area}",
            ]
        )
    return "\n".join(
        [
            f"Stratum:       ({format_signature(result.mu)})  g={result.g}  m={result.m}",
            f"nu:            ({result.nu})",
            f"pi^2 c_area:   {result.c_area} >= {result.lower_bound}",
            "Generic limit: pi^2/2",
            f"Verdict:       {result.verdict}",
        ]
    )
