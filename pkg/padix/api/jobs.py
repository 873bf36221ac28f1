"""
Builds the objects described by a job configuration and tabulates the values requested by the commands.

Every table is produced row by row through module-level task functions, so rows can be computed in worker
processes; results are always collected in configuration order.
"""
import math
from fractions import Fraction
from typing import Any, Dict, List, Tuple, Union

from padix.constants import GUARD_DIGITS, OUTSIDE_DOMAIN_MARKER
from padix.core.characters import FiniteOrderChar, WeightChar
from padix.core.cyclotomic import CycloElem
from padix.core.interp import (
    CrisData,
    IwasawaVector,
    convergence_certificate,
    fe_constant,
    lambda_value,
)
from padix.core.oracle import coleman_moment, coleman_series, kl_reference, restricted_moment_reference
from padix.core.scalar import PadicScalar, as_scalar
from padix.core.series import PlusSeries, default_degree, restrict_units
from padix.errors import ConfigError, NoAdmissibleN, NotAdmissible, PadixError
from padix.models.job import CharacterSpec, EpsilonSpec, JobConfig, KappaSpec, MellinSpec, SeriesKind, SeriesSpec
from padix.models.results import ResultRow, ResultTable
from padix.utils import padix_echo
from padix.utils.common import run_in_order
from padix.utils.json import JsonUtils

LambdaTask = Tuple[CrisData, IwasawaVector, FiniteOrderChar, WeightChar, int, int]
MellinTask = Tuple[int, int, int, int, int]


def certified_modulus(value: Union[PadicScalar, CycloElem]) -> str:
    """:code:`p^B`, B the certified precision of the value rounded down."""
    if isinstance(value, PadicScalar):
        return f"{value.p}^{value.M}"
    if value.prec is None:
        return "exact"
    return f"{value.p}^{math.floor(value.prec)}"


def marker_rows(char: str, d: int) -> List[ResultRow]:
    return [
        ResultRow(char=char, component=i + 1, value=OUTSIDE_DOMAIN_MARKER, certified_mod="-") for i in range(d)
    ]


def _lambda_task(task: LambdaTask) -> Tuple[List[ResultRow], Dict[str, Any]]:
    crisdata, z, eta, kappa, M, m_delta = task
    char, n = f"{eta}*{kappa}", eta.conductor_exp
    try:
        certificate = convergence_certificate(kappa, n, m_delta, target=M + n + GUARD_DIGITS)
    except NoAdmissibleN:
        return marker_rows(char, crisdata.d), {"char": char, "admissible": False}
    info = {"char": char, **certificate.to_dict()}
    try:
        values = lambda_value(crisdata, z, eta, kappa, M, m_delta)
    except NotAdmissible:
        return marker_rows(char, crisdata.d), info
    rows = [
        ResultRow(char=char, component=i + 1, value=str(value), certified_mod=certified_modulus(value))
        for i, value in enumerate(values)
    ]
    return rows, info


def _mellin_task(task: MellinTask) -> List[ResultRow]:
    p, c, j, M, degree = task
    char = f"x^{j}"
    oracle = coleman_moment(p, c, j, M)
    series = restricted_moment_reference(coleman_series(p, c, degree, M + GUARD_DIGITS), j)
    series = series.with_precision(min(M, series.M))
    reference = PadicScalar.from_rational(p, kl_reference(p, c, j), M)
    return [
        ResultRow(char=f"{char}:{source}", component=1, value=str(value), certified_mod=certified_modulus(value))
        for source, value in (("oracle", oracle), ("series", series), ("kl", reference))
    ]


class JobRunner:
    """
    Materializes a :code:`JobConfig`: eigenvalues, Iwasawa components, characters and weight characters.

    The working precision is :code:`M + n + GUARD_DIGITS` for n the largest conductor exponent of the job;
    the truncation degree is :code:`D_T` when configured, else the degree certifying evaluations at that level.
    """

    def __init__(self, job: JobConfig, workers: int = 1):
        self._job = job
        self._workers = workers

    @property
    def job(self) -> JobConfig:
        return self._job

    @property
    def p(self) -> int:
        return self._job.p

    @property
    def M(self) -> int:
        return self._job.M

    @property
    def level(self) -> int:
        return max([1] + [spec.conductor_exp for spec in self._job.characters])

    @property
    def working_precision(self) -> int:
        return self.M + self.level + GUARD_DIGITS

    @property
    def degree(self) -> int:
        return self._job.D_T or default_degree(self.p, self.level, self.working_precision)

    # builders

    def crisdata(self) -> CrisData:
        spec = self._job.crisdata
        alphas = tuple(as_scalar(self.p, alpha, self.working_precision) for alpha in spec.alphas)
        labels = tuple(spec.labels or ())
        hodge_tate = tuple(spec.hodge_tate) if spec.hodge_tate else None
        return CrisData(self.p, alphas, labels, hodge_tate)

    @staticmethod
    def _read_coefficients(spec: SeriesSpec) -> List[str]:
        if spec.coeffs:
            return spec.coeffs
        content = JsonUtils.read(spec.file)
        coeffs = content.get("coeffs") if isinstance(content, dict) else content
        if not isinstance(coeffs, list) or not coeffs:
            raise ConfigError(f"File {spec.file} shall contain a non-empty list of coefficients")
        return [str(c) for c in coeffs]

    def series(self, spec: SeriesSpec) -> PlusSeries:
        p, prec, degree = self.p, spec.prec or self.working_precision, self.degree
        if spec.kind == SeriesKind.coleman:
            return coleman_series(p, spec.c, degree, prec)
        if spec.kind == SeriesKind.dirac:
            return PlusSeries.x_power(p, spec.b, prec, degree)
        if spec.kind == SeriesKind.units_dirac:
            return restrict_units(PlusSeries.x_power(p, spec.b, prec, degree))
        coeffs = [Fraction(c) for c in self._read_coefficients(spec)]
        return PlusSeries.from_t_coefficients(p, coeffs, prec, max(len(coeffs) - 1, degree))

    def iwasawa_vector(self) -> IwasawaVector:
        return IwasawaVector(tuple(self.series(spec) for spec in self._job.z))

    def character(self, spec: CharacterSpec) -> FiniteOrderChar:
        return FiniteOrderChar(self.p, spec.conductor_exp, spec.tame_index, spec.wild_exponent)

    def characters(self) -> List[FiniteOrderChar]:
        return [self.character(spec) for spec in self._job.characters]

    def kappa(self, spec: KappaSpec) -> WeightChar:
        if spec.j is not None:
            return WeightChar.power(self.p, spec.j, self.working_precision)
        z = as_scalar(self.p, spec.z_kappa, self.working_precision)
        return WeightChar(self.p, spec.tame_index or 0, z)

    def kappas(self) -> List[WeightChar]:
        return [self.kappa(spec) for spec in self._job.kappas]

    def _ramified_characters(self) -> List[FiniteOrderChar]:
        characters = self.characters()
        if not characters:
            raise ConfigError("The job configuration shall list at least one character")
        for eta in characters:
            if eta.conductor_exp < 1:
                raise ConfigError(f"Character {eta} shall have conductor at least {self.p}")
        return characters

    # tables

    def lambda_table(self) -> ResultTable:
        crisdata = self.crisdata()
        characters = self._ramified_characters()
        padix_echo(f"Building {crisdata.d} component(s) at degree {self.degree}")
        z = self.iwasawa_vector().check_eigen(crisdata)
        tasks = [
            (crisdata, z, eta, kappa, self.M, self._job.m_delta) for eta in characters for kappa in self.kappas()
        ]
        padix_echo(f"Computing {len(tasks)} value(s) of the local L-function with {self._workers} worker(s)")
        results = run_in_order(_lambda_task, tasks, self._workers)
        table = ResultTable(command="lambda", p=self.p, M=self.M)
        for rows, info in results:
            table.rows.extend(rows)
            table.certificates.append(info)
        return table

    def certify_table(self) -> ResultTable:
        table = ResultTable(command="certify", p=self.p, M=self.M)
        for eta in self._ramified_characters():
            for kappa in self.kappas():
                char = f"{eta}*{kappa}"
                target = self.M + eta.conductor_exp + GUARD_DIGITS
                try:
                    certificate = convergence_certificate(kappa, eta.conductor_exp, self._job.m_delta, target)
                except NoAdmissibleN:
                    table.rows.extend(marker_rows(char, 1))
                    table.certificates.append({"char": char, "admissible": False})
                    continue
                info = certificate.to_dict()
                value = " ".join(f"{key}={info[key]}" for key in ("N", "J", "slope", "c_kappa", "admissible"))
                table.rows.append(ResultRow(char=char, component=1, value=value, certified_mod=f"{self.p}^{target}"))
                table.certificates.append({"char": char, **info})
        return table

    def mellin_table(self) -> ResultTable:
        spec = self._job.mellin or MellinSpec()
        if any(j < 1 for j in spec.j):
            raise ConfigError(f"Mellin moments are tabulated for j >= 1, got {spec.j}")
        degree = max([self.degree] + [j + 1 for j in spec.j])
        tasks = [(self.p, spec.c, j, self.M, degree) for j in spec.j]
        padix_echo(f"Pairing the Coleman series of c={spec.c} with {len(tasks)} monomial(s)")
        table = ResultTable(command="mellin", p=self.p, M=self.M)
        for rows in run_in_order(_mellin_task, tasks, self._workers):
            table.rows.extend(rows)
        return table

    def _eps_tame(self, spec: EpsilonSpec) -> List[Tuple[int, PadicScalar]]:
        return [(item.ell, as_scalar(self.p, item.eps, self.M)) for item in spec.eps_tame]

    def epsilon_table(self) -> ResultTable:
        spec = self._job.epsilon or EpsilonSpec()
        characters = self.characters() or [FiniteOrderChar.trivial(self.p)]
        omega, eps_p = as_scalar(self.p, spec.omega, self.M), as_scalar(self.p, spec.eps_p, self.M)
        eps_tame = self._eps_tame(spec)
        table = ResultTable(command="epsilon", p=self.p, M=self.M)
        for eta in characters:
            for j in spec.j:
                try:
                    factor = fe_constant(omega, eta, j, spec.k, eps_p, eps_tame, self.M)
                except PadixError as e:
                    raise ConfigError(f"Cannot build the functional equation constant of {eta}: {e}") from e
                table.rows.append(
                    ResultRow(
                        char=f"{eta} j={j}",
                        component=1,
                        value=str(factor),
                        certified_mod=certified_modulus(factor.value),
                    )
                )
        return table
