"""Command workflows: field, cyclo, verify, pds, scan, search and tuples."""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Type

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from tools.cayley_graph import cayley_graph, srg_parameters
from tools.cyclotomy import (
    CyclotomicSystem,
    IdentityReport,
    cyclotomic_numbers,
    cyclotomic_system,
    verify_cyclotomic_identities,
)
from tools.edf import (
    DesignFamily,
    Provenance,
    SedfCertificate,
    classify_pds_shape,
    difference_set_partition_sedf,
    pds_partition_sedf,
    reverify_certificate,
    sedf_from_cyclotomy,
    verify_pds,
    verify_sedf,
)
from tools.errors import ParameterError, UniformityError
from tools.gf import (
    DEFAULT_MAX_ORDER,
    FieldSpec,
    FieldTable,
    default_modulus,
    element_order,
    field_new,
    format_vector,
    order_witnesses,
    power_vector,
)
from tools.group_core import GroupSet, GroupSpec
from tools.report_formatters import JsonFormatter, TsvFormatter, get_formatter
from tools.search import exhaustive_search, feasible_tuples, scan_cyclotomic
from tools.utils.config import ToolkitConfig
from tools.utils.task_runner import TaskRunner
from workflows.base_workflow import EXIT_NEGATIVE, EXIT_OK, BaseWorkflow, WorkflowState
from workflows.run_config import DEFAULT_FORMATS, RunConfig

logger = logging.getLogger(__name__)

SCAN_COLUMNS = ["q", "p", "m", "modulus", "e", "f", "is_sedf", "lambda", "theta", "methods_agree"]
CERTIFICATE_COLUMNS = ["n", "m", "k", "lambda", "valid", "disjoint", "kind", "sets", "violations"]
TUPLE_COLUMNS = ["n", "m", "k", "lambda", "trivial"]
PDS_COLUMNS = ["index", "size", "is_pds", "k", "lambda", "mu", "contains_identity", "shape", "srg"]


class Witness(BaseModel):
    exponent: int
    value: str


class FieldReport(BaseModel):
    p: int
    m: int
    q: int
    modulus: str
    theta: str
    order: int
    x_primitive: bool = Field(..., description="theta is the residue class of x")
    witnesses: List[Witness]
    powers: Optional[List[str]] = Field(default=None, description="theta^t for t = 0..q-2")


class CycloReport(BaseModel):
    p: int
    m: int
    modulus: List[int]
    theta: str
    e: int
    f: int
    numbers: List[List[int]]
    identities: IdentityReport


class PdsSetRow(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    index: int
    size: int
    is_pds: bool
    k: Optional[int] = None
    lambda_: Optional[int] = Field(default=None, alias="lambda")
    mu: Optional[int] = None
    contains_identity: bool = False
    shape: Optional[str] = None
    srg: Optional[str] = Field(default=None, description="Cayley graph parameters n,k,lambda,mu")


def certificate_summary(cert: SedfCertificate) -> Dict[str, Any]:
    """One TSV row per certificate."""
    sets = ";".join(",".join(str(r) for r in s) for s in cert.sets) if cert.sets else ""
    return {
        "n": cert.params.n,
        "m": cert.params.m,
        "k": cert.params.k,
        "lambda": cert.params.lambda_,
        "valid": cert.valid,
        "disjoint": cert.disjoint,
        "kind": cert.provenance.kind,
        "sets": sets,
        "violations": "; ".join(cert.violations),
    }


class SedfWorkflow(BaseWorkflow):
    """Shared helpers: run config, field tables and output rendering."""

    def run_config(self, state: WorkflowState) -> RunConfig:
        return RunConfig.model_validate(state["input_data"])

    def validate_input(self, state: WorkflowState) -> bool:
        return super().validate_input(state) and state["input_data"].get("command") == self.name

    @property
    def max_order(self) -> int:
        return self.config.get("field", {}).get("max_order", DEFAULT_MAX_ORDER)

    def output_format(self, rc: RunConfig) -> str:
        configured = self.config.get("output", {}).get("format")
        return rc.format or configured or DEFAULT_FORMATS[rc.command]

    def build_field(self, rc: RunConfig) -> FieldTable:
        modulus = tuple(rc.modulus) if rc.modulus else default_modulus(rc.p, rc.m)
        spec = FieldSpec(p=rc.p, m=rc.m, modulus=modulus)
        return field_new(spec, max_order=self.max_order)

    def build_system(self, rc: RunConfig) -> CyclotomicSystem:
        return cyclotomic_system(self.build_field(rc), rc.e)

    def explicit_family(self, rc: RunConfig) -> Tuple[GroupSpec, List[GroupSet]]:
        group = GroupSpec(rc.group if rc.group is not None else [rc.p] * rc.m)
        return group, [GroupSet(group, s) for s in rc.sets]

    def finish(
        self, state: WorkflowState, report: str, results: List[Any], positive: bool
    ) -> WorkflowState:
        state["report"] = report
        state["results"] = results
        state["exit_code"] = EXIT_OK if positive else EXIT_NEGATIVE
        return state

    def render_certificates(self, rc: RunConfig, certificates: List[SedfCertificate]) -> str:
        if self.output_format(rc) == "json":
            return JsonFormatter().render(certificates)
        return TsvFormatter().render(
            [certificate_summary(c) for c in certificates], columns=CERTIFICATE_COLUMNS
        )


class FieldWorkflow(SedfWorkflow):
    """Field construction with the primitivity certificate of theta."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        super().__init__("field", config)

    def process(self, state: WorkflowState) -> WorkflowState:
        rc = self.run_config(state)
        field = self.build_field(rc)
        theta = field.theta
        x = tuple(1 if i == 1 else 0 for i in range(rc.m)) if rc.m > 1 else None
        report = FieldReport(
            p=rc.p,
            m=rc.m,
            q=field.q,
            modulus=field.spec.modulus_literal,
            theta=format_vector(theta),
            order=element_order(field, theta),
            x_primitive=x is not None and theta == x,
            witnesses=[
                Witness(exponent=t, value=format_vector(v))
                for t, v in order_witnesses(field, theta).items()
            ],
            powers=(
                [format_vector(power_vector(field, t)) for t in range(field.q - 1)]
                if rc.table
                else None
            ),
        )
        self.logger.info(f"GF({field.q}): theta={report.theta}, order {report.order}")

        if self.output_format(rc) == "json":
            text = JsonFormatter().render([report])
        else:
            tsv = TsvFormatter()
            pairs = [
                {"field": key, "value": getattr(report, key)}
                for key in ("p", "m", "q", "modulus", "theta", "order", "x_primitive")
            ]
            pairs += [{"field": f"theta^{w.exponent}", "value": w.value} for w in report.witnesses]
            text = tsv.render(pairs, columns=["field", "value"])
            if report.powers is not None:
                rows = [{"t": t, "theta^t": v} for t, v in enumerate(report.powers)]
                text += "\n" + tsv.render(rows, columns=["t", "theta^t"])
        return self.finish(state, text, [report], report.order == field.q - 1)


class CycloWorkflow(SedfWorkflow):
    """Cyclotomic number table with the identity report."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        super().__init__("cyclo", config)

    def process(self, state: WorkflowState) -> WorkflowState:
        rc = self.run_config(state)
        system = self.build_system(rc)
        table = cyclotomic_numbers(system)
        identities = verify_cyclotomic_identities(system, table)
        info = system.describe()

        if self.output_format(rc) == "json":
            report = CycloReport(
                **info, f=system.f, numbers=table.numbers.tolist(), identities=identities
            )
            text = JsonFormatter().render([report])
        else:
            modulus = ",".join(str(c) for c in info["modulus"])
            header = [
                f"p={info['p']} m={info['m']} modulus={modulus} theta={info['theta']} "
                f"e={system.e} f={system.f}"
            ]
            text = TsvFormatter().render_frame(table.to_frame(), header, index=True)
            for check in identities.checks:
                text += (
                    f"# identity {check.name} holds={str(check.holds).lower()} "
                    f"asserted={str(check.asserted).lower()} violations={len(check.violations)}\n"
                )
        return self.finish(state, text, [identities], identities.all_hold)


class VerifyWorkflow(SedfWorkflow):
    """SEDF verification of explicit sets, cyclotomic classes or a stored certificate stream."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        super().__init__("verify", config)

    def _reverify(self, rc: RunConfig) -> Tuple[List[SedfCertificate], bool]:
        text = Path(rc.certificate).read_text()
        originals = JsonFormatter().parse_certificates(text)
        if not originals:
            raise ParameterError(f"No certificates in {rc.certificate}")
        rebuilt = []
        consistent = True
        for i, cert in enumerate(originals):
            again = reverify_certificate(cert, max_order=self.max_order)
            if again.model_dump() != cert.model_dump():
                self.logger.warning(f"Certificate {i} in {rc.certificate} does not reproduce")
                consistent = False
            rebuilt.append(again)
        return rebuilt, consistent

    def process(self, state: WorkflowState) -> WorkflowState:
        rc = self.run_config(state)
        consistent = True
        if rc.certificate is not None:
            certificates, consistent = self._reverify(rc)
        elif rc.cyclotomic:
            result = sedf_from_cyclotomy(self.build_system(rc))
            self.logger.info(
                f"Cyclotomic criterion: valid={result.criterion.valid}, "
                f"lambda={result.criterion.lambda_}, agrees={result.criterion.agrees}"
            )
            certificates = [result.certificate]
        else:
            group, sets = self.explicit_family(rc)
            certificates = [verify_sedf(DesignFamily(group, sets))]

        for cert in certificates:
            p = cert.params
            self.logger.info(
                f"({p.n},{p.m},{p.k},{p.lambda_}) valid={cert.valid} violations={len(cert.violations)}"
            )
        positive = consistent and all(c.valid for c in certificates)
        return self.finish(state, self.render_certificates(rc, certificates), certificates, positive)


class PdsWorkflow(SedfWorkflow):
    """PDS recognition per set and the partition compositions when they apply."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        super().__init__("pds", config)

    def _srg(self, group: GroupSpec, d: GroupSet) -> Optional[str]:
        try:
            graph = cayley_graph(group, d)
        except ParameterError:
            return None
        params = srg_parameters(graph)
        return ",".join(str(v) for v in params) if params else None

    def process(self, state: WorkflowState) -> WorkflowState:
        rc = self.run_config(state)
        if rc.cyclotomic:
            system = self.build_system(rc)
            group, sets = system.group, list(system.classes)
            provenance: Optional[Provenance] = Provenance(kind="cyclotomic", **system.describe())
        else:
            group, sets = self.explicit_family(rc)
            provenance = None

        rows = []
        for i, d in enumerate(sets):
            params = verify_pds(group, d)
            if params is None:
                rows.append(PdsSetRow(index=i, size=len(d), is_pds=False))
                continue
            rows.append(
                PdsSetRow(
                    index=i,
                    size=len(d),
                    is_pds=True,
                    k=params.k,
                    lambda_=params.lambda_,
                    mu=params.mu,
                    contains_identity=params.contains_identity,
                    shape=classify_pds_shape(params),
                    srg=self._srg(group, d) if rc.srg else None,
                )
            )

        partitions: List[BaseModel] = []
        cover = np.sum([d.indicator() for d in sets], axis=0)
        try:
            if len(sets) >= 2 and cover[0] == 0 and (cover[1:] == 1).all():
                partitions.append(pds_partition_sedf(group, sets, provenance))
            elif len(sets) >= 2 and (cover == 1).all():
                partitions.append(difference_set_partition_sedf(group, sets))
        except UniformityError as e:
            self.logger.info(f"Partition composition does not apply: {e}")

        if self.output_format(rc) == "json":
            text = JsonFormatter().render(rows + partitions)
        else:
            text = TsvFormatter().render(rows, columns=PDS_COLUMNS)
            for report in partitions:
                cert = report.certificate
                text += (
                    f"# partition sedf valid={str(cert.valid).lower()} "
                    f"empirical_lambda={report.empirical_lambda} stated_lambda={report.stated_lambda}"
                )
                if hasattr(report, "alternative_lambda"):
                    text += f" alternative_lambda={report.alternative_lambda}"
                text += "\n"
        positive = all(r.is_pds for r in rows)
        return self.finish(state, text, rows + partitions, positive)


class ScanWorkflow(SedfWorkflow):
    """Cyclotomic scan over prime powers."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        super().__init__("scan", config)

    def process(self, state: WorkflowState) -> WorkflowState:
        rc = self.run_config(state)
        toolkit = ToolkitConfig.model_validate(self.config)
        runner = TaskRunner(max_workers=toolkit.workers, timeout=toolkit.workflow.timeout)
        rows = scan_cyclotomic(
            rc.q_max or toolkit.scan.q_max,
            rc.m_min or toolkit.scan.m_min,
            max_order=self.max_order,
            runner=runner,
        )
        disagreements = [(r.q, r.e) for r in rows if not r.methods_agree]
        if disagreements:
            self.logger.error(f"Verification methods disagree at {disagreements}")
        text = get_formatter(self.output_format(rc)).render(rows, columns=SCAN_COLUMNS)
        positive = any(r.is_sedf for r in rows) and not disagreements
        return self.finish(state, text, rows, positive)


class SearchWorkflow(SedfWorkflow):
    """Exhaustive search in a small group."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        super().__init__("search", config)

    def process(self, state: WorkflowState) -> WorkflowState:
        rc = self.run_config(state)
        search_cfg = self.config.get("search", {})
        result = exhaustive_search(
            GroupSpec(rc.group),
            rc.m,
            rc.k,
            limit=rc.limit or search_cfg.get("max_nodes"),
            use_automorphisms=rc.use_automorphisms or search_cfg.get("use_automorphisms", False),
        )
        if not result.feasible:
            self.logger.warning(f"No search performed: {result.reason}")
        state["metadata"] = {
            "partial": result.partial,
            "nodes_visited": result.nodes_visited,
            "reason": result.reason,
        }
        text = self.render_certificates(rc, result.certificates)
        return self.finish(state, text, [result], bool(result.certificates))


class TuplesWorkflow(SedfWorkflow):
    """Feasible parameter tuples."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        super().__init__("tuples", config)

    def process(self, state: WorkflowState) -> WorkflowState:
        rc = self.run_config(state)
        tuples = feasible_tuples(rc.n_max, rc.m_min or 2)
        text = get_formatter(self.output_format(rc)).render(tuples, columns=TUPLE_COLUMNS)
        return self.finish(state, text, tuples, bool(tuples))


WORKFLOWS: Dict[str, Type[SedfWorkflow]] = {
    "field": FieldWorkflow,
    "cyclo": CycloWorkflow,
    "verify": VerifyWorkflow,
    "pds": PdsWorkflow,
    "scan": ScanWorkflow,
    "search": SearchWorkflow,
    "tuples": TuplesWorkflow,
}


def run_command(input_data: Dict[str, Any], config: Optional[Dict[str, Any]] = None) -> WorkflowState:
    """Build the workflow for input_data['command'] and run it on a fresh state."""
    command = input_data.get("command")
    if command not in WORKFLOWS:
        raise ValueError(f"Unknown command: {command}")
    workflow = WORKFLOWS[command](config)
    return workflow({"input_data": input_data})
