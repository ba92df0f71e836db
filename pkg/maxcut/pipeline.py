"""End-to-end max-cut drivers (CDA1, CDA2, CDA3) and the batch runner."""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import replace
from pathlib import Path
from typing import Callable, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, Field

from maxcut.compensation import compensate_counted
from maxcut.config import settings
from maxcut.dual import algorithm1, certify, is_dual_feasible
from maxcut.errors import MaxCutError, NumericError, exit_code_for
from maxcut.instance import (
    AlgorithmId,
    CutSolution,
    PrimalProblem,
    WeightedGraph,
    build_primal,
    make_solution,
    solution_from_primal,
)
from maxcut.oracle import brute_force_maxcut
from maxcut.parsers import EdgeWeightType, parse_tsplib_file
from maxcut.perturbation import (
    PerturbationPolicy,
    build_config,
    linear_bound,
    make_linear_perturbation,
)
from maxcut.reduction import reduce_problem, split_feasible

logger = logging.getLogger(__name__)


class SolveReport(BaseModel):
    """Outcome of one driver run on one instance."""

    instance: str = ""
    algorithm_id: AlgorithmId
    solution: CutSolution
    iterations_total: int = 0
    reductions: int = Field(default=0, ge=0)
    compensation_passes: int = 0
    certified_global: bool = False
    certificate_reasons: list[str] = Field(default_factory=list)
    stop_reason: Optional[str] = None
    wall_time: float = 0.0
    linear_magnitude: float = 0.0
    linear_ratio: Optional[float] = None
    linear_fraction: Optional[float] = None
    config_echo: dict = Field(default_factory=dict)
    policy: dict = Field(default_factory=dict)

    @property
    def cut_weight(self) -> float:
        return self.solution.cut_weight


class BatchRecord(BaseModel):
    """One (instance, algorithm) cell of a batch; error rows carry no report."""

    instance: str
    algorithm_id: AlgorithmId
    report: Optional[SolveReport] = None
    error: Optional[str] = None
    exit_code: int = 0

    @property
    def ok(self) -> bool:
        return self.report is not None


def _restrict_policy(policy: PerturbationPolicy, free: list[int], n: int) -> PerturbationPolicy:
    """Explicit alpha/beta gathered onto the surviving coordinates."""
    if len(free) == n:
        return policy
    update = {}
    if policy.explicit_alpha is not None:
        update["explicit_alpha"] = [policy.explicit_alpha[i] for i in free]
    if policy.explicit_beta is not None:
        update["explicit_beta"] = [policy.explicit_beta[i] for i in free]
    return policy.model_copy(update=update) if update else policy


def _cda(
    prob: PrimalProblem,
    policy: PerturbationPolicy,
    algorithm_id: AlgorithmId,
    delta_c: Optional[np.ndarray] = None,
    penalized: bool = True,
) -> SolveReport:
    """Dual ascent with the reduction loop, then compensation on ``prob`` itself."""
    start = time.perf_counter()
    working = prob if delta_c is None else prob.with_linear_shift(delta_c)

    x = np.zeros(prob.n)
    free_global = list(range(prob.n))
    sub = working
    iterations = 0
    reductions = 0
    first_check = None
    first_cfg = None
    stop_reason = None
    warm_sigma = None

    while free_global:
        cfg = build_config(
            sub,
            _restrict_policy(policy, free_global, prob.n),
            delta_c=None if delta_c is None else delta_c[free_global],
            penalized=penalized,
        )
        sigma0 = None
        if reductions:
            cfg = replace(cfg, max_iters=min(policy.max_iters, policy.reduced_max_iters))
            # the parent's sigma restricted to the free set, when still inside S+
            if is_dual_feasible(sub, cfg, warm_sigma):
                sigma0 = warm_sigma
        try:
            iterate, x_star = algorithm1(sub, cfg, sigma0=sigma0)
        except NumericError as e:
            raise type(e)(
                f"{algorithm_id.value}: dual solve on {sub.n} variables failed "
                f"after {reductions} reductions: {e}"
            ) from e
        iterations += iterate.iteration

        check = certify(sub, cfg, iterate)
        if first_check is None:
            first_check, first_cfg = check, cfg
            stop_reason = iterate.stop_reason.value if iterate.stop_reason else None
        if check.certified:
            x[free_global] = x_star
            break

        min_fixed = max(1, math.ceil(policy.fix_fraction * sub.n))
        fixed, free = split_feasible(iterate.x_bar, cfg.tau, min_fixed=min_fixed)
        fixed_local = [i for i in range(sub.n) if fixed[i] != 0.0]
        x[[free_global[i] for i in fixed_local]] = fixed[fixed_local]
        if not free:
            break
        step = reduce_problem(sub, fixed, free)
        warm_sigma = iterate.sigma[free]
        free_global = [free_global[i] for i in free]
        sub = step.reduced_problem
        reductions += 1
        logger.info(
            "%s: reduction %d fixed %d coordinates, %d remain",
            algorithm_id.value, reductions, len(fixed_local), step.m,
        )

    x, passes = compensate_counted(prob, x, policy.improve_tol, policy.pass_cap)

    reasons = list(first_check.reasons)
    linear_s = 0.0 if delta_c is None else float(np.abs(delta_c).sum())
    if linear_s >= 1.0:
        reasons.append("linear_perturbation_too_large")
    certified = not reasons

    solution = solution_from_primal(prob, x, algorithm_id, certified)
    ratio = fraction = None
    if linear_s >= 1.0:
        ratio, fraction = linear_bound(linear_s, solution.cut_weight)

    wall_time = time.perf_counter() - start
    logger.info(
        "%s: cut %.6g after %d iterations, %d reductions, %d compensation passes (%.3fs)",
        algorithm_id.value, solution.cut_weight, iterations, reductions, passes, wall_time,
    )
    return SolveReport(
        algorithm_id=algorithm_id,
        solution=solution,
        iterations_total=iterations,
        reductions=reductions,
        compensation_passes=passes,
        certified_global=certified,
        certificate_reasons=reasons,
        stop_reason=stop_reason,
        wall_time=wall_time,
        linear_magnitude=linear_s,
        linear_ratio=ratio,
        linear_fraction=fraction,
        config_echo=first_cfg.echo(),
        policy=policy.model_dump(mode="json"),
    )


def cda1(prob: PrimalProblem, policy: Optional[PerturbationPolicy] = None) -> SolveReport:
    """Quadratic (alpha, beta) perturbation with reduction and compensation."""
    return _cda(prob, policy or PerturbationPolicy(), AlgorithmId.CDA1)


def cda2(prob: PrimalProblem, policy: Optional[PerturbationPolicy] = None) -> SolveReport:
    """Linear perturbation c + delta_c, solved without the beta penalty.

    With linear_magnitude == 0 this is the cda1 path.
    """
    policy = policy or PerturbationPolicy()
    if policy.linear_magnitude == 0.0:
        return _cda(prob, policy, AlgorithmId.CDA2)
    delta_c = make_linear_perturbation(prob.n, policy)
    return _cda(prob, policy, AlgorithmId.CDA2, delta_c=delta_c, penalized=False)


def cda3(prob: PrimalProblem, policy: Optional[PerturbationPolicy] = None) -> SolveReport:
    """Linear perturbation combined with the beta-perturbed dual."""
    policy = policy or PerturbationPolicy()
    if policy.linear_magnitude == 0.0:
        return _cda(prob, policy, AlgorithmId.CDA3)
    delta_c = make_linear_perturbation(prob.n, policy)
    return _cda(prob, policy, AlgorithmId.CDA3, delta_c=delta_c)


DRIVERS: dict[AlgorithmId, Callable[[PrimalProblem, Optional[PerturbationPolicy]], SolveReport]] = {
    AlgorithmId.CDA1: cda1,
    AlgorithmId.CDA2: cda2,
    AlgorithmId.CDA3: cda3,
}


def solve_graph(
    graph: WeightedGraph,
    algorithm_id: AlgorithmId,
    policy: Optional[PerturbationPolicy] = None,
    oracle_limit: int = settings.oracle_limit,
    workers: Optional[int] = None,
) -> SolveReport:
    """Solve ``graph`` with one algorithm; the cut weight is measured on the graph."""
    algorithm_id = AlgorithmId(algorithm_id)
    policy = policy or PerturbationPolicy()

    if algorithm_id is AlgorithmId.ORACLE:
        start = time.perf_counter()
        solution = brute_force_maxcut(graph, limit=oracle_limit, workers=workers)
        return SolveReport(
            instance=graph.name,
            algorithm_id=algorithm_id,
            solution=solution,
            certified_global=True,
            wall_time=time.perf_counter() - start,
        )

    prob = build_primal(graph)
    report = DRIVERS[algorithm_id](prob, policy)
    solution = make_solution(
        graph, prob, report.solution.x, algorithm_id, report.certified_global
    )
    return report.model_copy(update={"instance": graph.name, "solution": solution})


def _load(
    source: Union[WeightedGraph, str, Path], metric: Optional[EdgeWeightType] = None
) -> WeightedGraph:
    if isinstance(source, WeightedGraph):
        return source
    return parse_tsplib_file(source, metric=metric)


def _source_name(source: Union[WeightedGraph, str, Path]) -> str:
    if isinstance(source, WeightedGraph):
        return source.name
    return Path(source).stem


def run_batch(
    sources: Sequence[Union[WeightedGraph, str, Path]],
    algorithms: Sequence[AlgorithmId],
    policy: Optional[PerturbationPolicy] = None,
    oracle_limit: int = settings.oracle_limit,
    max_workers: Optional[int] = settings.workers,
    progress_callback=None,
    metrics: Optional[dict[str, EdgeWeightType]] = None,
) -> list[BatchRecord]:
    """
    Run every algorithm on every instance.

    Parse and solve failures become error rows and the batch carries on.
    Records come back sorted by (instance, algorithm) whatever the
    completion order. ``metrics`` maps a file stem to the distance
    function its coordinates are read with.
    """
    policy = policy or PerturbationPolicy()
    algorithms = [AlgorithmId(a) for a in algorithms]
    records: list[BatchRecord] = []
    jobs: list[tuple[WeightedGraph, AlgorithmId]] = []

    for source in sources:
        try:
            graph = _load(source, (metrics or {}).get(_source_name(source)))
        except (MaxCutError, OSError) as e:
            logger.warning("could not load %s: %s", source, e)
            records.extend(
                BatchRecord(
                    instance=_source_name(source),
                    algorithm_id=alg,
                    error=str(e),
                    exit_code=exit_code_for(e),
                )
                for alg in algorithms
            )
            continue
        jobs.extend((graph, alg) for alg in algorithms)

    def run(graph: WeightedGraph, alg: AlgorithmId) -> BatchRecord:
        try:
            report = solve_graph(graph, alg, policy, oracle_limit=oracle_limit)
        except MaxCutError as e:
            logger.warning("%s on %s failed: %s", alg.value, graph.name, e)
            return BatchRecord(
                instance=graph.name, algorithm_id=alg, error=str(e), exit_code=exit_code_for(e)
            )
        return BatchRecord(instance=graph.name, algorithm_id=alg, report=report)

    total = len(jobs)
    if max_workers == 1 or total <= 1:
        for i, (graph, alg) in enumerate(jobs):
            records.append(run(graph, alg))
            if progress_callback:
                progress_callback(i + 1, total, graph.name)
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            futures = {executor.submit(run, graph, alg): (graph, alg) for graph, alg in jobs}
            for i, future in enumerate(as_completed(futures)):
                records.append(future.result())
                if progress_callback:
                    progress_callback(i + 1, total, futures[future][0].name)

    records.sort(key=lambda r: (r.instance, r.algorithm_id.value))
    return records
