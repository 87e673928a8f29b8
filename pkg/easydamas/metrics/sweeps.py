"""
Threshold study: compression ratio, power error and solve time versus epsilon.
"""

import time

from easydamas.compression.wavelet import compress
from easydamas.metrics.power import integrated_power, power_error
from easydamas.metrics.report import SWEEPS_PER_REPORT
from easydamas.models.maps import BeamMap, PsfSystem
from easydamas.models.report import EpsilonSweepRow
from easydamas.models.solver import SolveConfig
from easydamas.solver.damas import damas_solve, embed_solution, restrict_system
from easydamas.utils.logger import get_logger

logger = get_logger(__name__)


def epsilon_sweep(
    b: BeamMap,
    system: PsfSystem,
    p0: float,
    epsilons: list[float],
    mode: str = "relative",
    stencil: str = "linear",
    solve_config: SolveConfig | None = None,
) -> list[EpsilonSweepRow]:
    """Compress, restrict and solve once per epsilon, in ascending order."""
    rows: list[EpsilonSweepRow] = []
    for epsilon in sorted(epsilons):
        start = time.perf_counter()
        cg = compress(b, epsilon, mode=mode, stencil=stencil)
        elapsed = time.perf_counter() - start

        reduced = restrict_system(system, b, cg)
        result = damas_solve(reduced.matrix, reduced.rhs, solve_config)
        p2 = integrated_power(embed_solution(result.x, cg, b.grid))
        rows.append(
            EpsilonSweepRow(
                epsilon=epsilon,
                sigma=cg.sigma,
                kept=cg.size,
                p2=p2,
                eta2=power_error(p0, p2),
                t2=result.seconds_per_iteration * SWEEPS_PER_REPORT,
            )
        )
        logger.info(
            f"epsilon={epsilon}: sigma={cg.sigma:.2f}, eta={rows[-1].eta2 * 100:.1f}%, "
            f"compression {elapsed * 1e3:.1f} ms"
        )
    return rows
