"""
Рабочее пространство одного запуска: поле, H_q и кэши таблиц,
которые разделяют оракулы геометрической и спектральной сторон.
"""
import logging
import time
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from gl3trace.models.conjugacy import ClassData, Mat
from gl3trace.models.field import FieldCtx, FieldLevel
from gl3trace.models.halfspace import HPoint, OrbitTable
from gl3trace.services.gf_tower_service import build_field
from gl3trace.services.gl3_service import (
    centralizer_order_oracle,
    conjugacy_classes,
    enumerate_gl3,
    mat_inv,
    right_coset_transversal,
)
from gl3trace.services.halfspace_service import (
    base_point,
    build_orbit_table,
    enumerate_halfspace,
    k_mod_center,
    point_to_affine,
)

logger = logging.getLogger(__name__)


class TraceWorkspace:
    """Поле с башней и лениво построенные таблицы над ним."""

    def __init__(self, ctx: FieldCtx):
        if not ctx.has_tower:
            raise ValueError("the workspace needs the cubic tower")
        self.ctx = ctx
        self.profiles: Dict[Tuple[Mat, str], object] = {}
        self.gl2_classes: Dict[Tuple[int, int, int, int], List[Tuple[int, int, int, int]]] = {}
        self._centralizers: Dict[Tuple[Mat, FieldLevel], int] = {}
        # Если список задан, сюда пишутся пары (κ, Hf(κ)) из horocycle_transform
        self.hf_trace: Optional[List[Tuple[Tuple[int, int, int, int], object]]] = None

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def n(self) -> int:
        return self.ctx.n

    @property
    def q(self) -> int:
        return self.ctx.q

    @cached_property
    def p0(self) -> HPoint:
        return base_point(self.ctx)

    @cached_property
    def orbits(self) -> OrbitTable:
        started = time.monotonic()
        table = build_orbit_table(self.ctx)
        logger.info("Таблица K-орбит построена за %.1f с", time.monotonic() - started)
        return table

    @cached_property
    def k_reps(self) -> List[Mat]:
        return k_mod_center(self.ctx)

    @cached_property
    def gamma_elements(self) -> List[Mat]:
        return list(enumerate_gl3(self.ctx, FieldLevel.FP))

    @cached_property
    def transversal(self) -> List[Mat]:
        return right_coset_transversal(self.ctx)

    @cached_property
    def affine_pairs(self) -> List[Tuple[Mat, Mat]]:
        """(A_w, A_w⁻¹) для всех w ∈ H_q."""
        pairs = []
        for w in enumerate_halfspace(self.ctx):
            a = point_to_affine(self.ctx, w).as_matrix()
            pairs.append((a, mat_inv(self.ctx, a)))
        return pairs

    @cached_property
    def gamma_classes(self) -> List[ClassData]:
        return conjugacy_classes(self.ctx, FieldLevel.FP)

    @cached_property
    def g_classes(self) -> List[ClassData]:
        return conjugacy_classes(self.ctx, FieldLevel.FQ)

    def rep_of(self, z: HPoint) -> HPoint:
        return self.orbits.rep_of[z]

    def centralizer_order(self, m: Mat, level: FieldLevel) -> int:
        """Порядок централизатора оракулом, с кэшем."""
        key = (m, level)
        if key not in self._centralizers:
            self._centralizers[key] = centralizer_order_oracle(self.ctx, m, level)
        return self._centralizers[key]

    def __repr__(self):
        return f"<TraceWorkspace(p={self.p}, n={self.n}, q={self.q})>"


def open_workspace(
    p: int,
    n: int,
    poly: Optional[Sequence[int]] = None,
    delta_rule: str = "first-nonresidue",
) -> TraceWorkspace:
    """Построить поле с кубической башней и рабочее пространство над ним."""
    return TraceWorkspace(build_field(p, n, poly=poly, delta_rule=delta_rule, with_tower=True))
