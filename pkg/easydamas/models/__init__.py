"""Models package for EasyDamas."""

from easydamas.models.base import BaseModel, FrozenModel
from easydamas.models.compression import CompressedGrid, NestedGrids
from easydamas.models.geometry import ArraySetup, ScanGrid, SpacingCheck
from easydamas.models.maps import BeamMap, PsfSystem, SteeringSet
from easydamas.models.report import (
    Attribution,
    BenchStats,
    CaseReport,
    Disc,
    EpsilonSweepRow,
    ScalingRow,
    SourcePower,
)
from easydamas.models.scene import SourceEntry, SourceScene, SpectralData
from easydamas.models.solver import RestrictedSystem, SolveConfig, SolveResult

__all__ = [
    "ArraySetup",
    "Attribution",
    "BaseModel",
    "BeamMap",
    "BenchStats",
    "CaseReport",
    "CompressedGrid",
    "Disc",
    "EpsilonSweepRow",
    "FrozenModel",
    "NestedGrids",
    "PsfSystem",
    "RestrictedSystem",
    "ScalingRow",
    "ScanGrid",
    "SolveConfig",
    "SolveResult",
    "SourceEntry",
    "SourcePower",
    "SourceScene",
    "SpacingCheck",
    "SpectralData",
    "SteeringSet",
]
