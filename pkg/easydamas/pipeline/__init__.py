"""Pipeline package for EasyDamas."""

from easydamas.pipeline.case_pipeline import ARTIFACTS, CasePipeline, CaseStats

__all__ = ["ARTIFACTS", "CasePipeline", "CaseStats"]
