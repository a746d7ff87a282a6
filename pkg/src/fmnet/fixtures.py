"""Bundled example models."""

from __future__ import annotations

from importlib import resources

from .cnf import CnfFormula
from .feature_model import FeatureModel, fm_to_cnf, parse_fm


def coreboot_graphics_text() -> str:
    """Dialect source of the coreboot graphics-initialization fragment."""
    return (resources.files("fmnet") / "data" / "coreboot_graphics.fm").read_text("utf-8")


def coreboot_graphics_model() -> FeatureModel:
    return parse_fm(coreboot_graphics_text())


def coreboot_graphics_formula() -> CnfFormula:
    return fm_to_cnf(coreboot_graphics_model())
