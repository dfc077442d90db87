"""Hybrid early global router for mosaic floorplans."""

from .config import HYBRID, STAIRCASE_ONLY, RunConfig
from .docio import generate_mosaic, parse_floorplan, serialize_document
from .floorplan import Floorplan
from .router import route_all

__all__ = [
    "HYBRID",
    "STAIRCASE_ONLY",
    "Floorplan",
    "RunConfig",
    "generate_mosaic",
    "parse_floorplan",
    "route_all",
    "serialize_document",
]
