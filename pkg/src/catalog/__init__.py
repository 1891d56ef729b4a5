"""Catalog of published bounds and the reproduction report"""

from .entries import CatalogEntry, catalog_list, get_entry, reference_variants, resolve_bound
from .reproduction import Comparison, EntryRow, ReproductionReport, compare_polynomials, reproduce_paper

__all__ = [
    "CatalogEntry",
    "Comparison",
    "EntryRow",
    "ReproductionReport",
    "catalog_list",
    "compare_polynomials",
    "get_entry",
    "reference_variants",
    "reproduce_paper",
    "resolve_bound",
]
