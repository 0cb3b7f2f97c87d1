"""Exact desk-scale simulator and solver suite for the hidden subgroup problem."""

from hsp_lab.group_core import (
    CyclicGroup,
    DihedralGroup,
    GeneralizedDihedralGroup,
    Group,
    ProductGroup,
    Subgroup,
    SymmetricGroup,
    TableGroup,
    WreathSymZ2,
    coset_labels,
    dihedral_subgroups,
    is_normal,
    parse_group,
    quotient_group,
    subgroup_closure,
)

__all__ = [
    "CyclicGroup",
    "DihedralGroup",
    "GeneralizedDihedralGroup",
    "Group",
    "ProductGroup",
    "Subgroup",
    "SymmetricGroup",
    "TableGroup",
    "WreathSymZ2",
    "coset_labels",
    "dihedral_subgroups",
    "is_normal",
    "parse_group",
    "quotient_group",
    "subgroup_closure",
]

__version__ = "0.1.0"
