from ._quotshrink import (
    Perm,
    PermGroup,
    QuotientRep,
    QuotshrinkError,
    alternating,
    coset_action,
    cyclic,
    direct_product,
    embed_quotient,
    embed_quotient_radical,
    is_minimal_normal,
    min_degree,
    min_faithful_rep,
    normal_closure,
    pgaml2,
    pgl2,
    problem_json,
    psl2,
    socle_decomposition,
    symmetric,
    verify,
    wreath_imprimitive,
    wreath_product_action,
)

__all__ = [
    "Perm",
    "PermGroup",
    "QuotientRep",
    "QuotshrinkError",
    "alternating",
    "coset_action",
    "cyclic",
    "direct_product",
    "embed_quotient",
    "embed_quotient_radical",
    "is_minimal_normal",
    "min_degree",
    "min_faithful_rep",
    "normal_closure",
    "pgaml2",
    "pgl2",
    "problem_json",
    "psl2",
    "socle_decomposition",
    "symmetric",
    "verify",
    "wreath_imprimitive",
    "wreath_product_action",
]
