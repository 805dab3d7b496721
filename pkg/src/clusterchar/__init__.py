"""Exact checks of cluster-character multiplication along Auslander-Reiten
triangles: finite-dimensional algebras over F_p, quiver Grassmannian counts,
F-polynomials, and the type A polygon model."""

from .algebra import (
    Algebra,
    Quiver,
    Representation,
    ShortExactSeq,
    ar_sequence,
    build_algebra,
    ext1_dim,
    hom_dim,
    load_json,
    make_rep,
    tau,
)
from .character import (
    EXCHANGE_SIGN,
    b_matrix,
    c_prime,
    cluster_character,
    g_vector,
    verify_theorem,
)
from .grassmann import count_subreps, euler_char, f_polynomial, fiber_census, string_euler_char
from .laurent import LaurentPoly
from .typea import Arc, Triangulation, algebra_from_triangulation, enumerate_triangulations

__all__ = [
    "Algebra", "Quiver", "Representation", "ShortExactSeq", "ar_sequence", "build_algebra",
    "ext1_dim", "hom_dim", "load_json", "make_rep", "tau",
    "EXCHANGE_SIGN", "b_matrix", "c_prime", "cluster_character", "g_vector", "verify_theorem",
    "count_subreps", "euler_char", "f_polynomial", "fiber_census", "string_euler_char",
    "LaurentPoly", "Arc", "Triangulation", "algebra_from_triangulation", "enumerate_triangulations",
]

__version__ = "0.1.0"
