"""Exact arithmetic kernel: Q(i) scalars, polynomials, Sturm sequences, congruence."""

from .gaussrat import GaussRat, I, conj
from .linalg import (
    Diagonalization,
    RatFunc,
    charpoly_coeffs,
    congruence,
    diagonalize_symmetric,
    nullspace,
    poly_det,
    rank,
    rational_signature,
    signature_at,
    solve,
)
from .multipoly import X5, MultiPoly, cubic_ring
from .roots import (
    INF,
    IsolatedRoot,
    Order,
    compare_root_to_rational,
    count_real_roots,
    has_distinct_real_roots,
    isolate_real_roots,
    sign_at_root,
    sturm_chain,
)
from .upoly import UPoly, gcd, is_squarefree, squarefree_part
