"""Exact certificates for elementary symplectic Witt groups and unimodular rows."""

from .field import GF, QQ, FieldSpec
from .groebner import Budget, BudgetExceeded, GroebnerBasis, buchberger, normal_form
from .matrix import AltMat, Mat, NotAlternating, det_division_free, pfaffian, perp, psi
from .poly import ParseError, Poly, PolyRing
from .ring import NotUnit, Ring, RingElement, RingSpec, invert_unit, lift_one, make_ring, ring
from .rows import (
    NotUnimodular,
    Relation,
    UmRow,
    act_row,
    certify_row,
    koszul_homotopy,
    lemma_chain,
    swan_towber_complete,
    vaserstein,
    verify_relation,
)
from .witt import (
    CertificateError,
    ElementaryWord,
    EquivCert,
    Transvection,
    Verdict,
    WittRep,
    eta,
    eta_product_cert,
    field_equiv_cert,
    neutral,
    symplectic_reduce,
    verify_equiv,
    witt_neg,
    witt_sum,
)

__version__ = "0.1.0"
