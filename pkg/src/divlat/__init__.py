"""divlat: exact analysis of arbitrarily-high-power divisibility for
integer matrices and endomorphisms of quadratic-ring lattices."""

from .classify import (
    ClassifyReport,
    UnipotentCheck,
    classify_operator,
    finite_order,
    is_semisimple,
    jordan_chevalley,
    roots_of_unity_spectrum,
    unipotent_divisible_is_identity_check,
)
from .divisibility import (
    DEFAULT_MAX_CANDIDATES,
    CertKind,
    DetNotPower,
    Exhausted,
    Found,
    NegativeDetEvenPower,
    NilpotentRankBound,
    OrderObstruction,
    ProvedImpossible,
    RootSearchOutcome,
    SpectralObstruction,
    SpectrumRow,
    SpectrumTable,
    coprime_root,
    divisibility_spectrum,
    exhaustive_witness_scan,
    impossibility_certificates,
    realizable_orders,
    root_search,
    zero_plus_finite_order,
)
from .exactalg import (
    IntMatrix,
    Lattice,
    QMatrix,
    RatPoly,
    char_poly,
    companion_matrix,
    cyclotomic,
    cyclotomics_up_to_degree,
    hnf,
    image_lattice,
    kernel_saturated,
    min_poly,
    poly_gcd,
    restrict_to_lattice,
    snf,
    squarefree_part,
)
from .fitting import CleanSplit, FittingSplit, clean_split, fitting_decompose
from .numberring import (
    IntegerRing,
    OKModule,
    QuadraticOrder,
    UnitGroupDesc,
    ZZ,
    embed_ok_matrix,
    lchar,
    mult_hypothesis,
    ok_endomorphism_check,
    unit_group,
    unit_s_divisible,
)
from .supernat import (
    INF,
    AllFrom,
    Factorials,
    FiniteSet,
    Geometric,
    PrimeSet,
    Residue,
    SDescriptor,
    Supernatural,
    additive_hypothesis,
    gcd_sn,
    lcm_of,
    lcm_sn,
    mul_sn,
    nu,
    pi_S,
)
from .verifier import Scenario, TheoremReport, intro_scenarios, verify

__version__ = "0.1.0"
