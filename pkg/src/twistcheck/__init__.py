"""twistcheck: arithmetic verification for quadratic twists of 15A1 and 21A1."""

from .arith import (
    NotSquarefree,
    ZeroInput,
    factorize,
    is_squarefree,
    kronecker,
    quad_field_data,
    valuation,
)
from .certify import (
    Certificate,
    admissible_primes,
    check_theorem,
    deep_certificate,
    reproduce_table,
)
from .curves import (
    CurveModel,
    Family,
    SingularCurve,
    base_curve,
    invariants,
    minimal_model,
    quadratic_twist,
)
from .frobenius import BadReduction, SmallPrime, an_coefficients, ap, is_ordinary
from .local_invariants import (
    ConductorReport,
    LocalData,
    NotMinimalAtP,
    conductor,
    tamagawa_product,
    tate_local,
    twisted_conductor_closed_form,
)
from .lseries import (
    LRatioResult,
    PrecisionExhausted,
    RecognitionFailed,
    RootNumberAmbiguous,
    algebraic_l_ratio,
    is_p_adic_unit,
    l_value_at_1,
    real_period,
)
from .torsion_galois import (
    GaloisImageVerdict,
    InvalidL,
    TorsionStructure,
    mod_l_image,
    torsion_subgroup,
    two_torsion_rational,
)

__version__ = "0.1.0"
