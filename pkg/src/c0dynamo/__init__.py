"""Encoding c0 classes of sequences as conjugacy classes of cube diffeomorphisms.

The package builds, for every sequence in ``[1/4, 3/4]^N``, a diffeomorphism
of ``[0,1]^d`` made of disk twists on a strip decomposition, decodes the
sequence back from the dynamics, constructs explicit conjugacies between
systems of c0-equivalent sequences and certificates of non-conjugacy
otherwise.  A second part decides conjugacy of minimal 2-torus rotations
through the GL(2, Z) action.
"""

__version__ = "0.1.0"

from .analysis import (
    DecodeReport,
    EmptyStripError,
    InvariantViolationError,
    SmoothnessReport,
    decode,
    decode_strip,
    displacement_scan,
    smoothness_bound,
    smoothness_scan,
)
from .bump import BumpProfile, bump_derivative, bump_eval
from .conjugacy import (
    ConjugacyWitness,
    NonConjugacyCertificate,
    NotEquivalentError,
    build_certificate,
    build_witness,
    verify_certificate,
    verify_witness,
)
from .layout import DiskSpec, LayoutParams, Strip, containment_check, layout, strip_index
from .maps import TransportMap, TwistMap, transport_apply, transport_inverse, twist_apply, twist_inverse
from .sequences import C0Decision, C0Verdict, SequenceSpec, c0_equivalent
from .system import AssembledSystem, assemble
from .torus import (
    FormalReal,
    Refutation,
    TorusRotation,
    UnimodularWitness,
    apply_unimodular,
    decide_conjugacy,
    fixed_locus,
    is_minimal,
    orbit_sample,
)
