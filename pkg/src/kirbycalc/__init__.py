"""kirbycalc: exact Kirby-calculus bookkeeping for slicing obstructions.

From a knot presented as a braid closure, track the characteristic link
of the corresponding Kirby diagram through blow-ups, blow-downs and
handle slides with exact (b2, sigma) counters, and decide whether the
resulting spin 2-handlebody violates 4*b2 >= 5*|sigma| + 12, certifying
that the knot is not smoothly slice.
"""

from importlib import resources

from .braid import (
    BraidSyntaxError,
    BraidWord,
    ClosurePartition,
    TwistLocus,
    closure_components,
    format_braid_word,
    insert_full_twist,
    linking_matrix_from_braid,
    parse_braid_word,
    simplify_and_detect_unknot,
    torus_braid,
)
from .gf2 import CharacteristicSolutions, characteristic_sublinks, is_characteristic
from .invariants import (
    KnotInputError,
    alexander_from_seifert,
    alexander_polynomial,
    arf,
    arf_consistency,
    determinant,
    seifert_matrix_oracle,
)
from .laurent import ExactDivisionError, LaurentPolynomial, laurent_det
from .moves import (
    MoveError,
    PieceDecl,
    SessionState,
    apply_move,
    assert_unknot,
    blow_down,
    blow_up_coherent,
    blow_up_declared,
    blow_up_meridian,
    connected_sum,
    endgame,
    init_from_knot,
    init_from_pieces,
    replace_piece_asserted,
    replay_matches,
    slide_abstract,
    undo,
)
from .script import (
    ExpectFailure,
    ScriptRunError,
    ScriptSyntaxError,
    export_script,
    parse_script,
    print_script,
    run_script_file,
    run_script_text,
)
from .signature import exact_signature
from .state import (
    Component,
    FramedLinkState,
    ObstructionReport,
    TrustPoint,
    is_spin,
    obstruction_verdict,
)

__version__ = "0.1.0"


def bundled_script_path(name: str) -> str:
    """Filesystem path of a bundled .kmove script (fig8, fig2knot, ...)."""
    if not name.endswith(".kmove"):
        name += ".kmove"
    return str(resources.files(__name__) / "scripts" / name)
