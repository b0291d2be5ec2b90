"""Khovanov, nested Khovanov and odd Khovanov homology from PD codes, with
certificates for the isomorphisms between them."""

from .complex import (assemble_complex, build_hypercube, complex_for, face_cocycle,
                      solve_sign_assignment)
from .corpus import bundled, bundled_corpus, load_pd_file
from .diagram import LinkDiagram, PDError, parse_pd, trefoil_pd
from .equivalence import (compare_mod2, enumerate_sign_systems, verify_outer_face_invariance,
                          verify_sign_equivalence, verify_theorem1)
from .frobenius import builtin_system, check_relations, parametrized_system
from .homology import (graded_euler_characteristic, homology_table, kauffman_bracket_oracle,
                       smith_normal_form)
from .resolution import classify_saddle, nesting_depths, resolve

__version__ = "0.1.0"

__all__ = [
    "LinkDiagram", "PDError", "parse_pd", "trefoil_pd",
    "bundled", "bundled_corpus", "load_pd_file",
    "resolve", "nesting_depths", "classify_saddle",
    "builtin_system", "parametrized_system", "check_relations",
    "build_hypercube", "face_cocycle", "solve_sign_assignment", "assemble_complex",
    "complex_for",
    "homology_table", "smith_normal_form", "graded_euler_characteristic",
    "kauffman_bracket_oracle",
    "verify_theorem1", "enumerate_sign_systems", "verify_sign_equivalence", "compare_mod2",
    "verify_outer_face_invariance",
]
