"""Combinatorial and measure-theoretic invariants of shift spaces.

Words are tuples of string symbols, languages are membership oracles
bounded by an explicit horizon, and every asymptotic statement made by
the reporting layer is tagged as evidence at that horizon.
"""

from .errors import (AlphabetMismatchError, AmbiguousDigitError,
                     CannotCloseError, ConvergenceError, EmptyShiftError,
                     EmptySupportError, EnumerationCapError,
                     HorizonExceededError, InfeasibleSetError,
                     InsufficientDigitsError, NonGrowingSubstitutionError,
                     NotAnAutomorphismError, ReducibleGraphError,
                     ReturnTimeCapError, ShiftlabError, UndefinedEntropyError,
                     UnsupportedSpecError, WrongStatusError)
from .language import (Alphabet, LanguageOracle, complexity,
                       enumerate_language, format_word, lex_compare,
                       oracle_from_membership, special_words, subwords)
from .sft import (BlockGraph, FiniteTypeSpec, build_block_graph, full_shift,
                  per_count, per_enumerate, per_le_enumerate,
                  periodic_count_le, scc_subgraphs, sft_cover, sft_entropy,
                  sft_equal, sft_language, sft_oracle)
from .forbidden import (LSReport, MFWTable, example_nonempty_shift, ls_report,
                        minimal_forbidden, tau_eval, well_approx_check,
                        window_density_report)
from .sofic import (BlockCode, LabeledGraph, apply_block_code,
                    block_graph_as_labeled, compose_codes, determinize,
                    finite_type_presentation, identity_code, is_sft, prune_labeled,
                    language_equal_exact, language_equal_up_to,
                    make_labeled_graph, mfw_length_set, sofic_entropy,
                    sofic_oracle, sofic_per_enumerate, theorem1_diagnostic)
from .measures import (CylinderMeasure, PeriodicSupportMeasure,
                       automorphism_invariance_check, cylinder_table,
                       eval_cylinder, max_entropy_decomposition, mu_y_average,
                       nu_cylinder_measure, nu_measure, parry_measure,
                       pushforward, weak_star_distance)
from .beta import (BetaExpansion, DigitStream, beta_algebraic, beta_decimal,
                   beta_expand, beta_language, beta_ls_diagnostic, beta_mfw,
                   beta_oracle, beta_presentation, beta_rational,
                   example_betashift, parse_beta_spec, star_expansion,
                   stream_alphabet, validate_expansion)
from .algebraic import AlgebraicNumber
from .dynamics import (InducedSpec, Substitution, aperiodicity_check,
                       bispecial_lengths, cassaigne_profile, induce_recode,
                       induced_data, speedup_gap_compare, subst_language,
                       subst_oracle)
from .shifts import (RealizedShift, ShiftDocument, document_from_object,
                     load_shift_document, parse_block_code,
                     parse_shift_document, periodic_points_le, realize,
                     serialize_shift_document, shift_entropy)

__version__ = "0.1.0"
