"""Space-time trellis codes from convolutional generators: construction,
exact transfer-function analysis over block fading, generator search, and
Monte Carlo frame-error simulation."""

__version__ = "0.1.0"

from .channel import (ChannelConfig, ChannelRealization, ReceivedFrame,
                      assign_blocks, ebn0_to_esn0, sample_channel, transmit)
from .encoder import (EncoderConfig, GeneratorError, GeneratorSet, Trellis,
                      build_trellis, encode_bits, encode_frame, free_distance,
                      generators_from_string, is_catastrophic, map_symbol,
                      parse_generators)
from .hermitian import EigenSummary, NotPositiveSemidefiniteError, eigen_summary
from .pairwise import (PairwiseEvent, asymptotic_pep, block_difference_matrices,
                       chernoff_union_bound, pep_prefactor)
from .transfer import (AnalysisMode, CodeMetrics, EventPolynomial, TermBudgetError,
                       TruncationPolicy, build_error_labels, forward_polynomial,
                       polynomial_metrics, transfer_polynomial)
from .viterbi import DecodeResult, branch_metric, decode

__all__ = [name for name in dir() if not name.startswith("_")]
