"""Text indexing by reduction to orthogonal range searching in rank space."""

from ._backend import BACKEND
from .approx import GapIndex, OneErrorIndex, build_gap_index, build_one_error_index, query_at_most_one, query_gap, query_one_mismatch
from .docs import RelevanceMeasure, TopKIndex, build_topk_index, list_documents, topk
from .geo import BinaryTrie, GeoTextIndex, NodeRange, build_geo_text, geo_range_report, node_range_decompose
from .grid import (RankGrid2, RankGrid3, WeightedGrid, range_count2, range_report2, range_successor_y,
                   report_5sided, sorted_report_2sided, sorted_report_3sided, topk_3sided)
from .lz import (LZParse, Lz77Index, ScqIndex, build_lz77_index, build_scq_index, ilcp, lz_conditional,
                 lz_decompress, lz_parse, primary_occurrences, scq)
from .restricted import (RestrictedIndex, build_restricted_index, non_overlapping, pri_count, pri_report,
                         substring_rank, substring_select, successive)
from .rmq import RmqStructure, bounded_report, build_rmq, rmq
from .text import (DocumentIndex, SaRange, SuffixIndex, SuffixTreeView, build_document_index, build_suffix_index,
                   build_tree_view, lcp_len, pattern_occurrences, sa_range)
from .wanc import LocusIndex, WeightedTree, build_weighted_tree, st_locus, weighted_ancestor

__version__ = "0.1.0"
