"""Document listing and top-k document retrieval.

Listing reports, for a pattern's SA-range ``[lo, hi]``, every rank whose
predecessor-document value is below ``lo``: each such rank is the leftmost
suffix of its document inside the range, so every document is reported
exactly once.

Top-k flattens, for every document ``d``, the suffix-tree nodes induced by
``d``'s leaves and their pairwise LCAs (the d-nodes) into one slot array in
preorder.  Each slot becomes a weighted point ``(slot, depth of its d-parent
+ 1)``; the d-nodes in the subtree of the pattern's locus ``v`` whose
d-parent lies above ``v`` are exactly one per document containing the
pattern, and they are found with a three-sided query.
"""

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .grid import WeightedGrid
from .text import DocumentIndex, SuffixTreeView


def list_documents(docidx, q):
    """Sorted ids of the documents containing ``q``."""
    rng = docidx.sa_range(q)
    if rng.empty:
        return []
    ranks = docidx.psi_rmq.bounded_report(rng.lo, rng.hi, rng.lo)
    return sorted(int(docidx.da[r - 1]) for r in ranks)


@dataclass(frozen=True)
class RelevanceMeasure:
    kind: str = "tf"
    docrank_table: tuple = None

    def __post_init__(self):
        if self.kind not in ("tf", "docrank"):
            raise ValueError(f"unknown measure {self.kind!r}")
        if self.kind == "docrank" and self.docrank_table is None:
            raise ValueError("docrank needs a per-document table")


TF = RelevanceMeasure("tf")


class TopKIndex:
    def __init__(self, docs, measure=TF, docidx=None):
        self.docidx = docidx if docidx is not None else DocumentIndex(docs)
        self.measure = measure
        di = self.docidx
        if measure.kind == "docrank" and len(measure.docrank_table) != di.k:
            raise ValueError("docrank table size differs from the collection size")
        tree = SuffixTreeView(di.gsa)
        self.tree = tree
        n = di.n
        da = di.da

        # d-leaves and LCAs of rank-adjacent d-leaves
        by_doc = np.lexsort((np.arange(n), da))
        leaf_doc = da[by_doc]
        same = leaf_doc[1:] == leaf_doc[:-1]
        left = by_doc[:-1][same]
        right = by_doc[1:][same]
        core = di.gsa._lcp_core
        if len(left):
            lca = tree.lcp_owner[core.query_many(np.ascontiguousarray(left, dtype=np.int64),
                                                 np.ascontiguousarray(right - 1, dtype=np.int64))]
        else:
            lca = np.zeros(0, dtype=np.int64)
        nodes = np.concatenate([tree.leaf_of[by_doc], lca])
        docs_of = np.concatenate([leaf_doc, leaf_doc[1:][same]])
        key = np.unique(docs_of * tree.size + nodes)
        d_doc = key // tree.size
        d_node = key % tree.size                 # sorted by (doc, preorder)

        parent_idx = kernels.virtual_parents(d_node, d_doc, tree.subtree_end)
        parent_depth = np.where(parent_idx >= 0, tree.depth[d_node[np.maximum(parent_idx, 0)]], -1)

        # slots: preorder over nodes, ascending doc id inside a node
        slot_order = np.lexsort((d_doc, d_node))
        self.slot_doc = d_doc[slot_order]
        self.slot_node = d_node[slot_order]
        self.slot_parent_depth = parent_depth[slot_order]
        self.n_slots = len(slot_order)
        self.d_parent = parent_idx               # in (doc, node) order, for inspection
        self.d_nodes = (d_doc, d_node)

        if measure.kind == "tf":
            # d-leaves under each slot's node: rank-sorted leaves per document
            stride = n + 1
            leaf_key = leaf_doc * stride + by_doc
            lo = tree.lo[self.slot_node] - 1
            hi = tree.hi[self.slot_node] - 1
            base = self.slot_doc * stride
            weight = (np.searchsorted(leaf_key, base + hi, "right")
                      - np.searchsorted(leaf_key, base + lo, "left"))
        else:
            table = np.asarray(measure.docrank_table, dtype=np.int64)
            weight = table[self.slot_doc - 1]
        self.slot_weight = weight.astype(np.int64)

        # [l_v, r_v] for every node, 1-based and inclusive (empty when l > r)
        self.node_l = np.searchsorted(self.slot_node, np.arange(tree.size), "left") + 1
        self.node_r = np.searchsorted(self.slot_node, tree.subtree_end, "left")
        self.wgrid = WeightedGrid(np.arange(1, self.n_slots + 1), self.slot_parent_depth + 1,
                                  self.slot_weight, labels=self.slot_doc, tie=self.slot_doc)

    def locus(self, q):
        """Node id of the locus of ``q``, or None when ``q`` does not occur."""
        rng = self.docidx.sa_range(q)
        if rng.empty:
            return None
        return self.tree.lca_of_ranks(rng.lo, rng.hi)

    def topk(self, q, k):
        """``[(doc id, weight), ...]`` for the ``k`` most relevant documents."""
        if k < 0:
            raise ValueError("k must be non-negative")
        v = self.locus(q)
        if v is None or k == 0:
            return []
        lv, rv = int(self.node_l[v]), int(self.node_r[v])
        if lv > rv:
            return []
        ids = self.wgrid.topk_ids(lv, rv, int(self.tree.depth[v]), k)
        return [(int(self.slot_doc[i]), int(self.slot_weight[i])) for i in ids]


def build_topk_index(docs, measure=TF):
    return TopKIndex(docs, measure)


def topk(tk, q, k):
    return tk.topk(q, k)
