# -*- coding: utf-8 -*-
"""Binary tree topologies over padded token sequences.

Nodes are labelled level by level from the leaves up: leaves take ids
``0..n−1`` left to right, the parents of adjacent leaf pairs follow, and the
root is the last node ``2n−2``. Node ``2n−2`` therefore plays the role of the
root representation fed to the task heads.
"""

from numbers import Integral

from nti.tools.exceptions import TopologyError

__docformat__ = 'restructuredtext'

PAD_LABEL = u"−"


def is_power_of_two(n):
    """Return True if `n` is a positive power of two."""
    return isinstance(n, Integral) and n >= 1 and (n & (n - 1)) == 0


def next_power_of_two(n):
    """Smallest power of two greater than or equal to `n` (n ≥ 1)."""
    p = 1
    while p < n:
        p *= 2
    return p


def pad_sequence(tokens, pad_symbol):
    """Append `pad_symbol` until the length is a power of two.

    The input is not modified; a new list is returned.
    """
    tokens = list(tokens)
    if not tokens:
        raise TopologyError("cannot pad an empty sequence")
    n = next_power_of_two(len(tokens))
    return tokens + [pad_symbol] * (n - len(tokens))


class TreeTopology(object):
    """Index structure of a binary tree over `n_leaves` leaves.

    Instances are immutable after construction. Per-node attributes are
    tuples indexed by node id: ``parent``, ``left``, ``right``, ``depth`` and
    ``span`` (half-open token range). ``is_pad`` flags padded leaves.
    """

    def __init__(self, n_leaves, parent, left, right, span, levels,
                 n_real=None, kind='balanced'):
        self._n_leaves = n_leaves
        self._parent = tuple(parent)
        self._left = tuple(left)
        self._right = tuple(right)
        self._span = tuple(span)
        self._levels = tuple(tuple(level) for level in levels)
        self._kind = kind
        n_real = n_leaves if n_real is None else n_real
        if not 1 <= n_real <= n_leaves:
            raise TopologyError("%d real tokens cannot fill %d leaves"
                                % (n_real, n_leaves))
        self._n_real = n_real

        depth = [0] * len(self._parent)
        for node in reversed(range(len(depth))):
            p = self._parent[node]
            if p is not None:
                depth[node] = depth[p] + 1
        self._depth = tuple(depth)

    @property
    def n_leaves(self):
        """Number of leaves, padded leaves included."""
        return self._n_leaves

    @property
    def n_real(self):
        """Number of leaves holding real tokens."""
        return self._n_real

    @property
    def n_nodes(self):
        """Total number of nodes: 2·n_leaves − 1."""
        return len(self._parent)

    @property
    def root(self):
        """Id of the root node (the last node)."""
        return self.n_nodes - 1

    @property
    def kind(self):
        """Either ``'balanced'`` or ``'left_branching'``."""
        return self._kind

    @property
    def parent(self):
        return self._parent

    @property
    def left(self):
        return self._left

    @property
    def right(self):
        return self._right

    @property
    def depth(self):
        return self._depth

    @property
    def span(self):
        return self._span

    @property
    def is_pad(self):
        """Tuple of booleans, one per leaf."""
        return tuple(i >= self._n_real for i in range(self._n_leaves))

    @property
    def levels(self):
        """Node ids grouped by evaluation level, leaves first."""
        return self._levels

    @property
    def max_depth(self):
        return max(self._depth)

    def is_leaf(self, node):
        return node < self._n_leaves

    def children(self, node):
        """Return the (left, right) child ids of a non-leaf node."""
        self.check_node(node)
        if self.is_leaf(node):
            raise TopologyError("leaf %d has no children" % node)
        return self._left[node], self._right[node]

    def internal_nodes(self):
        """Non-leaf node ids in bottom-up schedule order."""
        return [node for level in self._levels[1:] for node in level]

    def check_node(self, node):
        """Raise `TopologyError` unless `node` is a valid node id."""
        if not (isinstance(node, Integral) and 0 <= node < self.n_nodes):
            raise TopologyError("invalid node id %r for a tree of %d nodes"
                                % (node, self.n_nodes))

    def __repr__(self):
        return "TreeTopology(%s, n_leaves=%d, n_real=%d)" % (
            self._kind, self._n_leaves, self._n_real)


def build_full_binary_tree(n_leaves, n_real=None):
    """Build the balanced full binary tree over `n_leaves` leaves.

    Adjacent nodes of one level are paired under a common parent, level by
    level, until a single root remains.

    :parameters:
        :n_leaves: a power of two ≥ 1 (the padded sequence length)

    :keywords:
        :n_real: number of leading leaves holding real tokens
                 (default: all)
    """
    if not is_power_of_two(n_leaves):
        raise TopologyError("number of leaves must be a power of two, got %r"
                            % (n_leaves,))
    n_nodes = 2 * n_leaves - 1
    parent = [None] * n_nodes
    left = [None] * n_nodes
    right = [None] * n_nodes
    span = [None] * n_nodes

    level = list(range(n_leaves))
    for i in level:
        span[i] = (i, i + 1)
    levels = [level]
    next_id = n_leaves
    while len(level) > 1:
        upper = []
        for l, r in zip(level[0::2], level[1::2]):
            node = next_id
            next_id += 1
            left[node], right[node] = l, r
            parent[l] = parent[r] = node
            span[node] = (span[l][0], span[r][1])
            upper.append(node)
        levels.append(upper)
        level = upper

    return TreeTopology(n_leaves, parent, left, right, span, levels,
                        n_real=n_real, kind='balanced')


def build_left_branching_tree(n_leaves, n_real=None):
    """Build the chain tree composing leaves strictly left to right.

    Node ``n`` composes leaves 0 and 1; node ``n+j`` composes node ``n+j−1``
    with leaf ``j+1``. Any ``n_leaves ≥ 1`` is accepted.
    """
    if not (isinstance(n_leaves, Integral) and n_leaves >= 1):
        raise TopologyError("number of leaves must be positive, got %r"
                            % (n_leaves,))
    n_nodes = 2 * n_leaves - 1
    parent = [None] * n_nodes
    left = [None] * n_nodes
    right = [None] * n_nodes
    span = [(i, i + 1) for i in range(n_leaves)] + [None] * (n_leaves - 1)
    levels = [list(range(n_leaves))]
    prev = 0
    for j in range(1, n_leaves):
        node = n_leaves + j - 1
        left[node], right[node] = prev, j
        parent[prev] = parent[j] = node
        span[node] = (0, j + 1)
        levels.append([node])
        prev = node
    return TreeTopology(n_leaves, parent, left, right, span, levels,
                        n_real=n_real, kind='left_branching')


def bottom_up_schedule(t):
    """Return the evaluation levels of `t`, leaves first.

    Every node appears exactly once; each node's children appear in earlier
    levels; nodes of one level are ordered left to right.
    """
    return [list(level) for level in t.levels]


def node_span_label(t, node, tokens, pad_label=PAD_LABEL):
    """Return the surface phrase covered by `node`.

    Tokens beyond the real length of the tree are rendered as `pad_label`.
    """
    t.check_node(node)
    start, end = t.span[node]
    words = []
    for i in range(start, end):
        if i >= t.n_real or i >= len(tokens):
            words.append(pad_label)
        else:
            words.append(tokens[i])
    return u" ".join(words)
