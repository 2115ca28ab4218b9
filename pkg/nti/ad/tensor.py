# -*- coding: utf-8 -*-
"""Define-by-run tensors and reverse-mode differentiation.

Every primitive applied to a :class:`Tensor` that requires a gradient records
a :class:`Node` on its output. A :class:`Graph` is traced from a scalar loss
back to the leaves and :func:`backward` visits it once in reverse
topological order, accumulating vector-Jacobian products.
"""

import numpy as np

from nti.tools.exceptions import ShapeError

__docformat__ = 'restructuredtext'


class Node(object):
    """Record of one primitive application.

    :attributes:
        :op:      operation tag, e.g. ``"matmul"``
        :inputs:  tuple of input tensors in argument order
        :output:  the tensor produced
        :vjp:     callable mapping the output gradient to a tuple of input
                  gradients (``None`` for inputs that need none)
    """

    __slots__ = ('op', 'inputs', 'output', 'vjp')

    def __init__(self, op, inputs, output, vjp):
        self.op = op
        self.inputs = inputs
        self.output = output
        self.vjp = vjp

    def __repr__(self):
        return "Node(%s, %s)" % (self.op, self.output.shape)


class Tensor(object):
    """Dense real array with an optional gradient slot."""

    def __init__(self, data, requires_grad=False, name=None, dtype=None):
        """Wrap `data` into a tensor.

        :parameters:
            :data: array-like of real values

        :keywords:
            :requires_grad: whether backward should compute ∂loss/∂self
            :name:          optional label (parameter name)
            :dtype:         numpy dtype (default: dtype of `data`, or double)
        """
        if dtype is None:
            dtype = data.dtype if isinstance(data, np.ndarray) and \
                data.dtype.kind == 'f' else np.float64
        self.data = np.array(data, dtype=dtype)
        self.requires_grad = bool(requires_grad)
        self.name = name
        self.grad = None
        self.node = None

    @property
    def shape(self):
        """Shape of the underlying array."""
        return self.data.shape

    @property
    def size(self):
        """Number of entries."""
        return self.data.size

    @property
    def ndim(self):
        """Number of dimensions."""
        return self.data.ndim

    @property
    def dtype(self):
        return self.data.dtype

    @property
    def is_leaf(self):
        """A leaf was not produced by a recorded primitive."""
        return self.node is None

    def numpy(self):
        """Return a copy of the values."""
        return self.data.copy()

    def item(self):
        """Return the single value of a scalar tensor."""
        if self.data.size != 1:
            raise ShapeError("item() requires a single value, got shape %s"
                             % (self.shape,))
        return float(self.data.reshape(-1)[0])

    def zero_grad(self):
        """Reset the gradient slot to zeros."""
        self.grad = np.zeros_like(self.data)

    def __repr__(self):
        label = "" if self.name is None else ", name=%s" % self.name
        return "Tensor(shape=%s%s)" % (self.shape, label)


def as_tensor(x, dtype=None):
    """Return `x` unchanged if it is a tensor, else wrap it as a constant."""
    if isinstance(x, Tensor):
        return x
    return Tensor(x, dtype=dtype)


def record(op, inputs, value, vjp):
    """Create the output tensor of a primitive and record it if needed.

    The output requires a gradient iff one of the inputs does; constant
    sub-expressions are not recorded.
    """
    out = Tensor(value, dtype=value.dtype)
    if any(t.requires_grad for t in inputs):
        out.requires_grad = True
        out.node = Node(op, tuple(inputs), out, vjp)
    return out


class Graph(object):
    """Ordered list of recorded primitive applications.

    Nodes are stored in topological order: the inputs of every node are
    leaves or outputs of earlier nodes.
    """

    def __init__(self, nodes=None):
        self.nodes = list(nodes or [])

    def __len__(self):
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    @classmethod
    def trace(cls, loss):
        """Collect the nodes reachable from `loss` in topological order.

        The traversal is iterative and follows inputs in argument order, so
        the resulting order is deterministic.
        """
        nodes = []
        visited = set()
        if loss.node is None:
            return cls(nodes)
        stack = [(loss.node, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                nodes.append(node)
                continue
            if id(node) in visited:
                continue
            visited.add(id(node))
            stack.append((node, True))
            for t in reversed(node.inputs):
                if t.node is not None and id(t.node) not in visited:
                    stack.append((t.node, False))
        return cls(nodes)

    def leaves(self):
        """Return the distinct leaf tensors requiring a gradient."""
        seen = set()
        out = []
        for node in self.nodes:
            for t in node.inputs:
                if t.node is None and t.requires_grad and id(t) not in seen:
                    seen.add(id(t))
                    out.append(t)
        return out

    def depth(self):
        """Length of the longest chain of nodes (critical path)."""
        level = {}
        best = 0
        for node in self.nodes:
            d = 1 + max([level.get(id(t.node), 0) for t in node.inputs
                         if t.node is not None] + [0])
            level[id(node)] = d
            best = max(best, d)
        return best


def backward(loss, graph=None, leaves=None):
    """Propagate ∂loss/∂· from a scalar `loss` back to the leaves.

    Gradients are accumulated additively into the ``grad`` slot of every
    leaf that requires one, so a tensor feeding several consumers receives
    the sum of the contributions.

    :parameters:
        :loss:  scalar tensor (any shape with a single entry)

    :keywords:
        :graph:  a :class:`Graph` traced from `loss` (traced if omitted)
        :leaves: optional list of leaf tensors whose gradients are returned;
                 leaves disconnected from `loss` get a zero gradient

    :returns: dict mapping ``id(leaf)`` to its gradient array for the
              requested leaves (all reached leaves if `leaves` is None).
    """
    if loss.size != 1:
        raise ShapeError("backward requires a scalar loss, got shape %s"
                         % (loss.shape,))
    if graph is None:
        graph = Graph.trace(loss)

    grads = {id(loss): np.ones_like(loss.data)}
    reached = {}
    if loss.node is None and loss.requires_grad:
        reached[id(loss)] = loss

    for node in reversed(graph.nodes):
        g = grads.pop(id(node.output), None)
        if g is None:
            continue
        in_grads = node.vjp(g)
        for t, gt in zip(node.inputs, in_grads):
            if gt is None or not t.requires_grad:
                continue
            if t.node is None:
                reached[id(t)] = t
            key = id(t)
            if key in grads:
                grads[key] = grads[key] + gt
            else:
                grads[key] = gt

    result = {}
    for key, t in reached.items():
        g = grads.get(key)
        if g is None:
            continue
        g = g.reshape(t.shape).astype(t.dtype, copy=False)
        t.grad = g.copy() if t.grad is None else t.grad + g
        result[key] = g

    if leaves is not None:
        return dict((id(t), result.get(id(t), np.zeros_like(t.data)))
                    for t in leaves)
    return result
