"""Minimal reverse-mode automatic differentiation."""

from nti.ad.tensor import Tensor, Node, Graph, backward, as_tensor
from nti.ad.functions import matmul, transpose, add, add_n, sub, mul, \
    scale, shift, sigmoid, tanh, relu, absolute, elementwise, softmax, \
    concat_columns, concat, outer_broadcast, total, cross_entropy, \
    binary_cross_entropy, constant

__all__ = ['Tensor', 'Node', 'Graph', 'backward', 'as_tensor', 'matmul',
           'transpose', 'add', 'add_n', 'sub', 'mul', 'scale', 'shift',
           'sigmoid', 'tanh', 'relu', 'absolute', 'elementwise', 'softmax',
           'concat_columns', 'concat', 'outer_broadcast', 'total',
           'cross_entropy', 'binary_cross_entropy', 'constant']
