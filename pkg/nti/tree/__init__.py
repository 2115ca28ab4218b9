"""Tree topologies and evaluation schedules."""

from nti.tree.topology import TreeTopology, PAD_LABEL, pad_sequence, \
    build_full_binary_tree, build_left_branching_tree, bottom_up_schedule, \
    node_span_label, is_power_of_two, next_power_of_two

__all__ = ['TreeTopology', 'PAD_LABEL', 'pad_sequence',
           'build_full_binary_tree', 'build_left_branching_tree',
           'bottom_up_schedule', 'node_span_label', 'is_power_of_two',
           'next_power_of_two']
