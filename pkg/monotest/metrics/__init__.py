"""
Exact metrics module for monotest

Contains exact combinatorial quantities of a function: distance to
monotonicity, violated edges, middle-layer violated-edge matchings, average
sensitivity and matchings of violating pairs with their length statistics.
"""
