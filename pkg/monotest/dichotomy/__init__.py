"""
Dichotomy module for monotest

Contains the exact verifiers for the violation-influence/matching
dichotomy, vertex-disjoint ascending routing between two layers and the
alternating-sequence construction that locates violated edges.
"""
