"""
Hypercube module for monotest

Contains points and layers of the directed hypercube, the path tester's
parameter derivation, uniform path sampling and exact sampling probabilities.
"""
