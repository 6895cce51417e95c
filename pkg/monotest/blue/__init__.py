"""
Blue-blue lab for monotest

Exact and sampled probabilities that one path tester draw lands on two
points of a fixed set of middle-layer points (the blue set).
"""
