"""
Boolean function module for monotest

Contains the bit-packed truth table, the query-counting oracle and the
named function families used as test corpus.
"""
