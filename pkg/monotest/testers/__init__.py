"""
Testers module for monotest

Contains the edge tester, the path tester and the repetition-based
combined and sensitivity-adaptive testers built from them.
"""
