"""
Harness module for monotest

Contains seeded experiment runners, the statistics used to judge them and
the command-line surface.
"""
