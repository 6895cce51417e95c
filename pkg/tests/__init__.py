"""
monotest Test Suite
"""
