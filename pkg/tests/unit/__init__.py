"""
monotest Unit Tests
"""
