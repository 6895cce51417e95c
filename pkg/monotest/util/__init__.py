"""
Utilities for monotest
Contains configuration and logging systems
"""
