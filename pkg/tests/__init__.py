"""
Test modules
"""
