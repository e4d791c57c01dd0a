"""
Tests for confsched.
"""
