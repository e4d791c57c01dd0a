"""
confsched package.

Ranks conference series of a bibliography by how urgently their next
proceedings should be harvested, and evaluates those rankings.
"""

__version__ = '0.1.0'
