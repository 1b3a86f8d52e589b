"""
Utilities package: errors, logging setup and canonical serialization.
"""
