"""
Test suite per Risonanza Accelerata
"""
