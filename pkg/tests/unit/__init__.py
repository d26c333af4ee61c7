"""
Unit tests per modelli fisici, oracoli e configurazione
"""
