"""
Integration tests per la CLI e la suite di validazione
"""
