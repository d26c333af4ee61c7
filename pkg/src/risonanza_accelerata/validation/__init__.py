"""Oracoli indipendenti e suite di validazione."""
