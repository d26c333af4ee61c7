"""
Interazione di risonanza dipolo-dipolo tra due atomi uniformemente accelerati
e massimamente correlati, in prossimità di uno specchio piano perfettamente riflettente.
Accoppiamento al campo scalare e al campo elettromagnetico, con oracoli numerici indipendenti.
"""

__version__ = "0.1.0"
