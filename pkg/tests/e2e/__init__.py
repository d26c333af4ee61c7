"""
End-to-end tests: figura, sweep e validazione da riga di comando
"""
