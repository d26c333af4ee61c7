# Interfaccia a riga di comando, sweep e template