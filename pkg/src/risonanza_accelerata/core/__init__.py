# Modelli core, errori e utilità numeriche