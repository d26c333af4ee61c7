# Configurazione: impostazioni pydantic-settings e file key=value
