"""Modelli fisici: unità naturali, geometria, campo scalare e campo elettromagnetico."""
