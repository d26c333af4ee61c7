"""
Benchmark dei modelli, dell'oracolo e degli sweep
"""
