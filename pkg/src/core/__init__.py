# Exact arithmetic, interval and proof engine modules
