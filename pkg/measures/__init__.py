# Measures Package
