# Geometry Package
