# Planners Package
