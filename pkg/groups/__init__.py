# Groups Package
