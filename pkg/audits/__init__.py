# Audits Package
