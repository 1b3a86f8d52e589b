"""
Services package for the forcing workbench.

One module per poset plus the shared order-theoretic core, the generic
filter simulator, the property suites and Hasse-diagram export.
"""
