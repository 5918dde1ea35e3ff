"""
Experiments feature module.

Reproducible runners for variance scans, exact siloed minima, the
random-observable identity, lemma checks and fixture demos, plus the CLI
commands and plots built on them.
"""
