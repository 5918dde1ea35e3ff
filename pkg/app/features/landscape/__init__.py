"""
Landscape feature module.

Null-direction detection, siloed-minimum search, independence filtering and
approximate local-minimum verification at Clifford points.
"""
