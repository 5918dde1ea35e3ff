"""
Circuit model feature module.

Clifford-VQA circuits, their continuous and Clifford parameter points,
brickwork and fixture builders, and point sampling.
"""
