"""Hypothesis strategies built on the seeded generators."""
import random

from hypothesis import strategies as st

from ontomodal.generators import random_formula, random_modal

seeds = st.integers(min_value=0, max_value=2**32 - 1)
formulas = seeds.map(lambda s: random_formula(random.Random(s), size=12))
atemporal = seeds.map(lambda s: random_formula(random.Random(s), size=10, temporal=False))
modal = seeds.map(lambda s: random_modal(random.Random(s), depth=3, size=7))
