"""Supersingular curve constructions over small finite fields.

Two pipelines: a two-parameter family of superelliptic curves whose
supersingularity reduces to a polynomial criterion (p = 3 mod 4), and a
search for smooth plane quartic sections of Kummer surfaces (p = 1 mod 4),
plus smaller double- and triple-cover constructions.  Results are emitted
as JSON certificates that can be independently rechecked.
"""

__version__ = "1.0.0"
