"""Both sides of the genus-zero LG/CY correspondence for Gorenstein
Calabi-Yau hypersurfaces in weighted projective spaces."""

__version__ = "0.1.0"
