"""papseries: enumeration and asymptotic series analysis of
pattern-avoiding permutations.

Subpackage map:

* permutations  - avoider enumeration, symmetries, Wilf classification
* dataset       - embedded avoider counts for the 16 length-5 classes
* series        - coefficient sequences, b-file/json/csv formats
* ratio         - ratio-method estimators for power-law asymptotics
* stretched     - stretched-exponential exponent/constant estimators
* fitting       - sliding-window direct fits
* stieltjes     - S-fractions, Hankel positivity, growth lower bounds
* dapprox       - differential approximants and series extension
* dyck          - height-weighted Dyck-path oracle with known asymptotics
* analysis      - end-to-end pipelines
* cli           - command-line front end (`papseries ...`)
"""

from .precision import precision, set_precision
from .series import ExactSeries, export, ingest_bfile

__all__ = ["precision", "set_precision", "ExactSeries", "export",
           "ingest_bfile"]

__version__ = "0.1.0"
