"""betagap: a laboratory for Gaussian beta-ensembles, their singular locus and quadric topology"""

__version__ = "0.1.0"
