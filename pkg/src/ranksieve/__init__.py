"""
Rank bounds for elliptic curves over Q: class-group 2-ranks of cubic
2-division subfields via an NFS-style relation sieve and GF(2) linear
algebra, plus the explicit-formula zero-sum bound on the analytic rank.
"""

__version__ = "0.1.0"
