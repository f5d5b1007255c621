"""simpcat: an exact workbench for finite simplicial sets, nerves,
quasicategory checks, Dold-Kan, chain-complex factorizations, fibration
analysis of finite categories, and Rezk nerves.

Every verdict is decided by finite enumeration; procedures that are
colimits in nature (localization, cofibrant factorization) take an
explicit fuel budget and refuse rather than guess.
"""

__version__ = "0.1.0"
