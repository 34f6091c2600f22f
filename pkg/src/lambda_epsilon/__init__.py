#!/usr/bin/env python3
"""
Lambda Epsilon - Difference Lambda-Calculus Toolkit

Parses difference lambda-terms, decides differential equivalence through
canonical forms, reduces and type-checks terms, evaluates them in finite
Abelian groups and runs seeded property suites against all of it.

Version: 0.1.0
"""

__version__ = "0.1.0"
__author__ = "Lambda Epsilon Team"
__description__ = "Difference lambda-calculus toolkit with a finite-group model"
