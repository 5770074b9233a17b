"""unihr: HR service for higher-education institutions.

Runs the academic grade-appointment procedure as an auditable state
machine, tracks appointment validity and expiry warnings, and keeps
researcher-registry, bibliography and document-reference records.
"""

__version__ = "0.1.0"
