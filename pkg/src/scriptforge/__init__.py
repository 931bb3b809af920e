"""scriptforge: interactive curation of machine-readable event scripts.

Humans author scripts (named complex events broken into ordered steps with
shared arguments) while the machine suggests ontology event types,
knowledge-base links for arguments, and steps the author may have missed.
"""

__version__ = "0.1.0"
