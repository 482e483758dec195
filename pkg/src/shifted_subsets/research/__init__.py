"""Seeded experiment drivers and the identity verification suite."""
