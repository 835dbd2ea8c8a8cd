"""Spectra of sums of admissible coadjoint orbits."""
