"""Polygon realizations of the reduced sine-Gordon and sine-Gordon Y-systems."""
