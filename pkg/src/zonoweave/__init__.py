"""Weakly separated set-systems, generalized zonogon tilings, weak Bruhat pairs."""
