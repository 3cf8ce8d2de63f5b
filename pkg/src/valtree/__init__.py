"""Exact valuations, Bruhat-Tits tree actions and properness probes for linear groups."""
