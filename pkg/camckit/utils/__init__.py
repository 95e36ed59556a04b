"""Module containing output, preset and meshing helpers for the camckit command line"""
