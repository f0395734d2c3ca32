"""Deformation calculus of semicosimplicial DGLAs in exact arithmetic."""

__version__ = "0.1.0"
