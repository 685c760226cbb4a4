# Make the qtet directory an importable package for CI/runtime.
__all__ = []
