"""Generalized Adam with certified parameter plans."""

try:
    from . import _gadam as _ext
except ImportError:  # in-tree build: the extension sits beside the package
    import _gadam as _ext

__all__ = [name for name in dir(_ext) if not name.startswith("_")]
globals().update({name: getattr(_ext, name) for name in __all__})
