def get_version():
    """Get the version of gaussbeam"""
    try:
        from .. import _version

        return _version.__version__
    except ImportError:
        return "unknown version"
