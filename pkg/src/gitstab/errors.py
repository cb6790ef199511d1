class GitStabError(Exception):
    pass


class InputError(GitStabError, ValueError):
    """Malformed or out-of-contract input."""


class ZeroTensorError(InputError):
    pass


class CertificateError(GitStabError):
    """An internal cross-check failed. Always a bug, never a verdict."""
