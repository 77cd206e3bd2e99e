"""Shared helpers for the HTTP resources."""

from fastapi import HTTPException, status

from src.preftree.core import DataFileError, NumericalError, PrefTreeError


def http_error(error: PrefTreeError) -> HTTPException:
    """Translate a domain error into an HTTP error."""
    if isinstance(error, DataFileError):
        code = status.HTTP_404_NOT_FOUND
    elif isinstance(error, NumericalError):
        code = status.HTTP_422_UNPROCESSABLE_ENTITY
    else:
        code = status.HTTP_400_BAD_REQUEST
    detail = {"message": error.message}
    if error.step:
        detail["step"] = error.step
    return HTTPException(status_code=code, detail=detail)
