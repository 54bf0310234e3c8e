from exactnum.exceptions import ClosureError


class ParseError(ClosureError):
    """The problem text is not JSON."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f'{message} (line {line}, column {column})', line=line, column=column)


class SchemaError(ClosureError):
    """
    The problem is JSON but does not fit the command's schema.

    ``errors`` is a list of ``{"field": dotted path, "rule": message}``.
    """

    def __init__(self, errors):
        first = errors[0]
        where = first['field'] or 'problem'
        super().__init__(f'{where}: {first["rule"]}', errors=errors)
