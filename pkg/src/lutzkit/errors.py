class ParseError(ValueError):
    """Malformed text input (matrix, link, diagram, or open book file)."""
