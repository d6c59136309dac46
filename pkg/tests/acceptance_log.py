"""Per-criterion details recorded by the acceptance tests for the summary."""

DETAILS: dict[int, str] = {}


def note(number: int, text: str) -> None:
    DETAILS[number] = text
