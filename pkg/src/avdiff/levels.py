"""SAE driving-automation levels."""

import enum


class AutomationLevel(enum.IntEnum):
    """The six SAE levels, totally ordered L0 < L1 < ... < L5.

    L0-L2 assist the driver; L3-L5 perform the dynamic driving task under
    increasingly broad conditions.
    """

    L0 = 0
    L1 = 1
    L2 = 2
    L3 = 3
    L4 = 4
    L5 = 5

    def __str__(self):
        return self.name


def parse_level(text):
    """Parse 'L3' (or '3') into an :class:`AutomationLevel`."""
    name = text.strip().upper()
    if not name.startswith("L"):
        name = "L" + name
    try:
        return AutomationLevel[name]
    except KeyError:
        raise ValueError(f"unknown automation level: {text!r}") from None
