"""Web-agent actions and their strict text formats."""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum


class UnknownAction(ValueError):
    """Action text does not match any of the allowed formats."""


class ActionKind(Enum):
    CLICK = "Click"
    TYPE = "Type"
    WAIT = "Wait"
    UP = "UP"
    DOWN = "DOWN"
    LEFT = "LEFT"
    RIGHT = "RIGHT"
    FINISH = "FINISH"


ARROW_KINDS = frozenset({ActionKind.UP, ActionKind.DOWN, ActionKind.LEFT, ActionKind.RIGHT})


@dataclass(frozen=True)
class Action:
    kind: ActionKind
    label: int | None = None
    content: str | None = None

    def __post_init__(self):
        if self.kind is ActionKind.CLICK and self.label is None:
            raise ValueError("Click requires a label")
        if self.kind is ActionKind.TYPE and (self.label is None or self.content is None):
            raise ValueError("Type requires a label and content")


_CLICK = re.compile(r"Click \[(\d+)\]$")
_TYPE = re.compile(r"Type \[(\d+)\];\s*\[(.*)\]$", re.DOTALL)
_BARE = {kind.value: kind for kind in (ActionKind.WAIT, ActionKind.UP, ActionKind.DOWN,
                                       ActionKind.LEFT, ActionKind.RIGHT, ActionKind.FINISH)}


def parse_action(text: str) -> Action:
    text = text.strip()
    if text in _BARE:
        return Action(_BARE[text])
    if match := _CLICK.match(text):
        return Action(ActionKind.CLICK, label=int(match.group(1)))
    if match := _TYPE.match(text):
        return Action(ActionKind.TYPE, label=int(match.group(1)), content=match.group(2))
    raise UnknownAction(f"unrecognized action: {text!r}")


def format_action(action: Action) -> str:
    if action.kind is ActionKind.CLICK:
        return f"Click [{action.label}]"
    if action.kind is ActionKind.TYPE:
        return f"Type [{action.label}]; [{action.content}]"
    return action.kind.value
