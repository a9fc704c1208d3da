"""Low-level XML plumbing: a position-tracking element loader and a writer.

Built on expat so every node carries its source line/column; the strict
category grammars in :mod:`tenantconf.codec` and the registry/tokens file
readers sit on top of this.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from xml.parsers import expat
from xml.sax.saxutils import escape


class XmlStructureError(Exception):
    """Raised by the loader on non-well-formed or mixed-content input."""

    def __init__(self, line: int, column: int, detail: str):
        super().__init__(f"{line}:{column}: {detail}")
        self.line = line
        self.column = column
        self.detail = detail


@dataclass
class Node:
    """One XML element: either a container (children) or a leaf (text)."""

    tag: str
    line: int
    column: int
    text: str = ""
    children: list["Node"] = field(default_factory=list)
    has_attributes: bool = False

    def child_tags(self) -> list[str]:
        return [c.tag for c in self.children]


def load_tree(data: bytes) -> Node:
    """Parse UTF-8 XML bytes into a Node tree.

    Raises XmlStructureError for malformed XML, attributes on any element,
    or mixed content (non-whitespace text alongside child elements).
    """
    parser = expat.ParserCreate("utf-8")
    root: list[Node] = []
    stack: list[Node] = []
    pending_text: list[str] = []

    def flush_text(into: Node) -> None:
        text = "".join(pending_text)
        pending_text.clear()
        if into.children and text.strip():
            raise XmlStructureError(
                into.line, into.column, f"mixed content under <{into.tag}>"
            )
        if not into.children:
            into.text += text

    def start(tag: str, attrs: dict) -> None:
        node = Node(
            tag,
            parser.CurrentLineNumber,
            parser.CurrentColumnNumber + 1,
            has_attributes=bool(attrs),
        )
        if attrs:
            raise XmlStructureError(
                node.line, node.column, f"attributes not allowed on <{tag}>"
            )
        if stack:
            parent = stack[-1]
            if pending_text and "".join(pending_text).strip():
                raise XmlStructureError(
                    node.line, node.column, f"mixed content under <{parent.tag}>"
                )
            pending_text.clear()
            parent.children.append(node)
        else:
            root.append(node)
        stack.append(node)

    def end(tag: str) -> None:
        node = stack.pop()
        flush_text(node)

    def chars(text: str) -> None:
        pending_text.append(text)

    parser.StartElementHandler = start
    parser.EndElementHandler = end
    parser.CharacterDataHandler = chars
    try:
        parser.Parse(data, True)
    except expat.ExpatError as exc:
        raise XmlStructureError(
            exc.lineno, exc.offset + 1, expat.errors.messages[exc.code]
        ) from None
    if not root:
        raise XmlStructureError(1, 1, "empty document")
    return root[0]


class XmlWriter:
    """Canonical writer: 2-space indentation, UTF-8, one trailing newline."""

    def __init__(self):
        self._parts: list[str] = []
        self._depth = 0

    def open(self, tag: str) -> None:
        self._parts.append(f"{'  ' * self._depth}<{tag}>\n")
        self._depth += 1

    def close(self, tag: str) -> None:
        self._depth -= 1
        self._parts.append(f"{'  ' * self._depth}</{tag}>\n")

    def leaf(self, tag: str, value: str) -> None:
        self._parts.append(f"{'  ' * self._depth}<{tag}>{escape(value)}</{tag}>\n")

    def bytes(self) -> bytes:
        return "".join(self._parts).encode("utf-8")
