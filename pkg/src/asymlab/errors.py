"""Exception hierarchy. Every domain error raised by the library derives from AsymlabError."""

from __future__ import annotations


class AsymlabError(Exception):
    """Base class for all domain errors (CLI exit code 1)."""


# --- structure validation ---------------------------------------------------

class InvalidStructure(AsymlabError):
    """A raw structure failed validation."""


class OutOfRange(InvalidStructure):
    def __init__(self, what: str, value: int, n: int):
        super().__init__(f"{what} {value} outside 0..{n - 1}")
        self.value = value


class RepeatInRow(InvalidStructure):
    def __init__(self, row: int, symbol: int):
        super().__init__(f"symbol {symbol} repeated in row {row}")
        self.row = row
        self.symbol = symbol


class RepeatInColumn(InvalidStructure):
    def __init__(self, col: int, symbol: int):
        super().__init__(f"symbol {symbol} repeated in column {col}")
        self.col = col
        self.symbol = symbol


class InadmissibleOrder(InvalidStructure):
    def __init__(self, n: int, reason: str):
        super().__init__(f"order {n} inadmissible: {reason}")
        self.n = n


class MalformedBlock(InvalidStructure):
    def __init__(self, block):
        super().__init__(f"malformed block {block!r}")
        self.block = block


class PairCoveredTwice(InvalidStructure):
    def __init__(self, pair: tuple[int, int]):
        super().__init__(f"pair {pair} covered by more than one block")
        self.pair = pair


class PairUncovered(InvalidStructure):
    def __init__(self, pair: tuple[int, int]):
        super().__init__(f"pair {pair} not covered by any block")
        self.pair = pair


class OddOrder(InvalidStructure):
    def __init__(self, n: int):
        super().__init__(f"one-factorizations need an even number of points, got {n}")
        self.n = n


class FactorNotPerfectMatching(InvalidStructure):
    def __init__(self, index: int, reason: str):
        super().__init__(f"factor {index} is not a perfect matching: {reason}")
        self.index = index


class EdgeRepeated(InvalidStructure):
    def __init__(self, edge: tuple[int, int]):
        super().__init__(f"edge {edge} appears in more than one factor")
        self.edge = edge


class EdgeMissing(InvalidStructure):
    def __init__(self, edge: tuple[int, int]):
        super().__init__(f"edge {edge} missing from every factor")
        self.edge = edge


# --- permanents and rectangles ----------------------------------------------

class RectangleFull(AsymlabError):
    """No row can be appended to a rectangle with k = n completed rows."""


class DimensionTooLarge(AsymlabError):
    def __init__(self, n: int, cap: int):
        super().__init__(f"permanent of order {n} exceeds the cap {cap}")
        self.n = n
        self.cap = cap


class MissingEpsilon(AsymlabError):
    """A lower-bound formula carrying epsilon was evaluated without one."""


# --- search and enumeration --------------------------------------------------

class CapExceeded(AsymlabError):
    def __init__(self, what: str, n: int, cap: int):
        super().__init__(f"{what} at n={n} exceeds the configured cap {cap}")
        self.n = n
        self.cap = cap


class VisitorAbort(AsymlabError):
    """Raised by a visitor callback to terminate an enumeration early."""


class ResourceLimit(AsymlabError):
    def __init__(self, nodes: int):
        super().__init__(f"automorphism search exceeded the node budget ({nodes} nodes)")
        self.nodes = nodes


class NotFound(AsymlabError):
    """A bounded integer search ran out without locating its target."""


# --- group actions -----------------------------------------------------------

class NotAnAutomorphism(AsymlabError):
    """The supplied permutation does not stabilize the structure."""


class HasFixedVertex(AsymlabError):
    def __init__(self, vertex: int):
        super().__init__(f"permutation fixes vertex {vertex}")
        self.vertex = vertex


class BoundViolated(AsymlabError):
    """A proven inequality failed on real data; this always indicates a bug."""


# --- graphs -------------------------------------------------------------------

class NotRegular(AsymlabError):
    def __init__(self, u: int, v: int, du: int, dv: int):
        super().__init__(f"vertices {u} and {v} have degrees {du} != {dv}")
        self.witness = (u, v)


class NotStronglyRegular(AsymlabError):
    def __init__(self, pair: tuple[int, int], reason: str):
        super().__init__(f"pair {pair}: {reason}")
        self.witness = pair


class KindMismatch(AsymlabError):
    """A graph was paired with a structure that does not generate it."""
