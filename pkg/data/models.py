from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Tuple

class TokenKind(str, Enum):
    KEYWORD = "keyword"
    IDENTIFIER = "identifier"
    SYMBOL = "symbol"
    NUMBER_LITERAL = "number_literal"
    STRING_LITERAL = "string_literal"

class ErrorType(str, Enum):
    WORD = "word"
    SYMBOL = "symbol"
    SPACE = "space"

class EditOpType(str, Enum):
    MATCH = "match"
    DELETE = "delete"
    INSERT = "insert"
    SUBSTITUTE = "substitute"


###############################################################################
# Ink
###############################################################################

@dataclass(frozen=True)
class InkPoint:
    """One sampled pen position. y grows downwards; t is ms since sample start."""
    x: float
    y: float
    t: float

    def __post_init__(self):
        if self.x < 0 or self.y < 0 or self.t < 0:
            raise ValueError(f"InkPoint coordinates must be >= 0, got ({self.x}, {self.y}, {self.t})")


@dataclass(frozen=True)
class Stroke:
    points: Tuple[InkPoint, ...]

    def __post_init__(self):
        if not self.points:
            raise ValueError("a stroke needs at least one point")
        for prev, cur in zip(self.points, self.points[1:]):
            if cur.t < prev.t:
                raise ValueError("timestamps must be non-decreasing within a stroke")

    @property
    def start_time(self) -> float:
        return self.points[0].t

    @property
    def y_min(self) -> float:
        return min(p.y for p in self.points)

    @property
    def y_max(self) -> float:
        return max(p.y for p in self.points)

    @property
    def height(self) -> float:
        return self.y_max - self.y_min

    @property
    def midpoint(self) -> float:
        return (self.y_min + self.y_max) / 2.0


@dataclass(frozen=True)
class InkSample:
    """
    Ordered pen strokes for one handwritten code sample.
    Strokes are kept in first-point timestamp order.
    """
    sample_id: str
    writer_id: str
    strokes: Tuple[Stroke, ...]

    def __post_init__(self):
        starts = [s.start_time for s in self.strokes]
        if starts != sorted(starts):
            raise ValueError("strokes must be ordered by first-point timestamp")

    def __len__(self):
        return len(self.strokes)


@dataclass(frozen=True)
class LineGroup:
    stroke_indices: Tuple[int, ...]
    vertical_band: Tuple[float, float]

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.stroke_indices, self.stroke_indices[1:])):
            raise ValueError("stroke indices must be strictly increasing")
        if self.vertical_band[0] > self.vertical_band[1]:
            raise ValueError("vertical band must be (y_min, y_max)")


###############################################################################
# Grammar / pipeline
###############################################################################

@dataclass(frozen=True)
class StatementClass:
    name: str
    requires_trailing_colon: bool = False

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Production:
    """
    Left-to-right token pattern of one statement class. Elements are drawn from
    keyword / name / identifier / symbol / literal / tail.
    """
    statement_class: StatementClass
    pattern: Tuple[str, ...]


@dataclass(frozen=True)
class Token:
    """
    One lexical unit of a statement.
    space_before records whether whitespace preceded the token in the raw line;
    role marks production-designated positions (e.g. "name" for a def name).
    """
    text: str
    kind: TokenKind
    space_before: bool = True
    role: Optional[str] = None

    def __post_init__(self):
        if not self.text:
            raise ValueError("token text must be non-empty")
        if self.kind == TokenKind.SYMBOL and any(ch.isalnum() for ch in self.text):
            raise ValueError(f"symbol token contains alphanumerics: {self.text!r}")


@dataclass(frozen=True)
class StatementDiagnostics:
    unbalanced_brackets: int = 0
    flagged_tokens: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.unbalanced_brackets < 0:
            raise ValueError("unbalanced_brackets cannot be negative")


###############################################################################
# Metrics
###############################################################################

@dataclass(frozen=True)
class EditOp:
    op: EditOpType
    ref_unit: Optional[str] = None
    hyp_unit: Optional[str] = None
    ref_index: Optional[int] = None
    hyp_index: Optional[int] = None


@dataclass(frozen=True)
class EditAlignment:
    D: int
    I: int
    S: int
    L: int
    ops: Tuple[EditOp, ...] = ()

    def __post_init__(self):
        if min(self.D, self.I, self.S, self.L) < 0:
            raise ValueError("alignment counts must be >= 0")
        if self.D + self.S + self.matches != self.L:
            raise ValueError("D + S + matches must equal L")

    @property
    def matches(self) -> int:
        return sum(1 for op in self.ops if op.op == EditOpType.MATCH)

    @property
    def cost(self) -> int:
        return self.D + self.I + self.S

    def replay(self, ref: Sequence[str]) -> list:
        """Apply the op sequence to ref, producing the hypothesis units."""
        out = []
        ref_pos = 0
        for op in self.ops:
            if op.op == EditOpType.MATCH:
                out.append(ref[ref_pos])
                ref_pos += 1
            elif op.op == EditOpType.SUBSTITUTE:
                out.append(op.hyp_unit)
                ref_pos += 1
            elif op.op == EditOpType.DELETE:
                ref_pos += 1
            else:
                out.append(op.hyp_unit)
        return out


@dataclass(frozen=True)
class ErrorBreakdown:
    word_errors: int = 0
    symbol_errors: int = 0
    space_errors: int = 0

    def __post_init__(self):
        if min(self.word_errors, self.symbol_errors, self.space_errors) < 0:
            raise ValueError("error counts must be >= 0")

    def __add__(self, other: "ErrorBreakdown") -> "ErrorBreakdown":
        return ErrorBreakdown(
            self.word_errors + other.word_errors,
            self.symbol_errors + other.symbol_errors,
            self.space_errors + other.space_errors,
        )

    @property
    def total(self) -> int:
        return self.word_errors + self.symbol_errors + self.space_errors

    def get(self, error_type: ErrorType) -> int:
        return {
            ErrorType.WORD: self.word_errors,
            ErrorType.SYMBOL: self.symbol_errors,
            ErrorType.SPACE: self.space_errors,
        }[ErrorType(error_type)]


@dataclass(frozen=True)
class SampleResult:
    sample_id: str
    writer_id: str
    wer: float
    cer: float
    breakdown: ErrorBreakdown = field(default_factory=ErrorBreakdown)


@dataclass(frozen=True)
class GroupSummary:
    sample_id: str
    count: int
    mean_wer: float
    mean_cer: float
    mean_word_errors: float
    mean_symbol_errors: float
    mean_space_errors: float


###############################################################################
# Noisy channel / corpus
###############################################################################

@dataclass(frozen=True)
class InjectionRecord:
    """position is the offset in the noisy line where `corrupted` starts."""
    line_index: int
    position: int
    error_type: ErrorType
    original: str
    corrupted: str

    def __post_init__(self):
        if self.original == self.corrupted:
            raise ValueError("an injection must change the text")


@dataclass(frozen=True)
class FunctionSample:
    source_lines: Tuple[str, ...]
    origin_path: str
    start_line: int

    @property
    def origin(self) -> str:
        return f"{self.origin_path}:{self.start_line}"

    @property
    def text(self) -> str:
        return "\n".join(self.source_lines)

    def __len__(self):
        return len(self.source_lines)
