"""
alignment.py

Minimal-cost edit alignment between a reference and a hypothesis unit
sequence (words or characters). On equal cost the backtrace prefers
match, then substitute, then delete, then insert.
"""

from typing import List, Sequence

from data.models import EditAlignment, EditOp, EditOpType


def _cost_matrix(ref: Sequence[str], hyp: Sequence[str]) -> List[List[int]]:
    rows, cols = len(ref) + 1, len(hyp) + 1
    dist = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        dist[i][0] = i
    for j in range(cols):
        dist[0][j] = j
    for i in range(1, rows):
        r = ref[i - 1]
        row, prev = dist[i], dist[i - 1]
        for j in range(1, cols):
            if r == hyp[j - 1]:
                row[j] = prev[j - 1]
            else:
                row[j] = 1 + min(prev[j - 1], prev[j], row[j - 1])
    return dist


def align(ref: Sequence[str], hyp: Sequence[str]) -> EditAlignment:
    dist = _cost_matrix(ref, hyp)
    ops: List[EditOp] = []
    i, j = len(ref), len(hyp)
    n_del = n_ins = n_sub = 0
    while i > 0 or j > 0:
        here = dist[i][j]
        if i > 0 and j > 0 and ref[i - 1] == hyp[j - 1] and here == dist[i - 1][j - 1]:
            ops.append(EditOp(EditOpType.MATCH, ref[i - 1], hyp[j - 1], i - 1, j - 1))
            i, j = i - 1, j - 1
        elif i > 0 and j > 0 and here == dist[i - 1][j - 1] + 1:
            ops.append(EditOp(EditOpType.SUBSTITUTE, ref[i - 1], hyp[j - 1], i - 1, j - 1))
            n_sub += 1
            i, j = i - 1, j - 1
        elif i > 0 and here == dist[i - 1][j] + 1:
            ops.append(EditOp(EditOpType.DELETE, ref[i - 1], None, i - 1, None))
            n_del += 1
            i -= 1
        else:
            # insertions sit before ref[i]
            ops.append(EditOp(EditOpType.INSERT, None, hyp[j - 1], i, j - 1))
            n_ins += 1
            j -= 1
    ops.reverse()
    return EditAlignment(D=n_del, I=n_ins, S=n_sub, L=len(ref), ops=tuple(ops))
