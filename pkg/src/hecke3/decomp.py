"""Assembling decomposition matrices from specialized modules.

Composition factors are found by exact character arithmetic: simple
reductions are collected in increasing dimension order, a word set is grown
until their trace vectors have full rank, and every generic character's
reduction is solved as a nonnegative integer combination.  Linear solves are
guided by a modular image and verified exactly, so the results are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .cyclo import CycloNum
from .modmath import BadPrime, ModContext, ModSpan, conductor_lcm, mod_solve
from .specialize import (
    DataIntegrityError,
    Specialization,
    SpecializedModule,
    burnside_simplicity,
    central_character_z0,
    one_dim_sub_or_quot,
    schur_value,
    specialize_model,
    SchurUnavailable,
)

WORD_LENGTH_CAP = 20


class EngineError(RuntimeError):
    pass


@dataclass
class Finding:
    kind: str       # "theorem-violation", "missing-simple", "criterion-disagreement", ...
    detail: str


@dataclass
class SimpleSet:
    columns: list[SpecializedModule]            # distinct simple modules, discovery order
    sources: list[list[int]]                    # generic character indices per column
    words: list[tuple[int, ...]]                # canonical word set
    char_vectors: dict[int, list[CycloNum]]     # per generic character index
    ctx: ModContext

    @property
    def m(self) -> int:
        return len(self.columns)


@dataclass
class BlockPartition:
    blocks: list[list[int]]                     # row index groups (1-based char indices)
    central_characters: list[CycloNum]
    defect_zero_rows: list[int]


@dataclass
class DecompositionMatrix:
    group_name: str
    rows: list[int]                              # generic character indices, file order
    row_dims: dict[int, int]
    columns: list[int]                           # column ids = position in SimpleSet
    column_dims: list[int]
    column_sources: list[list[int]]
    entries: dict[int, list[int]]                # per row: entry per column
    basic_set: list[int]                         # row index per column (aligned)
    row_permutation: list[int]                   # row indices: basic set first, rest after
    blocks: BlockPartition
    semisimple: bool
    theorem_holds: bool
    findings: list[Finding] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.columns)


def _words_in_order():
    """Positive words over (1, 2) in length-then-lexicographic order."""
    length = 0
    while True:
        for code in range(2**length):
            word = tuple(1 + ((code >> (length - 1 - i)) & 1) for i in range(length))
            yield word
        length += 1


def _extend_word_matrices(mod: SpecializedModule, mats, word):
    """Product matrix for `word`, reusing the stored prefix."""
    if word in mats:
        return mats[word]
    if not word:
        ident = linalg.scalar_mat(mod.dim, CycloNum.one(), CycloNum.zero())
        mats[word] = ident
        return ident
    prefix = _extend_word_matrices(mod, mats, word[:-1])
    gen = mod.a if word[-1] == 1 else mod.b
    out = linalg.mat_mul(prefix, gen)
    mats[word] = out
    return out


def collect_simple_reductions(sp: Specialization) -> tuple[SimpleSet, dict[int, SpecializedModule], list[Finding]]:
    """Specialize every model, keep the simple ones, dedupe by character."""
    group = sp.group
    findings: list[Finding] = []
    modules: dict[int, SpecializedModule] = {}
    order = sorted(group.models, key=lambda i: group.models[i].char.dim)
    ctx = ModContext(max(2, conductor_lcm(sp.root_values) if sp.root_values else 1))
    simples: list[SpecializedModule] = []
    simple_sources: list[int] = []
    for idx in order:
        mod = specialize_model(group.models[idx], sp)
        modules[idx] = mod
        if burnside_simplicity(mod, ctx=ctx):
            simples.append(mod)
            simple_sources.append(idx)

    # canonical word set: grow until the simple candidates' trace vectors
    # reach full rank (they are distinct simples up to duplicates, so the
    # final rank equals the number of distinct columns)
    word_mats: dict[int, dict] = {m.char_index: {} for m in simples}
    words: list[tuple[int, ...]] = []
    traces: dict[int, list[CycloNum]] = {m.char_index: [] for m in simples}

    def trace_of(mod, word):
        mat = _extend_word_matrices(mod, word_mats[mod.char_index], word)
        return linalg.trace(mat)

    gen = _words_in_order()
    # first, separate duplicates/grow rank: target = number of distinct columns,
    # found incrementally
    target_reached = False
    while not target_reached:
        word = next(gen)
        if len(word) > WORD_LENGTH_CAP:
            raise EngineError("word length cap exceeded while building the word set")
        words.append(word)
        for mod in simples:
            traces[mod.char_index].append(trace_of(mod, word))
        # dedupe by exact trace vectors, then test rank of distinct ones
        seen: dict[tuple, int] = {}
        distinct: list[int] = []
        for mod in simples:
            key = tuple(traces[mod.char_index])
            if key not in seen:
                seen[key] = mod.char_index
                distinct.append(mod.char_index)
        try:
            span = ModSpan(len(words), ctx.q)
            full = 0
            for ci in distinct:
                if span.add(ctx.reduce_vec(traces[ci])):
                    full += 1
            if full == len(distinct) and len(words) >= len(distinct):
                # modular full rank certifies exact full rank
                target_reached = True
        except BadPrime:
            ctx = ctx.next_context()

    # group sources by their column
    by_vec: dict[tuple, int] = {}
    columns: list[SpecializedModule] = []
    sources: list[list[int]] = []
    for mod, src in zip(simples, simple_sources):
        key = tuple(traces[mod.char_index])
        if key in by_vec:
            sources[by_vec[key]].append(src)
        else:
            by_vec[key] = len(columns)
            columns.append(mod)
            sources.append([src])

    char_vectors = {m.char_index: traces[m.char_index] for m in simples}
    simple_set = SimpleSet(columns, sources, words, char_vectors, ctx)
    return simple_set, modules, findings


def decompose_character(
    char_index: int,
    simples: SimpleSet,
    modules: dict[int, SpecializedModule],
    sp: Specialization,
    findings: list[Finding],
) -> list[int] | None:
    """Row of nonnegative integers expressing the reduction of char_index."""
    mod = modules[char_index]
    mats: dict = {}
    vec = [linalg.trace(_extend_word_matrices(mod, mats, w)) for w in simples.words]
    cols = [simples.char_vectors[c.char_index] for c in simples.columns]
    ctx = simples.ctx
    # modular solve, then exact verification
    try:
        matrix = [[ctx.reduce(cols[j][i]) for j in range(len(cols))] for i in range(len(simples.words))]
        rhs = [ctx.reduce(v) for v in vec]
        guess = mod_solve(matrix, rhs, ctx.q)
    except BadPrime:
        guess = None
    if guess is not None:
        lifted = [g if g <= ctx.q // 2 else g - ctx.q for g in guess]
        if all(0 <= g <= mod.dim for g in lifted):
            total = [CycloNum.zero()] * len(simples.words)
            for g, col in zip(lifted, cols):
                if g:
                    total = [t + CycloNum.from_rational(g) * c for t, c in zip(total, col)]
            if all((t - v).is_zero() for t, v in zip(total, vec)):
                return lifted
    # exact fallback
    matrix_exact = [[cols[j][i] for j in range(len(cols))] for i in range(len(simples.words))]
    solution = linalg.solve_exact(matrix_exact, vec)
    if solution is None:
        findings.append(
            Finding(
                "missing-simple",
                f"character {char_index}: reduction not in the span of collected "
                f"simples; substructure witnesses: "
                f"{len(one_dim_sub_or_quot(mod, sp))}",
            )
        )
        return None
    row = []
    for v in solution:
        if not v.is_rational() or v.as_rational().denominator != 1 or v.as_rational() < 0:
            findings.append(
                Finding(
                    "theorem-violation",
                    f"character {char_index}: non-integral or negative "
                    f"decomposition coefficient {v}",
                )
            )
            return None
        row.append(int(v.as_rational()))
    return row


def assemble_decomposition_matrix(sp: Specialization) -> DecompositionMatrix:
    group = sp.group
    simples, modules, findings = collect_simple_reductions(sp)
    n = len(group.descriptor.characters)
    entries: dict[int, list[int]] = {}
    for idx in sorted(group.models):
        row = decompose_character(idx, simples, modules, sp, findings)
        if row is None:
            row = [0] * simples.m
        entries[idx] = row

    # invariants: dimension conservation
    dims = {i: group.models[i].char.dim for i in group.models}
    col_dims = [c.dim for c in simples.columns]
    for idx, row in entries.items():
        total = sum(e * d for e, d in zip(row, col_dims))
        if total != dims[idx]:
            findings.append(
                Finding(
                    "theorem-violation",
                    f"character {idx}: dimension conservation fails "
                    f"({total} != {dims[idx]})",
                )
            )

    basic_set = _optimal_basic_set(entries, simples, findings)
    rows = sorted(entries)
    permutation = list(basic_set) + [r for r in rows if r not in set(basic_set)]
    blocks = block_partition_core(entries, modules, sp, findings)
    semisimple = simples.m == n
    theorem = verify_main_theorem_core(entries, simples, basic_set, findings)
    return DecompositionMatrix(
        group_name=group.descriptor.name,
        rows=rows,
        row_dims=dims,
        columns=list(range(simples.m)),
        column_dims=col_dims,
        column_sources=simples.sources,
        entries=entries,
        basic_set=basic_set,
        row_permutation=permutation,
        blocks=blocks,
        semisimple=semisimple,
        theorem_holds=theorem,
        findings=findings,
    )


def _optimal_basic_set(entries, simples: SimpleSet, findings) -> list[int]:
    """One row per column: unit row with the 1 in that column, smallest index."""
    basic: list[int] = []
    for j in range(simples.m):
        candidates = [
            idx
            for idx, row in entries.items()
            if row[j] == 1 and all(e == 0 for k, e in enumerate(row) if k != j)
        ]
        if not candidates:
            findings.append(
                Finding("theorem-violation", f"no unit row for column {j}")
            )
            basic.append(-1)
        else:
            basic.append(min(candidates))
    return basic


def block_partition_core(entries, modules, sp, findings) -> BlockPartition:
    rows = sorted(entries)
    parent = {r: r for r in rows}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    ncols = len(next(iter(entries.values()))) if entries else 0
    for j in range(ncols):
        touching = [r for r in rows if entries[r][j]]
        for other in touching[1:]:
            union(touching[0], other)

    groups: dict[int, list[int]] = {}
    for r in rows:
        groups.setdefault(find(r), []).append(r)
    blocks = sorted(groups.values(), key=lambda g: g[0])

    centrals = []
    omega = {r: central_character_z0(modules[r]) for r in rows}
    for blk in blocks:
        w = omega[blk[0]]
        for r in blk[1:]:
            if omega[r] != w:
                raise DataIntegrityError(
                    f"central characters differ inside a block: rows {blk[0]} and {r}"
                )
        centrals.append(w)

    defect0 = [blk[0] for blk in blocks if len(blk) == 1]

    # Schur cross-check when data is available for all characters
    if sp.group.schur and len(sp.group.schur) == len(sp.group.models):
        for r in rows:
            try:
                nonzero = not schur_value(r, sp).is_zero()
            except SchurUnavailable:
                break
            if nonzero != (r in defect0):
                findings.append(
                    Finding(
                        "schur-defect-mismatch",
                        f"character {r}: Schur vanishing disagrees with "
                        f"singleton-block defect-0 status",
                    )
                )
    return BlockPartition(blocks, centrals, defect0)


def verify_main_theorem_core(entries, simples, basic_set, findings) -> bool:
    n = len(entries)
    m = simples.m
    ok = m <= n
    if not ok:
        findings.append(Finding("theorem-violation", f"m={m} > n={n}"))
    if any(b < 0 for b in basic_set):
        ok = False
    for idx, row in entries.items():
        for e in row:
            if e < 0 or e > 2:
                findings.append(
                    Finding(
                        "theorem-violation",
                        f"character {idx}: entry {e} outside {{0,1,2}}",
                    )
                )
                ok = False
    if any(f.kind in ("theorem-violation", "missing-simple") for f in findings):
        ok = False
    return ok
