"""Feasibility audits for linear schemes.

Three properties make a scheme feasible:

 * decodability — any K surviving storage nodes plus any K_B readable
   SR nodes determine the message exactly;
 * security — the erased storage nodes plus the unread SR nodes carry
   zero information about the message;
 * SR recovery — all N storage nodes together determine the full SR
   word (so fresh entanglement can be re-established after repair).

For a linear scheme with uniform independent inputs each property is
an exact rank condition on the stacked generator, checked here with
sparse exact elimination.  A brute-force entropy oracle (full input
enumeration, exact rational entropies in base-q units) provides an
independent cross-check at small sizes.

Pattern convention: storage and SR nodes are numbered from 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import (
    Infeasible,
    InconsistentObservation,
    LengthMismatch,
    NoSolution,
    PatternMismatch,
    TooLarge,
    TooManyPatterns,
)
from .field import Field
from .linalg import Matrix
from .schemes import CodeSpec, LinearScheme

PATTERN_CAP = 10**6
ORACLE_CAP = 2**22
AUDIT_JSON_VERSION = 1


@dataclass(frozen=True)
class ErasurePattern:
    """Which storage nodes survive and which SR nodes are readable."""

    surviving_storage: tuple[int, ...]
    surviving_sr: tuple[int, ...]

    @classmethod
    def make(cls, storage, sr) -> "ErasurePattern":
        return cls(tuple(sorted(storage)), tuple(sorted(sr)))

    def validate(self, spec: CodeSpec) -> None:
        ks, kb = self.surviving_storage, self.surviving_sr
        if len(set(ks)) != len(ks) or len(set(kb)) != len(kb):
            raise PatternMismatch("repeated node index")
        if len(ks) != spec.K:
            raise PatternMismatch(
                f"need exactly {spec.K} surviving storage nodes, got {ks}"
            )
        if len(kb) != spec.K_B:
            raise PatternMismatch(
                f"need exactly {spec.K_B} surviving SR nodes, got {kb}"
            )
        if any(not 1 <= n <= spec.N for n in ks):
            raise PatternMismatch(f"storage node out of range in {ks}")
        if any(not 1 <= i <= spec.N_B for i in kb):
            raise PatternMismatch(f"SR node out of range in {kb}")

    def erased_storage(self, spec: CodeSpec) -> tuple[int, ...]:
        alive = set(self.surviving_storage)
        return tuple(n for n in range(1, spec.N + 1) if n not in alive)

    def erased_sr(self, spec: CodeSpec) -> tuple[int, ...]:
        alive = set(self.surviving_sr)
        return tuple(i for i in range(1, spec.N_B + 1) if i not in alive)


def all_patterns(spec: CodeSpec, cap: int = PATTERN_CAP) -> list[ErasurePattern]:
    """Every pattern, lexicographic in (storage set, SR set)."""
    total = comb(spec.N, spec.K) * comb(spec.N_B, spec.K_B)
    if total > cap:
        raise TooManyPatterns(f"{total} patterns exceeds cap {cap}")
    return [
        ErasurePattern(ks, kb)
        for ks in combinations(range(1, spec.N + 1), spec.K)
        for kb in combinations(range(1, spec.N_B + 1), spec.K_B)
    ]


# -- sparse exact elimination -----------------------------------------


class _Eliminator:
    """Incremental row-space builder over sparse dict rows.

    Rows are {column: nonzero value}.  Inserted rows are forward-reduced
    so pivot rows keep distinct leading columns; the number of pivots
    with leading column < t equals the rank of the first t columns of
    everything inserted, regardless of insertion order.
    """

    __slots__ = ("field", "pivots")

    def __init__(self, field: Field):
        self.field = field
        self.pivots: dict[int, dict[int, int]] = {}

    def reduce(self, row: dict[int, int]) -> dict[int, int]:
        """Eliminate row against current pivots; return the residual."""
        pivots = self.pivots
        f = self.field
        if f.m == 1:
            p = f.p
            while row:
                c = min(row)
                piv = pivots.get(c)
                if piv is None:
                    return row
                factor = row[c]
                for col, pv in piv.items():
                    nv = (row.get(col, 0) - factor * pv) % p
                    if nv:
                        row[col] = nv
                    elif col in row:
                        del row[col]
        else:
            while row:
                c = min(row)
                piv = pivots.get(c)
                if piv is None:
                    return row
                factor = row[c]
                for col, pv in piv.items():
                    nv = f.sub(row.get(col, 0), f.mul(factor, pv))
                    if nv:
                        row[col] = nv
                    elif col in row:
                        del row[col]
        return row

    def insert(self, row: dict[int, int]) -> int | None:
        """Add a row; return its pivot column, or None if dependent."""
        row = self.reduce(dict(row))
        if not row:
            return None
        c = min(row)
        inv = self.field.inv(row[c])
        if inv != 1:
            mul = self.field.mul
            row = {col: mul(v, inv) for col, v in row.items()}
        self.pivots[c] = row
        return c


def _observation_rows(
    scheme: LinearScheme,
    gen_rows: list[list[int]],
    storage_nodes: tuple[int, ...],
    sr_nodes: tuple[int, ...],
) -> tuple[list[dict[int, int]], int, int]:
    """Sparse rows of [node columns | SR selectors]; returns
    (rows, width_node_part, total_width)."""
    spec = scheme.spec
    cols = [c for n in storage_nodes for c in scheme.node_columns(n - 1)]
    w_nodes = len(cols)
    rows = []
    for grow in gen_rows:
        row = {}
        for pos, c in enumerate(cols):
            v = grow[c]
            if v:
                row[pos] = v
        rows.append(row)
    sr_w = spec.sr_node_len
    for pos_i, i in enumerate(sr_nodes):
        for j in range(sr_w):
            in_row = spec.msg_len + (i - 1) * sr_w + j
            rows[in_row][w_nodes + pos_i * sr_w + j] = 1
    return rows, w_nodes, w_nodes + len(sr_nodes) * sr_w


def _decodable(scheme, gen_rows, pattern: ErasurePattern) -> bool:
    spec = scheme.spec
    rows, _, w_obs = _observation_rows(
        scheme, gen_rows, pattern.surviving_storage, pattern.surviving_sr
    )
    # append message selector columns; decodable iff they add no rank
    for d in range(spec.msg_len):
        rows[d][w_obs + d] = 1
    elim = _Eliminator(scheme.field)
    ok = True
    for row in rows:
        lead = elim.insert(row)
        if lead is not None and lead >= w_obs:
            ok = False
            break
    return ok


def _secure(scheme, gen_rows, pattern: ErasurePattern) -> bool:
    spec = scheme.spec
    rows, _, _ = _observation_rows(
        scheme,
        gen_rows,
        pattern.erased_storage(spec),
        pattern.erased_sr(spec),
    )
    m = spec.msg_len
    elim = _Eliminator(scheme.field)
    for row in rows[m:]:  # the SR + local-randomness rows
        elim.insert(row)
    # message rows must already lie in that row space
    return all(not elim.reduce(dict(row)) for row in rows[:m])


def _sr_recoverable(scheme, gen_rows) -> bool:
    spec = scheme.spec
    w = spec.storage_len
    m = spec.msg_len
    elim = _Eliminator(scheme.field)
    ok = True
    for d, grow in enumerate(gen_rows):
        row = {pos: v for pos, v in enumerate(grow) if v}
        if m <= d < m + spec.sr_len:
            row[w + (d - m)] = 1  # SR selector column
        lead = elim.insert(row)
        if lead is not None and lead >= w:
            ok = False
            break
    return ok


def check_decodability(scheme: LinearScheme, pattern: ErasurePattern) -> bool:
    """Do the pattern's survivors determine the message?"""
    pattern.validate(scheme.spec)
    return _decodable(scheme, scheme.stacked_generator().rows, pattern)


def check_security(scheme: LinearScheme, pattern: ErasurePattern) -> bool:
    """Is the erased view statistically independent of the message?"""
    pattern.validate(scheme.spec)
    return _secure(scheme, scheme.stacked_generator().rows, pattern)


def check_sr_recovery(scheme: LinearScheme) -> bool:
    """Do all N storage nodes together determine the full SR word?"""
    return _sr_recoverable(scheme, scheme.stacked_generator().rows)


@dataclass(frozen=True)
class PatternVerdict:
    pattern: ErasurePattern
    decodable: bool
    secure: bool


@dataclass(frozen=True)
class AuditReport:
    spec: CodeSpec
    verdicts: tuple[PatternVerdict, ...]
    sr_recovery: bool
    passed: bool

    def to_json(self) -> dict:
        s = self.spec
        return {
            "version": AUDIT_JSON_VERSION,
            "kind": "audit-report",
            "params": {
                "N": s.N,
                "K": s.K,
                "N_B": s.N_B,
                "K_B": s.K_B,
                "q": s.q,
                "kappa": s.kappa,
                "lambda0": f"{s.lambda0.numerator}/{s.lambda0.denominator}",
                "lambdaB": f"{s.lambdaB.numerator}/{s.lambdaB.denominator}",
                "L": s.L,
            },
            "patterns": [
                {
                    "surviving_storage": list(v.pattern.surviving_storage),
                    "surviving_sr": list(v.pattern.surviving_sr),
                    "decodable": v.decodable,
                    "secure": v.secure,
                }
                for v in self.verdicts
            ],
            "sr_recovery": self.sr_recovery,
            "summary": {
                "patterns_checked": len(self.verdicts),
                "all_decodable": all(v.decodable for v in self.verdicts),
                "all_secure": all(v.secure for v in self.verdicts),
                "sr_recovery": self.sr_recovery,
            },
            "passed": self.passed,
        }


def audit(scheme: LinearScheme, pattern_cap: int = PATTERN_CAP) -> AuditReport:
    """Run all three checks over every erasure pattern."""
    spec = scheme.spec
    gen_rows = scheme.stacked_generator().rows
    verdicts = []
    for pattern in all_patterns(spec, pattern_cap):
        verdicts.append(
            PatternVerdict(
                pattern,
                _decodable(scheme, gen_rows, pattern),
                _secure(scheme, gen_rows, pattern),
            )
        )
    sr_ok = _sr_recoverable(scheme, gen_rows)
    passed = sr_ok and all(v.decodable and v.secure for v in verdicts)
    return AuditReport(spec, tuple(verdicts), sr_ok, passed)


# -- decoding ---------------------------------------------------------


def observation_matrix(scheme: LinearScheme, pattern: ErasurePattern) -> Matrix:
    """Dense map from input (y0, b, z) to the decoder's observation."""
    spec = scheme.spec
    gen = scheme.stacked_generator()
    cols = [
        c for n in pattern.surviving_storage for c in scheme.node_columns(n - 1)
    ]
    node_part = gen.take_cols(cols)
    sel_cols = []
    sr_w = spec.sr_node_len
    for i in pattern.surviving_sr:
        for j in range(sr_w):
            col = [0] * spec.input_dim
            col[spec.msg_len + (i - 1) * sr_w + j] = 1
            sel_cols.append(col)
    sel = Matrix(scheme.field, sel_cols, spec.input_dim).transpose() \
        if sel_cols else Matrix.zero(scheme.field, spec.input_dim, 0)
    return Matrix.hstack(node_part, sel)


def decoder_matrix(scheme: LinearScheme, pattern: ErasurePattern) -> Matrix:
    """T with observation . T = y0 for every consistent observation."""
    pattern.validate(scheme.spec)
    spec = scheme.spec
    m_obs = observation_matrix(scheme, pattern)
    proj = Matrix.vstack(
        Matrix.identity(scheme.field, spec.msg_len),
        Matrix.zero(scheme.field, spec.sr_len + spec.L, spec.msg_len),
    )
    try:
        t_rows = m_obs.transpose().solve_left_matrix(proj.transpose())
    except NoSolution:
        raise Infeasible(
            "pattern does not determine the message for this scheme"
        ) from None
    return t_rows.transpose()


def decode(
    scheme: LinearScheme,
    pattern: ErasurePattern,
    node_blocks: list[list[int]],
    sr_blocks: list[list[int]],
) -> list[int]:
    """Recover the message from surviving node and SR contents.

    Blocks are given in ascending node order matching the pattern.
    """
    pattern.validate(scheme.spec)
    spec = scheme.spec
    if len(node_blocks) != spec.K or any(
        len(b) != spec.kappa for b in node_blocks
    ):
        raise LengthMismatch(
            f"need {spec.K} storage blocks of {spec.kappa} dits"
        )
    if len(sr_blocks) != spec.K_B or any(
        len(b) != spec.sr_node_len for b in sr_blocks
    ):
        raise LengthMismatch(
            f"need {spec.K_B} SR blocks of {spec.sr_node_len} dits"
        )
    obs = [e for blk in node_blocks for e in blk] + [
        e for blk in sr_blocks for e in blk
    ]
    t = decoder_matrix(scheme, pattern)
    m_obs = observation_matrix(scheme, pattern)
    try:
        m_obs.solve_left(obs)
    except NoSolution:
        raise InconsistentObservation(
            "observation is not a codeword restriction"
        ) from None
    return Matrix(scheme.field, [obs], len(obs)).mul(t).rows[0]


# -- brute-force entropy oracle ---------------------------------------


def _token_columns(scheme: LinearScheme, token: str) -> list[list[int]]:
    """Columns (length input_dim) of the map behind one variable name."""
    spec = scheme.spec
    d = spec.input_dim

    def selector(row_idx: int) -> list[int]:
        col = [0] * d
        col[row_idx] = 1
        return col

    if token == "Y0":
        return [selector(i) for i in range(spec.msg_len)]
    if token == "Z":
        return [
            selector(spec.msg_len + spec.sr_len + i) for i in range(spec.L)
        ]
    if token.startswith("Y"):
        n = int(token[1:])
        if not 1 <= n <= spec.N:
            raise PatternMismatch(f"no storage node {token}")
        gen = scheme.stacked_generator()
        return [
            [gen.rows[r][c] for r in range(d)]
            for c in scheme.node_columns(n - 1)
        ]
    if token.startswith("B"):
        i = int(token[1:])
        if not 1 <= i <= spec.N_B:
            raise PatternMismatch(f"no SR node {token}")
        w = spec.sr_node_len
        return [
            selector(spec.msg_len + (i - 1) * w + j) for j in range(w)
        ]
    raise PatternMismatch(f"unknown variable token {token!r}")


def _joint_entropy(scheme: LinearScheme, tokens, cap: int) -> Fraction:
    """Exact entropy (q-ary units) of the named variables' joint value
    under uniform inputs, by folding the input coordinates one by one."""
    spec = scheme.spec
    field = scheme.field
    q = field.q
    d = spec.input_dim
    if q**d > cap:
        raise TooLarge(
            f"input space q^{d} = {q**d} exceeds oracle cap {cap}"
        )
    cols = [c for tok in tokens for c in _token_columns(scheme, tok)]
    w = len(cols)
    rows = [[col[r] for col in cols] for r in range(d)]
    if field.p == 2:
        # pack each output coordinate into m bits; addition is XOR
        mbits = field.m

        def pack(vals):
            out = 0
            for j, v in enumerate(vals):
                out |= v << (j * mbits)
            return out

        state = {0: 1}
        for row in rows:
            scaled = [pack([field.mul(x, e) for e in row]) for x in range(q)]
            new: dict[int, int] = {}
            get = new.get
            for val, cnt in state.items():
                for s in scaled:
                    key = val ^ s
                    new[key] = get(key, 0) + cnt
            state = new
    else:
        add = field.add
        state = {(0,) * w: 1}
        for row in rows:
            scaled = [
                tuple(field.mul(x, e) for e in row) for x in range(q)
            ]
            new = {}
            get = new.get
            for val, cnt in state.items():
                for s in scaled:
                    key = tuple(add(a, b) for a, b in zip(val, s))
                    new[key] = get(key, 0) + cnt
            state = new
    # every count is q^e: entropy = d - sum(c * e) / q^d
    weighted = 0
    for c in state.values():
        e = 0
        n = c
        while n > 1:
            if n % q:
                raise AssertionError("image count is not a power of q")
            n //= q
            e += 1
        weighted += c * e
    return Fraction(d) - Fraction(weighted, q**d)


def entropy_oracle(
    scheme: LinearScheme,
    targets,
    given=(),
    cap: int = ORACLE_CAP,
) -> Fraction:
    """H(targets | given), exact, in q-ary units, by full enumeration.

    Variables are named "Y0", "Y1".."YN", "B1".."BNB", "Z".
    """
    joint = _joint_entropy(scheme, tuple(targets) + tuple(given), cap)
    if not given:
        return joint
    return joint - _joint_entropy(scheme, tuple(given), cap)


def oracle_decodable(
    scheme: LinearScheme, pattern: ErasurePattern, cap: int = ORACLE_CAP
) -> bool:
    pattern.validate(scheme.spec)
    given = [f"Y{n}" for n in pattern.surviving_storage] + [
        f"B{i}" for i in pattern.surviving_sr
    ]
    return entropy_oracle(scheme, ("Y0",), given, cap) == 0


def oracle_secure(
    scheme: LinearScheme, pattern: ErasurePattern, cap: int = ORACLE_CAP
) -> bool:
    pattern.validate(scheme.spec)
    spec = scheme.spec
    erased = [f"Y{n}" for n in pattern.erased_storage(spec)] + [
        f"B{i}" for i in pattern.erased_sr(spec)
    ]
    h_msg = _joint_entropy(scheme, ("Y0",), cap)
    h_erased = _joint_entropy(scheme, tuple(erased), cap)
    h_joint = _joint_entropy(scheme, ("Y0", *erased), cap)
    return h_msg + h_erased - h_joint == 0


def oracle_sr_recovery(scheme: LinearScheme, cap: int = ORACLE_CAP) -> bool:
    spec = scheme.spec
    targets = [f"B{i}" for i in range(1, spec.N_B + 1)]
    given = [f"Y{n}" for n in range(1, spec.N + 1)]
    if not targets:
        return True
    return entropy_oracle(scheme, targets, given, cap) == 0
