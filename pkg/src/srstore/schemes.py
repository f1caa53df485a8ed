"""Linear storage schemes with erasure-prone shared-randomness nodes.

A scheme distributes a message over N storage nodes (kappa dits each,
any K survive) with help from N_B shared-randomness nodes (kappa *
lambdaB dits each, any K_B survive on the decoder side) and L dits of
local randomness.  Encoding is the row-vector product

    word = y0 . A  +  b . B  +  z . Z

where the N*kappa output columns are grouped into per-node blocks of
width kappa: node n owns columns [n*kappa, (n+1)*kappa).

The constructors here realize the extreme points of the achievable
rate region for each parameter regime, a hand-written small example
over any field, a special case with a single never-erased SR node, and
space sharing, which interleaves independent copies of two schemes to
hit exact convex combinations of their rates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CaseMismatch,
    FieldMismatch,
    FieldTooSmall,
    LengthMismatch,
    ParamMismatch,
)
from .field import field_new
from .linalg import (
    Matrix,
    cauchy,
    default_cauchy_points,
    default_eval_points,
    grs,
    vandermonde,
)

SCHEME_JSON_VERSION = 1


@dataclass(frozen=True)
class CodeSpec:
    """Parameters of a linear scheme.

    N storage nodes (any K survive), N_B SR nodes (any K_B readable at
    decode time), field order q, per-node width kappa, exact rates
    lambda0 (message dits per node dit) and lambdaB (SR-node size over
    kappa), and L dits of encoder-local randomness.
    """

    N: int
    K: int
    N_B: int
    K_B: int
    q: int
    kappa: int
    lambda0: Fraction
    lambdaB: Fraction
    L: int

    def __post_init__(self):
        if not 0 <= self.K <= self.N:
            raise ParamMismatch(f"need 0 <= K <= N, got K={self.K}, N={self.N}")
        if not 0 <= self.K_B <= self.N_B:
            raise ParamMismatch(
                f"need 0 <= K_B <= N_B, got K_B={self.K_B}, N_B={self.N_B}"
            )
        if self.kappa < 1:
            raise ParamMismatch("kappa must be >= 1")
        if self.L < 0:
            raise ParamMismatch("L must be >= 0")
        for name in ("lambda0", "lambdaB"):
            val = getattr(self, name)
            if val < 0 or (self.kappa * val).denominator != 1:
                raise ParamMismatch(
                    f"kappa*{name} must be a nonnegative integer, "
                    f"got kappa={self.kappa}, {name}={val}"
                )
        field_new(self.q)  # raises NotPrimePower if invalid

    @property
    def msg_len(self) -> int:
        return int(self.kappa * self.lambda0)

    @property
    def sr_node_len(self) -> int:
        return int(self.kappa * self.lambdaB)

    @property
    def sr_len(self) -> int:
        return self.N_B * self.sr_node_len

    @property
    def input_dim(self) -> int:
        return self.msg_len + self.sr_len + self.L

    @property
    def storage_len(self) -> int:
        return self.N * self.kappa

    def rate(self) -> tuple[Fraction, Fraction]:
        return (self.lambda0, self.lambdaB)


@dataclass(frozen=True)
class EncodingInput:
    """One encoder input: message y0, SR word b, local randomness z."""

    y0: tuple[int, ...]
    b: tuple[int, ...]
    z: tuple[int, ...]

    @classmethod
    def make(cls, y0, b, z) -> "EncodingInput":
        return cls(tuple(y0), tuple(b), tuple(z))

    def validate(self, spec: CodeSpec) -> None:
        if len(self.y0) != spec.msg_len:
            raise LengthMismatch(
                f"message length {len(self.y0)} != {spec.msg_len}"
            )
        if len(self.b) != spec.sr_len:
            raise LengthMismatch(f"SR length {len(self.b)} != {spec.sr_len}")
        if len(self.z) != spec.L:
            raise LengthMismatch(
                f"local randomness length {len(self.z)} != {spec.L}"
            )


class LinearScheme:
    """A concrete scheme: spec plus the three generator matrices."""

    __slots__ = ("spec", "field", "A", "B", "Z")

    def __init__(self, spec: CodeSpec, A: Matrix, B: Matrix, Z: Matrix):
        self.spec = spec
        self.field = field_new(spec.q)
        w = spec.storage_len
        if (A.nrows, A.ncols) != (spec.msg_len, w):
            raise LengthMismatch(
                f"message matrix is {A.nrows}x{A.ncols}, "
                f"expected {spec.msg_len}x{w}"
            )
        if (B.nrows, B.ncols) != (spec.sr_len, w):
            raise LengthMismatch(
                f"SR matrix is {B.nrows}x{B.ncols}, expected {spec.sr_len}x{w}"
            )
        if (Z.nrows, Z.ncols) != (spec.L, w):
            raise LengthMismatch(
                f"local-randomness matrix is {Z.nrows}x{Z.ncols}, "
                f"expected {spec.L}x{w}"
            )
        self.A = A
        self.B = B
        self.Z = Z

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearScheme)
            and self.spec == other.spec
            and self.A == other.A
            and self.B == other.B
            and self.Z == other.Z
        )

    def __repr__(self) -> str:
        s = self.spec
        return (
            f"LinearScheme(N={s.N}, K={s.K}, N_B={s.N_B}, K_B={s.K_B}, "
            f"q={s.q}, kappa={s.kappa})"
        )

    def stacked_generator(self) -> Matrix:
        """All input rows stacked: message, then SR, then local."""
        return Matrix.vstack(self.A, self.B, self.Z)

    def node_columns(self, n: int) -> range:
        """Column range of storage node n (0-based)."""
        k = self.spec.kappa
        return range(n * k, (n + 1) * k)

    def sr_rows(self, i: int) -> range:
        """Row range of SR node i (0-based) within the SR matrix."""
        w = self.spec.sr_node_len
        return range(i * w, (i + 1) * w)

    def encode(self, inp: EncodingInput) -> list[list[int]]:
        """Storage word as N blocks of kappa dits."""
        inp.validate(self.spec)
        f = self.field
        word = self.A.left_mul_vec(list(inp.y0))
        for vec, mat in ((inp.b, self.B), (inp.z, self.Z)):
            part = mat.left_mul_vec(list(vec))
            word = [f.add(a, b) for a, b in zip(word, part)]
        k = self.spec.kappa
        return [word[n * k : (n + 1) * k] for n in range(self.spec.N)]

    # -- serialization ------------------------------------------------

    def to_json(self) -> dict:
        s = self.spec

        def frac(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        def flat(m: Matrix) -> list[int]:
            return [e for row in m.rows for e in row]

        return {
            "version": SCHEME_JSON_VERSION,
            "kind": "linear-scheme",
            "spec": {
                "N": s.N,
                "K": s.K,
                "N_B": s.N_B,
                "K_B": s.K_B,
                "q": s.q,
                "kappa": s.kappa,
                "lambda0": frac(s.lambda0),
                "lambdaB": frac(s.lambdaB),
                "L": s.L,
            },
            "A": flat(self.A),
            "B": flat(self.B),
            "Z": flat(self.Z),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "LinearScheme":
        if doc.get("version") != SCHEME_JSON_VERSION:
            raise ParamMismatch(
                f"unsupported scheme document version {doc.get('version')!r}"
            )
        sd = doc["spec"]
        spec = CodeSpec(
            N=sd["N"],
            K=sd["K"],
            N_B=sd["N_B"],
            K_B=sd["K_B"],
            q=sd["q"],
            kappa=sd["kappa"],
            lambda0=Fraction(sd["lambda0"]),
            lambdaB=Fraction(sd["lambdaB"]),
            L=sd["L"],
        )
        field = field_new(spec.q)
        w = spec.storage_len

        def unflat(values: list[int], nrows: int) -> Matrix:
            if len(values) != nrows * w:
                raise LengthMismatch(
                    f"matrix payload has {len(values)} entries, "
                    f"expected {nrows * w}"
                )
            rows = [values[i * w : (i + 1) * w] for i in range(nrows)]
            return Matrix(field, rows, w)

        return cls(
            spec,
            unflat(doc["A"], spec.msg_len),
            unflat(doc["B"], spec.sr_len),
            unflat(doc["Z"], spec.L),
        )


def _scheme_from_encoder(spec: CodeSpec, raw_encode) -> LinearScheme:
    """Materialize generator matrices by probing unit inputs.

    raw_encode(y0, b, z) must be linear and return the flat storage
    word (length N*kappa).
    """
    field = field_new(spec.q)
    w = spec.storage_len

    def probe(section: str, length: int) -> Matrix:
        rows = []
        for i in range(length):
            y0 = [0] * spec.msg_len
            b = [0] * spec.sr_len
            z = [0] * spec.L
            {"y0": y0, "b": b, "z": z}[section][i] = 1
            rows.append(raw_encode(y0, b, z))
        return Matrix(field, rows, w)

    return LinearScheme(
        spec,
        probe("y0", spec.msg_len),
        probe("b", spec.sr_len),
        probe("z", spec.L),
    )


# -- constructors -----------------------------------------------------


def construct_baseline(N: int, K: int, q: int) -> LinearScheme:
    """Ramp secret sharing without SR: rate (max(2K-N, 0), 0).

    When 2K <= N the message rate is zero and the trivial empty scheme
    is returned.  Otherwise the message (2K-N dits) and N-K local
    random dits pass through a K x N Cauchy generator; any K columns
    invert, and any N-K columns are fully masked by the local
    randomness.
    """
    field = field_new(q)
    if field.q < 2 * N:
        raise FieldTooSmall(f"need q >= {2 * N}, got {q}")
    msg_len = max(2 * K - N, 0)
    if msg_len == 0:
        spec = CodeSpec(
            N=N, K=K, N_B=0, K_B=0, q=q, kappa=1,
            lambda0=Fraction(0), lambdaB=Fraction(0), L=0,
        )
        zero = Matrix.zero(field, 0, N)
        return LinearScheme(spec, zero, zero, zero)
    L = N - K
    spec = CodeSpec(
        N=N, K=K, N_B=0, K_B=0, q=q, kappa=1,
        lambda0=Fraction(msg_len), lambdaB=Fraction(0), L=L,
    )
    alphas, betas = default_cauchy_points(field, K, N)
    gen = cauchy(field, alphas, betas)  # K x N, inputs (y0, z)

    def raw_encode(y0, b, z):
        return gen.left_mul_vec(list(y0) + list(z))

    return _scheme_from_encoder(spec, raw_encode)


def construct_case2(N: int, K: int, N_B: int, K_B: int, q: int) -> LinearScheme:
    """Majority-surviving storage regime: one Cauchy mixes message + SR.

    Requires K/N >= 1/2 and K_B/N_B > 1/2.  Rate
    (N - (N-K)*N_B/K_B, (N-K)/K_B) with kappa = K_B and no local
    randomness: the stacked (message, SR) vector of length N*K_B passes
    through an N*K_B square Cauchy matrix.
    """
    if not (2 * K_B > N_B and K_B <= N_B):
        raise CaseMismatch(f"need K_B/N_B > 1/2, got {K_B}/{N_B}")
    if not (2 * K >= N and K <= N):
        raise CaseMismatch(f"need K/N >= 1/2, got {K}/{N}")
    field = field_new(q)
    if field.q < 2 * N * K_B:
        raise FieldTooSmall(f"need q >= {2 * N * K_B}, got {q}")
    spec = CodeSpec(
        N=N, K=K, N_B=N_B, K_B=K_B, q=q, kappa=K_B,
        lambda0=Fraction(N * K_B - (N - K) * N_B, K_B),
        lambdaB=Fraction(N - K, K_B),
        L=0,
    )
    side = N * K_B
    alphas, betas = default_cauchy_points(field, side, side)
    gen = cauchy(field, alphas, betas)

    def raw_encode(y0, b, z):
        return gen.left_mul_vec(list(y0) + list(b))

    return _scheme_from_encoder(spec, raw_encode)


def construct_case3_a(N: int, K: int, N_B: int, K_B: int, q: int) -> LinearScheme:
    """Minority-surviving regime, low-SR extreme point.

    Requires K/N < 1/2 and K_B/N_B > 1/2.  Rate
    (K(2K_B-N_B)/(2K_B), K/(2K_B)), kappa = 2K_B, L = (N-K)K_B.

    Message and SR mix through a 2KK_B x KN_B Cauchy; the K mixed
    segments ride an (N, K) MDS (Vandermonde) code; the remainder plus
    message plus local randomness mix through a second square Cauchy.
    Each node stores one MDS share and one second-mix segment.
    """
    if not (2 * K_B > N_B and K_B <= N_B):
        raise CaseMismatch(f"need K_B/N_B > 1/2, got {K_B}/{N_B}")
    if not (2 * K < N):
        raise CaseMismatch(f"need K/N < 1/2, got {K}/{N}")
    field = field_new(q)
    if field.q < 2 * N * K_B:
        raise FieldTooSmall(f"need q >= {2 * N * K_B}, got {q}")
    spec = CodeSpec(
        N=N, K=K, N_B=N_B, K_B=K_B, q=q, kappa=2 * K_B,
        lambda0=Fraction(K * (2 * K_B - N_B), 2 * K_B),
        lambdaB=Fraction(K, 2 * K_B),
        L=(N - K) * K_B,
    )
    head = K * (N_B - K_B)  # first-mix output kept out of the MDS part
    f_rows, f_cols = 2 * K * K_B, K * N_B
    fa, fb = default_cauchy_points(field, f_rows, f_cols)
    first_mix = cauchy(field, fa, fb) if f_rows else Matrix.zero(field, 0, 0)
    mds = vandermonde(field, default_eval_points(field, N), K)
    side = N * K_B
    ha, hb = default_cauchy_points(field, side, side)
    second_mix = cauchy(field, ha, hb)

    def raw_encode(y0, b, z):
        f_vec = first_mix.left_mul_vec(list(y0) + list(b))
        f0 = f_vec[:head]
        segs = [
            f_vec[head + k * K_B : head + (k + 1) * K_B] for k in range(K)
        ]
        h_vec = second_mix.left_mul_vec(f0 + list(y0) + list(z))
        word = []
        for n in range(N):
            share = [0] * K_B
            for k in range(K):
                c = mds.rows[k][n]
                if c:
                    share = [
                        field.add(s, field.mul(c, e))
                        for s, e in zip(share, segs[k])
                    ]
            word += share + h_vec[n * K_B : (n + 1) * K_B]
        return word

    return _scheme_from_encoder(spec, raw_encode)


def construct_case3_b(N: int, K: int, N_B: int, K_B: int, q: int) -> LinearScheme:
    """Minority-surviving regime, high-SR extreme point.

    Requires K/N < 1/2 and K_B/N_B > 1/2.  Rate
    (2K(1 - N_B/(2K_B)), (N-2K)/N_B + K/K_B), kappa = N_B*K_B, L = 0.

    Each SR node splits into N-K masking segments (K_B dits each,
    spread over nodes by the parity half of a square GRS generator)
    and a tail that mixes with the message through a Cauchy; the mix
    rides the message half of the same GRS generator.  Every node
    stores, per SR index, the sum of its two shares.
    """
    if not (2 * K_B > N_B and K_B <= N_B):
        raise CaseMismatch(f"need K_B/N_B > 1/2, got {K_B}/{N_B}")
    if not (2 * K < N):
        raise CaseMismatch(f"need K/N < 1/2, got {K}/{N}")
    field = field_new(q)
    need = max(2 * K * N_B * K_B, N)
    if field.q < need:
        raise FieldTooSmall(f"need q >= {need}, got {q}")
    spec = CodeSpec(
        N=N, K=K, N_B=N_B, K_B=K_B, q=q, kappa=N_B * K_B,
        lambda0=Fraction(2 * K * (2 * K_B - N_B), 2 * K_B),
        lambdaB=Fraction(N - 2 * K, N_B) + Fraction(K, K_B),
        L=0,
    )
    alphas = default_eval_points(field, N)
    gen = grs(field, [1] * N, alphas)
    msg_half = gen.take_rows(range(K))  # K x N
    parity_half = gen.take_rows(range(K, N))  # (N-K) x N
    side = K * N_B * K_B
    ha, hb = default_cauchy_points(field, side, side)
    mix = cauchy(field, ha, hb) if side else Matrix.zero(field, 0, 0)
    mask_len = (N - K) * K_B  # per SR node, the node-spread part
    tail_len = K * (N_B - K_B)  # per SR node, the mixed part

    def raw_encode(y0, b, z):
        b_nodes = [
            b[t * (mask_len + tail_len) : (t + 1) * (mask_len + tail_len)]
            for t in range(N_B)
        ]
        # spread each SR node's masking segments over storage nodes
        spread = []  # spread[t][n] is a K_B-dit share
        for t in range(N_B):
            per_node = []
            for n in range(N):
                acc = [0] * K_B
                for i in range(N - K):
                    c = parity_half.rows[i][n]
                    if c:
                        seg = b_nodes[t][i * K_B : (i + 1) * K_B]
                        acc = [
                            field.add(a, field.mul(c, e))
                            for a, e in zip(acc, seg)
                        ]
                per_node.append(acc)
            spread.append(per_node)
        # mix message with the SR tails, then spread over storage nodes
        tails = [bn[mask_len:] for bn in b_nodes]
        mixed = mix.left_mul_vec(list(y0) + [e for t in tails for e in t])
        covered = []  # covered[t][n] is a K_B-dit share
        for t in range(N_B):
            per_node = []
            segs = [
                mixed[(t * K + k) * K_B : (t * K + k + 1) * K_B]
                for k in range(K)
            ]
            for n in range(N):
                acc = [0] * K_B
                for k in range(K):
                    c = msg_half.rows[k][n]
                    if c:
                        acc = [
                            field.add(a, field.mul(c, e))
                            for a, e in zip(acc, segs[k])
                        ]
                per_node.append(acc)
            covered.append(per_node)
        word = []
        for n in range(N):
            for t in range(N_B):
                word += [
                    field.add(a, b_)
                    for a, b_ in zip(covered[t][n], spread[t][n])
                ]
        return word

    return _scheme_from_encoder(spec, raw_encode)


def construct_fig1(q: int) -> LinearScheme:
    """Hand-written (3,1,3,2) scheme at rate (1/2, 5/6), any field.

    Each storage node holds a 2x3 table, stored column-major.  The
    message contributes a fixed pattern (with one derived symbol equal
    to the sum of the first two), each table cell adds the leading dit
    of a rotated SR node, and node-specific SR dits complete the mask;
    the third node uses the sums of the first two nodes' SR dits.
    """
    field = field_new(q)
    spec = CodeSpec(
        N=3, K=1, N_B=3, K_B=2, q=q, kappa=6,
        lambda0=Fraction(1, 2), lambdaB=Fraction(5, 6), L=0,
    )

    def raw_encode(y0, b, z):
        add = field.add
        a1, a2, a3 = y0
        a4 = add(a1, a2)
        # per-cell message term and rotated-SR leading index, rows x cols
        a_cells = ((a1, a3, a3), (a2, a4, a2))
        lead_of = ((1, 2, 0), (2, 0, 1))  # 0-based SR node of the b0 term

        def sr(node, idx):
            # SR node layout: (b0, m11, m12, m21, m22); idx 0 is b0,
            # idx (r, s) -> 1 + 2*s + r for mask dit of storage node s+1
            return b[5 * node + idx]

        word = []
        for n in range(3):  # storage node
            block = []
            for c in range(3):  # table column
                for r in range(2):  # table row
                    val = add(a_cells[r][c], sr(lead_of[r][c], 0))
                    if n < 2:
                        val = add(val, sr(c, 1 + 2 * n + r))
                    else:
                        val = add(
                            val, add(sr(c, 1 + r), sr(c, 3 + r))
                        )
                    block.append(val)
            word += block
        return word

    return _scheme_from_encoder(spec, raw_encode)


def construct_appendix_b(N: int, K: int, q: int) -> LinearScheme:
    """Single always-available SR node (N_B = K_B = 1), rate (K/2, K/2).

    Requires K/N < 1/2.  kappa = 2, L = N - K.  The SR word masks the
    message additively before an (N, K) Vandermonde spread; message
    plus local randomness also mix through an N x N Cauchy.  Node n
    stores one dit of each part.
    """
    if not (2 * K < N):
        raise CaseMismatch(f"need K/N < 1/2, got {K}/{N}")
    field = field_new(q)
    if field.q < 2 * N:
        raise FieldTooSmall(f"need q >= {2 * N}, got {q}")
    spec = CodeSpec(
        N=N, K=K, N_B=1, K_B=1, q=q, kappa=2,
        lambda0=Fraction(K, 2), lambdaB=Fraction(K, 2), L=N - K,
    )
    spread = vandermonde(field, default_eval_points(field, N), K)
    ha, hb = default_cauchy_points(field, N, N)
    mix = cauchy(field, ha, hb)

    def raw_encode(y0, b, z):
        masked = [field.add(a, bb) for a, bb in zip(y0, b)]
        f_vec = spread.left_mul_vec(masked)
        h_vec = mix.left_mul_vec(list(y0) + list(z))
        word = []
        for n in range(N):
            word += [f_vec[n], h_vec[n]]
        return word

    return _scheme_from_encoder(spec, raw_encode)


def space_share(
    s1: LinearScheme, s2: LinearScheme, u: int, v: int
) -> LinearScheme:
    """Interleave u/v copies of s1 with (v-u)/v copies of s2.

    Both schemes must share (N, K, N_B, K_B) and the field.  The result
    runs u*kappa2 independent copies of s1 and (v-u)*kappa1 copies of
    s2 side by side inside each node, so kappa = v*kappa1*kappa2 and
    the rates are the exact convex combinations (u/v, (v-u)/v).
    """
    a, b = s1.spec, s2.spec
    if (a.N, a.K, a.N_B, a.K_B) != (b.N, b.K, b.N_B, b.K_B):
        raise ParamMismatch(
            "space sharing needs matching (N, K, N_B, K_B)"
        )
    if a.q != b.q:
        raise FieldMismatch(
            f"space sharing needs a common field, got q={a.q} and q={b.q}"
        )
    if not (v >= 1 and 0 <= u <= v):
        raise ParamMismatch(f"need 0 <= u <= v and v >= 1, got u={u}, v={v}")
    field = s1.field
    copies = [s1] * (u * b.kappa) + [s2] * ((v - u) * a.kappa)
    kappa = v * a.kappa * b.kappa
    spec = CodeSpec(
        N=a.N,
        K=a.K,
        N_B=a.N_B,
        K_B=a.K_B,
        q=a.q,
        kappa=kappa,
        lambda0=Fraction(u, v) * a.lambda0 + Fraction(v - u, v) * b.lambda0,
        lambdaB=Fraction(u, v) * a.lambdaB + Fraction(v - u, v) * b.lambdaB,
        L=sum(c.spec.L for c in copies),
    )
    w = spec.storage_len

    def build(rows_of) -> list[list[int]]:
        rows = []
        col_off = 0  # column offset of the current copy inside a node
        for c in copies:
            ck = c.spec.kappa
            for row in rows_of(c).rows:
                out = [0] * w
                for n in range(spec.N):
                    dst = n * kappa + col_off
                    src = n * ck
                    out[dst : dst + ck] = row[src : src + ck]
                rows.append(out)
            col_off += ck
        return rows

    # message rows: copy-major concatenation
    a_rows = build(lambda c: c.A)
    z_rows = build(lambda c: c.Z)
    # SR rows: grouped by SR node, then by copy within the node
    b_rows: list[list[int]] = []
    for i in range(spec.N_B):
        col_off = 0
        for c in copies:
            ck = c.spec.kappa
            for row_i in c.sr_rows(i):
                row = c.B.rows[row_i]
                out = [0] * w
                for n in range(spec.N):
                    dst = n * kappa + col_off
                    src = n * ck
                    out[dst : dst + ck] = row[src : src + ck]
                b_rows.append(out)
            col_off += ck
    return LinearScheme(
        spec,
        Matrix(field, a_rows, w),
        Matrix(field, b_rows, w),
        Matrix(field, z_rows, w),
    )
