"""Linear STBC constructions as weight-matrix families.

A code is a list of fixed complex ``n_t x t`` weight matrices ``A_i``; the
transmitted matrix for real symbols ``x`` is ``sum_i x_i A_i``.  Block
orthogonality of the QR factor depends on the *order* of the weight
matrices, so every constructor fixes a documented default ordering and
:func:`reorder` produces relabeled variants.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .linalg import RankDeficient, check_expand, cvec, tilde_vec

__all__ = [
    "LinearSTBC",
    "CuwdDesign",
    "CiodDesign",
    "NotUnitary",
    "UnsupportedSize",
    "InvalidPermutation",
    "PremiseViolated",
    "RankDeficient",
    "alamouti_code",
    "golden_code",
    "golden_linear_forms",
    "golden_diagonal_half",
    "bhv_code",
    "srinath_rajan_code",
    "cuwd_rate1_4group",
    "ciod",
    "construction_i",
    "construction_ii",
    "construction_iii",
    "construction_iv",
    "cda_2x2",
    "reorder",
    "ordering_from_labels",
    "code_to_json",
    "code_from_json",
    "save_code",
    "load_code",
    "named_code",
    "named_m_matrix",
    "GOLDEN_ORDERING_421",
    "GOLDEN_ORDERING_222",
    "GOLDEN_ORDERING_SCRAMBLED",
    "M_GOLDEN",
    "M_SRINATH_RAJAN",
    "M_A2",
    "generator_matrix",
]


class NotUnitary(ValueError):
    """A matrix required to be unitary is not."""


class UnsupportedSize(ValueError):
    """Requested design size is outside the supported desk-scale range."""


class InvalidPermutation(ValueError):
    """Sequence is not a permutation of the symbol indices."""


class PremiseViolated(ValueError):
    """Input code does not satisfy the construction's premise."""


_RANK_TOL = 1e-10


def _frozen(a) -> np.ndarray:
    out = np.array(a, dtype=complex)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class LinearSTBC:
    """A linear STBC: ``X(x) = sum_i x_i * weights[i]`` over real symbols.

    ``ordering`` maps current symbol position to the position in the
    constructor's default order; it starts as the identity and composes
    under :func:`reorder`.
    """

    n_t: int
    t: int
    weights: tuple
    labels: tuple
    ordering: tuple
    declared_profile: tuple | None = None

    @property
    def k_real(self) -> int:
        return len(self.weights)

    def codeword(self, x) -> np.ndarray:
        """Transmit matrix for the real symbol vector ``x``."""
        x = np.asarray(x, dtype=float).ravel()
        if x.size != self.k_real:
            raise ValueError(f"expected {self.k_real} real symbols, got {x.size}")
        out = np.zeros((self.n_t, self.t), dtype=complex)
        for xi, a in zip(x, self.weights):
            out = out + xi * a
        return out


def generator_matrix(code: LinearSTBC) -> np.ndarray:
    """Real generator matrix G: column i is ``tilde_vec(cvec(A_i))``."""
    return np.column_stack([tilde_vec(cvec(a)) for a in code.weights])


def _make_code(weights, labels, declared_profile=None, *, check_rank=True) -> LinearSTBC:
    weights = tuple(_frozen(w) for w in weights)
    n_t, t = weights[0].shape
    for w in weights:
        if w.shape != (n_t, t):
            raise ValueError("all weight matrices must share one shape")
        if not np.isfinite(w).all():
            raise ValueError("weight entries must be finite")
    labels = tuple(labels)
    if len(labels) != len(weights):
        raise ValueError("need one label per weight matrix")
    code = LinearSTBC(
        n_t=n_t,
        t=t,
        weights=weights,
        labels=labels,
        ordering=tuple(range(len(weights))),
        declared_profile=tuple(declared_profile) if declared_profile else None,
    )
    if check_rank:
        g = generator_matrix(code)
        rank = np.linalg.matrix_rank(g, tol=_RANK_TOL * np.abs(g).max())
        if rank < code.k_real:
            raise RankDeficient(f"generator matrix rank {rank} < K = {code.k_real}")
    return code


# ---------------------------------------------------------------------------
# named 2x2 codes
# ---------------------------------------------------------------------------

_SQRT5 = math.sqrt(5.0)
_THETA = (1 + _SQRT5) / 2
_THETA_BAR = (1 - _SQRT5) / 2
_ALPHA = 1 + 1j * (1 - _THETA)
_ALPHA_BAR = 1 + 1j * (1 - _THETA_BAR)

_ALAMOUTI_WEIGHTS = (
    np.eye(2, dtype=complex),                       # s1I
    np.diag([1j, -1j]),                             # s1Q
    np.array([[0, -1], [1, 0]], dtype=complex),      # s2I
    np.array([[0, 1j], [1j, 0]]),                    # s2Q
)

_T_FLIP = np.diag([1.0, -1.0]).astype(complex)

#: Column swap with a quarter-turn phase; pairs the diagonal Golden half
#: into the full Golden code under construction III.
M_GOLDEN = _frozen([[0, 1j], [1, 0]])

#: Phase-rotated antenna swap; pairs the 2x2 coordinate-interleaved design
#: into the Srinath-Rajan code under construction IV.
M_SRINATH_RAJAN = _frozen(np.exp(1j * np.pi / 4) * np.array([[0, 1], [1, 0]]))

#: Full-rank companion matrix for the 4-antenna (a = 2) sum constructions.
#: Found by seeded search over structured unitaries, then frozen.
M_A2 = _frozen([
    [0, 0, 1, 0],
    [0, 0, 0, -1],
    [1, 0, 0, 0],
    [0, -1, 0, 0],
])

# Orderings of the Golden code weights (positions into the default
# [s1I s1Q s2I s2Q s3I s3Q s4I s4Q] order) and the structure each exhibits:
#: R splits into four 2x2 diagonal blocks: profile (4, 2, 1).
GOLDEN_ORDERING_421 = (0, 1, 3, 2, 4, 5, 7, 6)
#: R splits into two halves of two 2x2 upper-triangular blocks: (2, 2, 2).
GOLDEN_ORDERING_222 = (0, 2, 1, 3, 4, 6, 5, 7)
#: An ordering whose R has no block-orthogonal structure at all.
GOLDEN_ORDERING_SCRAMBLED = (0, 1, 6, 3, 4, 5, 2, 7)


def alamouti_code() -> LinearSTBC:
    """The 2x2 orthogonal design; R is diagonal for every channel."""
    labels = ("s1I", "s1Q", "s2I", "s2Q")
    return _make_code(_ALAMOUTI_WEIGHTS, labels)


def golden_linear_forms() -> tuple:
    """The four complex-linear coefficient matrices of the Golden code.

    ``X = sum_k s_k * C_k`` with complex symbols ``s_k``; no entry involves a
    conjugate, so the code fits construction II directly.
    """
    c1 = np.diag([_ALPHA, _ALPHA_BAR]) / _SQRT5
    c2 = np.diag([_ALPHA * _THETA, _ALPHA_BAR * _THETA_BAR]) / _SQRT5
    c3 = np.array([[0, 1j * _ALPHA_BAR], [_ALPHA, 0]]) / _SQRT5
    c4 = np.array([[0, 1j * _ALPHA_BAR * _THETA_BAR], [_ALPHA * _THETA, 0]]) / _SQRT5
    return (_frozen(c1), _frozen(c2), _frozen(c3), _frozen(c4))


def golden_code() -> LinearSTBC:
    """Full-rate 2x2 Golden code, K = 8 real symbols.

    Default ordering interleaves I/Q per complex symbol; this is the
    construction-II ordering and already carries a (4, 2, 1) structure.
    """
    c1, c2, c3, c4 = golden_linear_forms()
    weights = (c1, 1j * c1, c2, 1j * c2, c3, 1j * c3, c4, 1j * c4)
    labels = ("s1I", "s1Q", "s2I", "s2Q", "s3I", "s3Q", "s4I", "s4Q")
    return _make_code(weights, labels, declared_profile=(4, 2, 1))


def golden_diagonal_half() -> LinearSTBC:
    """Diagonal half of the Golden code (symbols s1, s2), two-group ordered.

    Weight order is [s1I, s2I, s1Q, s2Q]; the Q-part weights are j times the
    I-part ones, which is the premise of construction III.
    """
    c1, c2, _, _ = golden_linear_forms()
    weights = (c1, c2, 1j * c1, 1j * c2)
    labels = ("s1I", "s2I", "s1Q", "s2Q")
    return _make_code(weights, labels)


def default_bhv_rotation() -> np.ndarray:
    """Default symbol rotation for :func:`bhv_code`.

    A real Givens rotation by ``atan(2)/2``.  The tested block-orthogonal
    structure is independent of this choice as long as the combined
    generator stays full rank; the angle is configurable.
    """
    ang = math.atan(2.0) / 2
    return np.array([[math.cos(ang), -math.sin(ang)],
                     [math.sin(ang), math.cos(ang)]], dtype=complex)


def bhv_code(u=None) -> LinearSTBC:
    """Rate-2 2x2 code: an Alamouti block plus a flipped, rotated second one.

    ``X = X1(s1, s2) + T X1(z1, z2)`` where ``X1`` is the Alamouti design,
    ``T = diag(1, -1)`` and ``(z1, z2) = u @ (s3, s4)`` with ``u`` unitary.
    Carries a (2, 4, 1) block-orthogonal structure in the default ordering.
    """
    u = default_bhv_rotation() if u is None else np.asarray(u, dtype=complex)
    if u.shape != (2, 2) or np.abs(u.conj().T @ u - np.eye(2)).max() > 1e-10:
        raise NotUnitary("u must be a 2x2 unitary matrix")
    # z-tilde = check_expand(u) @ s-tilde, so the weight of the p-th real
    # symbol in the second block is T times the matching mix of Alamouti
    # weights.
    cu = check_expand(u)
    second = tuple(
        _T_FLIP @ sum(cu[q, p] * _ALAMOUTI_WEIGHTS[q] for q in range(4))
        for p in range(4)
    )
    weights = _ALAMOUTI_WEIGHTS + second
    labels = ("s1I", "s1Q", "s2I", "s2Q", "s3I", "s3Q", "s4I", "s4Q")
    return _make_code(weights, labels, declared_profile=(2, 4, 1))


def srinath_rajan_code() -> LinearSTBC:
    """The 2x2 coordinate-interleaved code of Srinath and Rajan.

    Entries: ``X[0,0] = x1I + j x2Q``, ``X[1,1] = x2I + j x1Q``,
    ``X[0,1] = e^{j pi/4} (x3I + j x4Q)``, ``X[1,0] = e^{j pi/4} (x4I + j x3Q)``.
    Default symbol order groups the two real symbols sharing a codeword
    entry, which exhibits the declared (2, 2, 2) structure.
    """
    e = np.exp(1j * np.pi / 4)
    weights = (
        np.diag([1, 0]).astype(complex),        # x1I
        np.diag([1j, 0]),                        # x2Q
        np.diag([0, 1]).astype(complex),         # x2I
        np.diag([0, 1j]),                        # x1Q
        np.array([[0, e], [0, 0]]),              # x3I
        np.array([[0, 1j * e], [0, 0]]),         # x4Q
        np.array([[0, 0], [e, 0]]),              # x4I
        np.array([[0, 0], [1j * e, 0]]),         # x3Q
    )
    labels = ("x1I", "x2Q", "x2I", "x1Q", "x3I", "x4Q", "x4I", "x3Q")
    return _make_code(weights, labels, declared_profile=(2, 2, 2))


# ---------------------------------------------------------------------------
# Clifford unitary weight designs
# ---------------------------------------------------------------------------

_SIGMA1 = np.array([[0, 1], [-1, 0]], dtype=complex)
_SIGMA2 = np.array([[0, 1j], [1j, 0]])
_SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)


def _kron_chain(mats) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for m in mats:
        out = np.kron(out, m)
    return out


def _clifford_generators(a: int) -> dict:
    """Unitary representations of the 2a+1 anticommuting generators.

    Index 1 is the ``j * sigma3^(x a)`` element (sign fixed to +); indices
    2k and 2k+1 place sigma1/sigma2 at tensor slot a-k over a sigma3 tail.
    """
    reps = {1: 1j * _kron_chain([_SIGMA3] * a)}
    eye = np.eye(2, dtype=complex)
    for k in range(1, a + 1):
        tail = [eye] * (a - k)
        reps[2 * k] = _kron_chain(tail + [_SIGMA1] + [_SIGMA3] * (k - 1))
        reps[2 * k + 1] = _kron_chain(tail + [_SIGMA2] + [_SIGMA3] * (k - 1))
    return reps


@dataclass(frozen=True)
class CuwdDesign:
    """Rate-1 four-group Clifford unitary weight design for 2^a antennas.

    ``weights`` holds the 4*lam matrices in group-contiguous order: group g
    occupies positions [g*lam, (g+1)*lam).
    """

    a: int
    lam: int
    weights: tuple

    @property
    def n_t(self) -> int:
        return 2 ** self.a

    @property
    def groups(self) -> tuple:
        return tuple(tuple(range(g * self.lam, (g + 1) * self.lam)) for g in range(4))


def cuwd_rate1_4group(a: int) -> CuwdDesign:
    """Build the rate-1, four-group CUWD for 2^a transmit antennas.

    Positions lam+1, 2*lam+1, 3*lam+1 hold the generator representations
    (the first of them listed as R(1) is taken to be the j*sigma3 tensor
    element); position j*lam+k is ``A_k @ A_{j*lam+1}`` with ``A_k`` the
    product of paired-generator elements selected by the bits of k-1.
    """
    if a not in (1, 2, 3):
        raise UnsupportedSize("supported design sizes are a in {1, 2, 3}")
    lam = 2 ** (a - 1)
    reps = _clifford_generators(a)
    alphas = [1j * reps[2 * i] @ reps[2 * i + 1] for i in range(1, a)]
    a_k = []
    for k in range(1, lam + 1):
        mat = np.eye(2 ** a, dtype=complex)
        for i in range(a - 1):
            if ((k - 1) >> i) & 1:
                mat = mat @ alphas[i]
        a_k.append(mat)
    heads = (reps[1], reps[2 * a + 1], reps[2 * a])
    weights = list(a_k)
    for head in heads:
        weights.extend(mat @ head for mat in a_k)
    return CuwdDesign(a=a, lam=lam, weights=tuple(_frozen(w) for w in weights))


# ---------------------------------------------------------------------------
# coordinate interleaved orthogonal designs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CiodDesign:
    """Rate-1 coordinate-interleaved orthogonal design for 2^a antennas.

    The codeword is block diagonal in two orthogonal designs whose complex
    inputs interleave I/Q coordinates across symbol pairs.  ``weights`` are
    grouped two per interleaved input.
    """

    a: int
    weights: tuple
    labels: tuple

    @property
    def n_t(self) -> int:
        return 2 ** self.a

    @property
    def groups(self) -> tuple:
        n = len(self.weights) // 2
        return tuple(tuple(range(2 * g, 2 * g + 2)) for g in range(n))


def ciod(a: int) -> CiodDesign:
    """Build the rate-1 CIOD for 2^a antennas (a = 1 or 2).

    For a = 1 the two diagonal entries are ``x0I + j x1Q`` and
    ``x1I + j x0Q``.  For a = 2 the diagonal blocks are Alamouti designs in
    the four interleaved inputs ``x_iI + j x_{(i+2) mod 4, Q}``.
    """
    if a == 1:
        weights = (
            np.diag([1, 0]).astype(complex),   # x0I
            np.diag([1j, 0]),                   # x1Q
            np.diag([0, 1]).astype(complex),    # x1I
            np.diag([0, 1j]),                   # x0Q
        )
        labels = ("x0I", "x1Q", "x1I", "x0Q")
    elif a == 2:
        def w(block, slot, coef):
            out = np.zeros((4, 4), dtype=complex)
            o = 2 * block
            if slot == "a":
                out[o, o] = coef
                out[o + 1, o + 1] = np.conj(coef)
            else:
                out[o, o + 1] = -np.conj(coef)
                out[o + 1, o] = coef
            return out

        weights = (
            w(0, "a", 1), w(0, "a", 1j),    # x0I, x2Q
            w(0, "b", 1), w(0, "b", 1j),    # x1I, x3Q
            w(1, "a", 1), w(1, "a", 1j),    # x2I, x0Q
            w(1, "b", 1), w(1, "b", 1j),    # x3I, x1Q
        )
        labels = ("x0I", "x2Q", "x1I", "x3Q", "x2I", "x0Q", "x3I", "x1Q")
    else:
        raise UnsupportedSize("supported design sizes are a in {1, 2}")
    return CiodDesign(a=a, weights=tuple(_frozen(w) for w in weights), labels=labels)


# ---------------------------------------------------------------------------
# sum constructions
# ---------------------------------------------------------------------------

def _hr_product_norm(a, b) -> float:
    return float(np.abs(a @ b.conj().T + b @ a.conj().T).max())


def construction_i(x1: CuwdDesign, m) -> LinearSTBC:
    """Sum of a four-group CUWD with an m-multiplied copy of itself.

    Weight list is ``[A_1 .. A_{4 lam}, m A_1 .. m A_{4 lam}]``; the result
    carries the declared profile (2, 4, lam).  Raises :class:`RankDeficient`
    when the combined generator loses rank (e.g. ``m = I``).
    """
    m = np.asarray(m, dtype=complex)
    n_t = x1.n_t
    if m.shape != (n_t, n_t):
        raise ValueError(f"m must be {n_t}x{n_t}")
    # cheap premise re-check: cross-group HR orthogonality of the base design
    for gi in range(4):
        for gj in range(gi + 1, 4):
            for i in x1.groups[gi]:
                for j in x1.groups[gj]:
                    if _hr_product_norm(x1.weights[i], x1.weights[j]) > 1e-12:
                        raise PremiseViolated("base design is not four-group decodable")
    weights = tuple(x1.weights) + tuple(m @ a for a in x1.weights)
    k = len(weights)
    labels = tuple(f"x{i+1}" for i in range(k))
    return _make_code(weights, labels, declared_profile=(2, 4, x1.lam))


def construction_ii(linear_forms) -> LinearSTBC:
    """Code from a matrix of complex-linear symbol forms, I/Q interleaved.

    ``linear_forms`` is one complex coefficient matrix per complex symbol
    (the design must be conjugate-free, so the Q-part weight of each symbol
    is exactly j times its I-part weight).  Ordering is
    ``[A_1, jA_1, A_2, jA_2, ...]`` and the declared profile is (K, 2, 1).
    """
    forms = [np.asarray(c, dtype=complex) for c in linear_forms]
    if not forms:
        raise ValueError("need at least one linear form")
    weights = []
    labels = []
    for i, c in enumerate(forms, start=1):
        weights.extend((c, 1j * c))
        labels.extend((f"x{i}I", f"x{i}Q"))
    return _make_code(weights, labels, declared_profile=(len(forms), 2, 1))


def cda_2x2(gamma: complex = 1j) -> LinearSTBC:
    """2x2 cyclic-algebra style design ``[[x0, gamma*x1], [x1, x0]]``.

    A conjugate-free two-symbol design over Q(i); shipped as the small
    construction-II instance with profile (2, 2, 1).
    """
    forms = (np.eye(2, dtype=complex),
             np.array([[0, gamma], [1, 0]], dtype=complex))
    return construction_ii(forms)


def construction_iii(x1: LinearSTBC, m) -> LinearSTBC:
    """Sum of a two-group code (Q-weights = j * I-weights) with an m-copy.

    ``x1`` must list its K I-part weights first and the matching j-multiples
    second.  The combined code ``[x1 weights, m @ x1 weights]`` carries the
    declared profile (2, 2, K).
    """
    if x1.k_real % 2:
        raise PremiseViolated("two-group premise needs an even symbol count")
    half = x1.k_real // 2
    a_half = x1.weights[:half]
    b_half = x1.weights[half:]
    for a, b in zip(a_half, b_half):
        if np.abs(b - 1j * a).max() > 1e-12:
            raise PremiseViolated("second half must equal j times the first half")
    for a in a_half:
        for b in b_half:
            if _hr_product_norm(a, b) > 1e-12:
                raise PremiseViolated("halves are not two-group decodable")
    m = np.asarray(m, dtype=complex)
    weights = tuple(x1.weights) + tuple(m @ a for a in x1.weights)
    labels = tuple(x1.labels) + tuple(f"{lab}'" for lab in x1.labels)
    return _make_code(weights, labels, declared_profile=(2, 2, half))


def construction_iv(x1: CiodDesign, m) -> LinearSTBC:
    """Sum of a rate-1 CIOD with an m-multiplied copy of itself.

    Declared profile is (2, K/2, 2) with K the CIOD's real symbol count.
    """
    m = np.asarray(m, dtype=complex)
    n_t = x1.n_t
    if m.shape != (n_t, n_t):
        raise ValueError(f"m must be {n_t}x{n_t}")
    k = len(x1.weights)
    weights = tuple(x1.weights) + tuple(m @ a for a in x1.weights)
    labels = tuple(x1.labels) + tuple(f"{lab}'" for lab in x1.labels)
    return _make_code(weights, labels, declared_profile=(2, k // 2, 2))


# ---------------------------------------------------------------------------
# reordering and serialization
# ---------------------------------------------------------------------------

def reorder(code: LinearSTBC, perm) -> LinearSTBC:
    """Permute the symbol order: position i of the result is ``perm[i]``.

    The identity permutation returns the code unchanged (declared profile
    kept); any other permutation drops the declared profile, since block
    orthogonality depends on the ordering.
    """
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(code.k_real)):
        raise InvalidPermutation(f"not a permutation of 0..{code.k_real - 1}")
    if perm == tuple(range(code.k_real)):
        return code
    return LinearSTBC(
        n_t=code.n_t,
        t=code.t,
        weights=tuple(code.weights[p] for p in perm),
        labels=tuple(code.labels[p] for p in perm),
        ordering=tuple(code.ordering[p] for p in perm),
        declared_profile=None,
    )


def ordering_from_labels(code: LinearSTBC, labels) -> tuple:
    """Translate a label sequence into a permutation for :func:`reorder`."""
    labels = list(labels)
    if sorted(labels) != sorted(code.labels):
        raise InvalidPermutation("labels do not match the code's symbols")
    return tuple(code.labels.index(lab) for lab in labels)


def code_to_json(code: LinearSTBC) -> dict:
    """Serializable dict; floats survive the round trip bit-exactly."""
    return {
        "n_t": code.n_t,
        "t": code.t,
        "k_real": code.k_real,
        "labels": list(code.labels),
        "weights": [
            [[[float(x.real), float(x.imag)] for x in row] for row in w]
            for w in code.weights
        ],
        "declared_profile": list(code.declared_profile) if code.declared_profile else None,
    }


def code_from_json(data) -> LinearSTBC:
    if isinstance(data, str):
        data = json.loads(data)
    weights = [
        np.array([[complex(re, im) for re, im in row] for row in w])
        for w in data["weights"]
    ]
    if len(weights) != data["k_real"]:
        raise ValueError("k_real does not match the number of weight matrices")
    code = _make_code(weights, data["labels"],
                      declared_profile=data.get("declared_profile"),
                      check_rank=False)
    if (code.n_t, code.t) != (data["n_t"], data["t"]):
        raise ValueError("declared dimensions do not match the weights")
    return code


def save_code(code: LinearSTBC, path) -> None:
    with open(path, "w") as f:
        json.dump(code_to_json(code), f, indent=1)
        f.write("\n")


def load_code(path) -> LinearSTBC:
    with open(path) as f:
        return code_from_json(json.load(f))


# ---------------------------------------------------------------------------
# registries used by the CLI and the simulation harness
# ---------------------------------------------------------------------------

def named_m_matrix(name: str, n_t: int = 2) -> np.ndarray:
    """Companion matrices referred to by name on the command line."""
    name = name.lower()
    if name == "identity":
        return np.eye(n_t, dtype=complex)
    if name == "bhv":
        return _T_FLIP @ default_bhv_rotation()
    if name == "golden":
        return np.array(M_GOLDEN)
    if name in ("sr", "srinath-rajan"):
        return np.array(M_SRINATH_RAJAN)
    if name == "a2":
        return np.array(M_A2)
    raise ValueError(f"unknown m matrix {name!r}")


def named_code(name: str) -> LinearSTBC:
    """Construct one of the shipped codes by name."""
    name = name.lower()
    builders = {
        "alamouti": alamouti_code,
        "golden": golden_code,
        "golden-222": lambda: replace(
            reorder(golden_code(), GOLDEN_ORDERING_222), declared_profile=(2, 2, 2)),
        "bhv": bhv_code,
        "srinath-rajan": srinath_rajan_code,
        "cda-2x2": cda_2x2,
        "ci-a1": lambda: construction_i(cuwd_rate1_4group(1),
                                        _T_FLIP @ default_bhv_rotation()),
        "ci-a2": lambda: construction_i(cuwd_rate1_4group(2), M_A2),
        "cii-golden": lambda: construction_ii(golden_linear_forms()),
        "ciii-golden": lambda: construction_iii(golden_diagonal_half(), M_GOLDEN),
        "civ-a1": lambda: construction_iv(ciod(1), M_SRINATH_RAJAN),
        "civ-a2": lambda: construction_iv(ciod(2), M_A2),
    }
    if name not in builders:
        raise ValueError(f"unknown code {name!r}; choose from {sorted(builders)}")
    return builders[name]()
