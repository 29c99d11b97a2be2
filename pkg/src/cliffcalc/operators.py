"""Finite-dimensional Clifford operators and their functional calculi.

An operator here is a family of real d x d matrices, one per basis blade,
acting on the free module R^d (x) Cl_n by matrix action on the vector factor
and left blade multiplication on the algebra factor.  Such operators commute
with all right multiplications.  The module provides their complexification
(a d*2^n square matrix), both spectra, the Riesz-Dunford contour calculus
with stem functions, the right S-resolvent slice calculus, and the
consistency checks tying the two together.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .algebra import (
    CMultivector,
    Multivector,
    Paravector,
    digits_from_mask,
    mask_from_digits,
    _mul_tables,
)
from .contour import Contour, build_contour, contour_quadrature
from .errors import (
    ContourSpectrumError,
    DomainError,
    FormatError,
    MaskRangeError,
    NoContourError,
    RankMismatchError,
    SingularInputError,
    StemViolationError,
)
from .stem import PlanarDomain, StemFunction, slice_point

__all__ = [
    "CliffordOperator",
    "SpectrumSet",
    "MembershipResult",
    "complexify",
    "left_mult_matrix",
    "right_mult_matrix",
    "complex_spectrum",
    "clifford_spectrum_contains",
    "clifford_spectrum_slice",
    "basis_conjugate",
    "real_subspace_defect",
    "operator_from_matrix",
    "riesz_dunford_matrix",
    "riesz_dunford_eval",
    "s_resolvent_right",
    "slice_calculus_eval",
    "spectral_mapping_distance",
    "tuple_operator",
    "hausdorff_distance",
    "operator_to_json",
    "operator_from_json",
]

SIZE_CAP = 256
SINGULARITY_TOL = 1e-10
FLAT_TOL = 1e-9


@lru_cache(maxsize=None)
def _blade_left_mult(n: int, mask: int) -> np.ndarray:
    """Signed permutation of left multiplication by a basis blade on the
    2^n blade coefficients."""
    dim = 1 << n
    sign, _ = _mul_tables(n)
    out = np.zeros((dim, dim))
    for k in range(dim):
        out[mask ^ k, k] = sign[mask, mask ^ k]  # sign of e_mask e_k
    out.setflags(write=False)
    return out


def left_mult_matrix(a) -> np.ndarray:
    """Matrix of left multiplication by ``a`` on the blade coefficients."""
    if isinstance(a, Paravector):
        a = a.to_multivector()
    dim = 1 << a.n
    dtype = np.complex128 if np.iscomplexobj(a.coeffs) else np.float64
    out = np.zeros((dim, dim), dtype=dtype)
    for j in range(dim):
        c = a.coeffs[j]
        if c != 0:
            out += c * _blade_left_mult(a.n, j)
    return out


def right_mult_matrix(a) -> np.ndarray:
    """Matrix of right multiplication by ``a`` on the blade coefficients."""
    if isinstance(a, Paravector):
        a = a.to_multivector()
    dim = 1 << a.n
    sign, _ = _mul_tables(a.n)
    dtype = np.complex128 if np.iscomplexobj(a.coeffs) else np.float64
    out = np.zeros((dim, dim), dtype=dtype)
    for j in range(dim):
        c = a.coeffs[j]
        if c == 0:
            continue
        for k in range(dim):
            out[k ^ j, k] += c * sign[k, k ^ j]  # sign of e_k e_j
    return out


@dataclass(frozen=True)
class CliffordOperator:
    """Right-linear operator sum-of-blades T = sum_J M_J e_J on R^d (x) Cl_n.

    ``components`` maps a blade bitmask to its real d x d matrix; absent
    masks are zero.  The operator acts by ``T(v e_K) = sum_J (M_J v) e_J e_K``.
    """

    d: int
    n: int
    components: dict

    def __post_init__(self):
        clean = {}
        for mask, mat in self.components.items():
            mask = int(mask)
            if not 0 <= mask < (1 << self.n):
                raise MaskRangeError(f"component mask {mask} out of range for rank {self.n}")
            arr = np.asarray(mat, dtype=np.float64)
            if arr.shape != (self.d, self.d):
                raise RankMismatchError(
                    f"component for mask {mask} must be {self.d}x{self.d}, got {arr.shape}"
                )
            if np.any(arr != 0.0):
                arr = arr.copy()
                arr.setflags(write=False)
                clean[mask] = arr
        object.__setattr__(self, "components", clean)

    @property
    def size(self) -> int:
        return self.d << self.n

    @classmethod
    def identity(cls, d: int, n: int) -> "CliffordOperator":
        return cls(d, n, {0: np.eye(d)})

    @classmethod
    def left_multiplication(cls, a) -> "CliffordOperator":
        """The operator of left multiplication by an algebra element (d = 1)."""
        if isinstance(a, Paravector):
            a = a.to_multivector()
        if np.iscomplexobj(a.coeffs):
            raise FormatError("left multiplication operators need real components")
        return cls(1, a.n, {
            mask: np.array([[a.coeffs[mask]]]) for mask in range(1 << a.n)
        })

    def matrix(self) -> np.ndarray:
        """Complexified matrix on the basis (vector basis) x (blades).

        Index order is blade-major: entry ``(K*d + i, L*d + j)``.  Real
        components make this a real-entried complex matrix.
        """
        out = np.zeros((self.size, self.size), dtype=np.complex128)
        for mask, mat in self.components.items():
            out += np.kron(_blade_left_mult(self.n, mask), mat)
        return out

    def apply(self, vec: np.ndarray) -> np.ndarray:
        return self.matrix() @ np.asarray(vec, dtype=np.complex128)

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.matrix()))

    def compose(self, other: "CliffordOperator") -> "CliffordOperator":
        """Operator composition; blades multiply, matrices compose."""
        if (self.d, self.n) != (other.d, other.n):
            raise RankMismatchError("operators live on different modules")
        sign, _ = _mul_tables(self.n)
        parts: dict[int, np.ndarray] = {}
        for j, mj in self.components.items():
            for k, mk in other.components.items():
                mask = j ^ k
                term = sign[j, mask] * (mj @ mk)
                parts[mask] = parts.get(mask, 0) + term
        return CliffordOperator(self.d, self.n, parts)

    def __add__(self, other: "CliffordOperator") -> "CliffordOperator":
        if not isinstance(other, CliffordOperator):
            return NotImplemented
        if (self.d, self.n) != (other.d, other.n):
            raise RankMismatchError("operators live on different modules")
        parts = {mask: mat.copy() for mask, mat in self.components.items()}
        for mask, mat in other.components.items():
            parts[mask] = parts.get(mask, 0) + mat
        return CliffordOperator(self.d, self.n, parts)

    def __sub__(self, other: "CliffordOperator") -> "CliffordOperator":
        return self + (-1.0) * other

    def __rmul__(self, factor: float) -> "CliffordOperator":
        if not isinstance(factor, (int, float)):
            return NotImplemented
        return CliffordOperator(
            self.d, self.n, {mask: factor * mat for mask, mat in self.components.items()}
        )

    def __matmul__(self, other: "CliffordOperator") -> "CliffordOperator":
        return self.compose(other)

    def power(self, exponent: int) -> "CliffordOperator":
        out = CliffordOperator.identity(self.d, self.n)
        for _ in range(exponent):
            out = out.compose(self)
        return out


def complexify(T: CliffordOperator) -> np.ndarray:
    """Matrix of the complex extension of ``T`` (see
    :meth:`CliffordOperator.matrix`)."""
    return T.matrix()


@dataclass(frozen=True)
class SpectrumSet:
    """Eigenvalues with multiplicity, stored conjugate-symmetrically."""

    eigenvalues: tuple[complex, ...]

    def upper(self, tol: float = 1e-12) -> tuple[complex, ...]:
        """Representatives in the closed upper half plane, deduplicated."""
        reps: list[complex] = []
        for lam in self.eigenvalues:
            lam = complex(lam.real, abs(lam.imag))
            if all(abs(lam - r) > tol * (1.0 + abs(lam)) for r in reps):
                reps.append(lam)
        return tuple(reps)

    def pairing_defect(self) -> float:
        """Worst distance from an eigenvalue to the conjugate of another."""
        worst = 0.0
        for lam in self.eigenvalues:
            worst = max(
                worst,
                min(abs(lam.conjugate() - mu) for mu in self.eigenvalues),
            )
        return worst


def complex_spectrum(T: CliffordOperator, size_cap: int = SIZE_CAP) -> SpectrumSet:
    """All eigenvalues of the complexified matrix.

    The matrix is real in the canonical basis, so the real Schur path of the
    solver returns exactly paired conjugate eigenvalues.
    """
    if T.size > size_cap:
        raise DomainError(f"operator size {T.size} exceeds the configured cap {size_cap}")
    matrix = T.matrix()
    eigs = np.linalg.eigvals(matrix.real)
    order = np.lexsort((eigs.imag, eigs.real))
    return SpectrumSet(tuple(complex(e) for e in eigs[order]))


@dataclass(frozen=True)
class MembershipResult:
    """Boolean verdict plus the margin of the underlying singularity test.

    ``margin`` is the smallest singular value of the quadratic pencil over
    the decision threshold: values below 1 mean membership.  Truthiness
    follows the verdict.
    """

    member: bool
    margin: float

    def __bool__(self) -> bool:
        return self.member


def _quadratic_pencil(T: CliffordOperator, kappa: Paravector) -> np.ndarray:
    matrix = T.matrix()
    kappa_norm2 = float(np.dot(kappa.components, kappa.components))
    return matrix @ matrix - 2.0 * kappa.scalar * matrix + kappa_norm2 * np.eye(T.size)


def clifford_spectrum_contains(
    T: CliffordOperator, kappa: Paravector, tol: float = SINGULARITY_TOL
) -> MembershipResult:
    """Membership of a paravector in the Clifford spectrum of ``T``.

    Tests singularity of ``T^2 - 2 Re(k) T + |k|^2`` by the smallest singular
    value against ``tol`` times the matrix max-norm.
    """
    if kappa.n != T.n:
        raise RankMismatchError(f"rank mismatch: operator {T.n}, paravector {kappa.n}")
    pencil = _quadratic_pencil(T, kappa)
    smallest = float(np.linalg.svd(pencil, compute_uv=False)[-1])
    threshold = tol * max(1.0, float(np.max(np.abs(pencil))))
    return MembershipResult(member=smallest < threshold, margin=smallest / threshold)


def clifford_spectrum_slice(T: CliffordOperator, s_unit: Paravector) -> list[Paravector]:
    """Slice representatives of the Clifford spectrum along a unit direction:
    one paravector Re(l) + |Im(l)| s per upper-half eigenvalue of T."""
    if s_unit.n != T.n:
        raise RankMismatchError(f"rank mismatch: operator {T.n}, direction {s_unit.n}")
    reps = []
    for lam in complex_spectrum(T).upper(tol=1e-9):
        reps.append(slice_point(T.n, lam.real, abs(lam.imag), s_unit))
    return reps


def basis_conjugate(S: np.ndarray) -> np.ndarray:
    """Conjugation of a complexified operator by the real structure.

    In the canonical real basis this is entrywise complex conjugation; fixed
    points are exactly the operators mapping the real subspace to itself.
    """
    return np.conj(np.asarray(S))


def real_subspace_defect(S: np.ndarray) -> float:
    """Frobenius distance between ``S`` and its real-structure conjugate."""
    S = np.asarray(S)
    return float(np.linalg.norm(S - basis_conjugate(S)))


def operator_from_matrix(
    S: np.ndarray, d: int, n: int, tol: float = 1e-8
) -> CliffordOperator:
    """Project a complexified matrix back to blade components.

    Requires ``S`` to be (numerically) real in the canonical basis and
    right-linear, i.e. in the span of blade-left-multiplications tensor
    matrices; the reconstruction defect is checked against ``tol`` scaled by
    the matrix norm.
    """
    S = np.asarray(S, dtype=np.complex128)
    size = d << n
    if S.shape != (size, size):
        raise RankMismatchError(f"matrix shape {S.shape} does not match d={d}, n={n}")
    scale = max(1.0, float(np.linalg.norm(S)))
    imag_norm = float(np.linalg.norm(S.imag))
    if imag_norm > tol * scale:
        raise StemViolationError(
            f"matrix is not real in the canonical basis (defect {imag_norm:.3g})",
            residual=imag_norm,
        )
    real = S.real
    components = {}
    for mask in range(1 << n):
        block = real[mask * d:(mask + 1) * d, 0:d]
        if np.any(block != 0.0):
            components[mask] = block
    candidate = CliffordOperator(d, n, components)
    defect = float(np.linalg.norm(candidate.matrix().real - real))
    if defect > tol * scale:
        raise StemViolationError(
            f"matrix is not right-linear over the algebra (defect {defect:.3g})",
            residual=defect,
        )
    return candidate


# -- Riesz-Dunford calculus ----------------------------------------------------

def _operator_valued(F, d: int, n: int) -> Callable[[complex], np.ndarray]:
    """Normalize the function argument of the contour calculus.

    Stem functions (values in the complexified algebra) act as left
    multiplications; raw callables must already return complexified
    matrices satisfying F(conj z) = conj F(z) entrywise.
    """
    if isinstance(F, StemFunction):
        if F.n != n:
            raise RankMismatchError(f"rank mismatch: function {F.n}, operator {n}")
        eye = np.eye(d)

        def matrix_fn(z: complex) -> np.ndarray:
            return np.kron(left_mult_matrix(F(z)), eye)

        return matrix_fn
    if callable(F):
        return F
    raise FormatError("function must be a StemFunction or a matrix-valued callable")


def _spectrum_contour(
    F, T: CliffordOperator, contour: Contour | None, radius_fraction: float
) -> Contour:
    if contour is not None:
        return contour
    if not isinstance(F, StemFunction):
        raise NoContourError("matrix-valued callables need an explicit contour")
    points = complex_spectrum(T).eigenvalues
    return build_contour(points, F.domain, radius_fraction=radius_fraction,
                         exclude=F.domain.punctures)


def _check_operator_contour(contour: Contour, points: Sequence[complex]) -> None:
    for lam in points:
        if not contour.encloses(lam):
            raise ContourSpectrumError(f"eigenvalue {lam} is not enclosed by the contour")
        if contour.margin(lam) <= 1e-9 * (1.0 + abs(lam)):
            raise ContourSpectrumError(f"contour passes through the eigenvalue {lam}")


def riesz_dunford_matrix(
    F,
    T: CliffordOperator,
    contour: Contour | None = None,
    radius_fraction: float = 0.5,
    tol: float = 1e-12,
) -> np.ndarray:
    """Contour functional calculus on the complexified matrix.

    Integrates ``F(z) (z - T)^{-1}`` (one linear solve per node) around the
    complex spectrum and normalizes by 2 pi i.
    """
    contour = _spectrum_contour(F, T, contour, radius_fraction)
    _check_operator_contour(contour, complex_spectrum(T).eigenvalues)
    matrix_fn = _operator_valued(F, T.d, T.n)
    base = T.matrix()
    eye = np.eye(T.size, dtype=np.complex128)

    def node(z: complex, dz: complex) -> np.ndarray:
        resolvent_mat = np.linalg.solve(z * eye - base, eye)
        return (matrix_fn(z) @ resolvent_mat) * dz

    raw = contour_quadrature(node, contour, tol=tol)
    return raw / (2.0j * np.pi)


def riesz_dunford_eval(
    F,
    T: CliffordOperator,
    contour: Contour | None = None,
    radius_fraction: float = 0.5,
    tol: float = 1e-12,
    flat_tol: float = FLAT_TOL,
) -> CliffordOperator:
    """Riesz-Dunford calculus returning a real Clifford operator.

    For stem functions the integral is fixed by the real-structure
    conjugation, so it projects back onto blade components; a violation
    beyond ``flat_tol`` (relative) reports the function as non-stem.
    """
    S = riesz_dunford_matrix(F, T, contour, radius_fraction, tol)
    scale = max(1.0, float(np.linalg.norm(S)))
    defect = real_subspace_defect(S)
    if defect > flat_tol * scale:
        raise StemViolationError(
            f"contour calculus value is not fixed by the real structure "
            f"(defect {defect:.3g}); the function is not a stem function",
            residual=defect,
        )
    return operator_from_matrix(S, T.d, T.n, tol=max(flat_tol, 10 * tol))


# -- slice calculus -------------------------------------------------------------

def s_resolvent_right(s: Paravector, T: CliffordOperator, tol: float = SINGULARITY_TOL) -> np.ndarray:
    """Right S-resolvent ``-(T - s*) (T^2 - 2 Re(s) T + |s|^2)^{-1}`` on the
    complexified module, with the involution acting by left multiplication."""
    if s.n != T.n:
        raise RankMismatchError(f"rank mismatch: operator {T.n}, paravector {s.n}")
    pencil = _quadratic_pencil(T, s)
    smallest = float(np.linalg.svd(pencil, compute_uv=False)[-1])
    if smallest < tol * max(1.0, float(np.max(np.abs(pencil)))):
        raise SingularInputError(
            f"paravector {s!r} lies in the Clifford spectrum; S-resolvent undefined"
        )
    eye = np.eye(T.d)
    star_mult = np.kron(left_mult_matrix(s.star()), eye)
    numerator = T.matrix() - star_mult
    return -numerator @ np.linalg.solve(pencil, np.eye(T.size, dtype=np.complex128))


def slice_calculus_eval(
    phi: Callable[[Paravector], CMultivector],
    T: CliffordOperator,
    s_unit: Paravector,
    contour: Contour | None = None,
    domain: PlanarDomain | None = None,
    radius_fraction: float = 0.5,
    tol: float = 1e-12,
    flat_tol: float = FLAT_TOL,
) -> CliffordOperator:
    """Slice functional calculus through the right S-resolvent.

    The integration runs over the boundary of a plane region whose slice
    lift contains the Clifford spectrum of ``T``; the plane measure is the
    slice embedding of the complex line element, multiplied by minus the
    slice direction, and the integrand keeps the order value * measure *
    S-resolvent.  The result agrees with the Riesz-Dunford calculus of the
    corresponding stem function.
    """
    if s_unit.n != T.n:
        raise RankMismatchError(f"rank mismatch: operator {T.n}, direction {s_unit.n}")
    spectrum = complex_spectrum(T).eigenvalues
    if contour is None:
        if domain is None:
            raise NoContourError("slice calculus needs a contour or a domain to build one")
        contour = build_contour(spectrum, domain, radius_fraction=radius_fraction,
                                exclude=domain.punctures)
    _check_operator_contour(contour, spectrum)

    n = T.n
    eye_d = np.eye(T.d)
    eye = np.eye(T.size, dtype=np.complex128)
    base = T.matrix()
    base2 = base @ base
    s_mv = s_unit.to_multivector()
    minus_s = -1.0 * s_mv
    unit_left = np.kron(left_mult_matrix(s_mv), eye_d)

    def node(z: complex, dz: complex) -> np.ndarray:
        # s = u + v s_unit; the S-resolvent pencil only sees Re(s) and |s|^2
        u, v = z.real, z.imag
        pencil = base2 - (2.0 * u) * base + (u * u + v * v) * eye
        numerator = base - (u * eye - v * unit_left)
        s_res = -numerator @ np.linalg.solve(pencil, eye)
        value = phi(slice_point(n, u, v, s_unit))
        if isinstance(value, (Multivector, Paravector)):
            value = value.to_cmultivector()
        elif not isinstance(value, CMultivector):
            value = CMultivector.from_scalar(n, complex(value))
        # plane measure: -s (du + s dv) under the embedding u + iv -> u + v s
        line = dz.real + dz.imag * s_mv
        weight = value * (minus_s * line)
        return np.kron(left_mult_matrix(weight), eye_d) @ s_res

    raw = contour_quadrature(node, contour, tol=tol)
    S = raw / (2.0 * np.pi)
    scale = max(1.0, float(np.linalg.norm(S)))
    defect = real_subspace_defect(S)
    if defect > flat_tol * scale:
        raise StemViolationError(
            f"slice calculus value is not fixed by the real structure (defect {defect:.3g})",
            residual=defect,
        )
    return operator_from_matrix(S, T.d, T.n, tol=max(flat_tol, 10 * tol))


# -- derived checks -------------------------------------------------------------

def hausdorff_distance(a: Sequence[complex], b: Sequence[complex]) -> float:
    """Hausdorff distance between two finite sets of complex points."""
    if not a or not b:
        raise DomainError("Hausdorff distance needs nonempty sets")
    forward = max(min(abs(x - y) for y in b) for x in a)
    backward = max(min(abs(x - y) for y in a) for x in b)
    return max(forward, backward)


def spectral_mapping_distance(
    f: StemFunction,
    T: CliffordOperator,
    contour: Contour | None = None,
    radius_fraction: float = 0.5,
) -> float:
    """Hausdorff distance between f(complex spectrum) and the complex
    spectrum of f(T), computed by two independent eigenvalue runs."""
    if not f.is_scalar:
        raise DomainError("the spectral mapping check applies to complex-valued functions")
    spectrum = complex_spectrum(T).eigenvalues
    mapped = [f.scalar_eval(lam) for lam in spectrum]
    image = riesz_dunford_eval(f, T, contour, radius_fraction)
    return hausdorff_distance(mapped, complex_spectrum(image).eigenvalues)


def tuple_operator(matrices: Sequence[np.ndarray], n: int | None = None) -> CliffordOperator:
    """Pack real matrices (T_0, T_1, ..., T_n) into the operator
    T_0 + T_1 e_1 + ... + T_n e_n; downstream calculus applies unchanged."""
    mats = [np.asarray(m, dtype=np.float64) for m in matrices]
    if not mats:
        raise FormatError("need at least one matrix")
    d = mats[0].shape[0]
    for m in mats:
        if m.shape != (d, d):
            raise RankMismatchError("tuple matrices must share one square shape")
    if n is None:
        n = len(mats) - 1
    if len(mats) > n + 1:
        raise MaskRangeError(f"got {len(mats)} matrices for rank {n}")
    components = {0: mats[0]}
    for j, m in enumerate(mats[1:], start=1):
        components[1 << (j - 1)] = m
    return CliffordOperator(d, n, components)


# -- JSON ------------------------------------------------------------------------

def operator_to_json(T: CliffordOperator) -> dict:
    return {
        "d": T.d,
        "n": T.n,
        "components": {
            digits_from_mask(mask): mat.tolist() for mask, mat in sorted(T.components.items())
        },
    }


def operator_from_json(obj: dict) -> CliffordOperator:
    try:
        d = int(obj["d"])
        n = int(obj["n"])
        raw = obj.get("components", {})
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed operator JSON: {obj!r}") from exc
    components = {mask_from_digits(key, n): value for key, value in raw.items()}
    return CliffordOperator(d, n, components)
