"""
Jordan-Wigner encoding with interleaved spin orbitals: spatial orbital p maps
to qubit 2p (spin up) and 2p+1 (spin down).

Operators are accumulated as sums of ordered monomials X^x Z^z, which
multiply as (X^a Z^b)(X^c Z^d) = (−1)^{|b∧c|} X^{a⊕c} Z^{b⊕d}. A monomial
converts back to a Pauli string through X^x Z^z = (−i)^{n_Y} P.
"""

from collections import defaultdict

from structlog import get_logger

from effbasis.core.config import settings
from effbasis.core.errors import HamiltonianValidationError
from effbasis.hamiltonian.fermion import FermionHamiltonian
from effbasis.hamiltonian.qubit import PauliString, QubitHamiltonian

logger = get_logger()

Monomials = dict[tuple[int, int], complex]

_MINUS_I_POWERS = (1.0, -1.0j, -1.0, 1.0j)
_IMAG_TOLERANCE = 1e-10


def spin_orbital(p: int, spin: int) -> int:
    """Qubit index of spatial orbital p with spin 0 (up) or 1 (down)."""
    return 2 * p + spin


def _ladder(j: int, dagger: bool) -> Monomials:
    """a_j = Z_{<j}(X_j − X_jZ_j)/2 and a†_j = Z_{<j}(X_j + X_jZ_j)/2."""
    low = (1 << j) - 1
    sign = 0.5 if dagger else -0.5
    return {(1 << j, low): 0.5, (1 << j, low | (1 << j)): sign}


def _multiply(a: Monomials, b: Monomials) -> Monomials:
    out: Monomials = defaultdict(complex)
    for (xa, za), ca in a.items():
        for (xb, zb), cb in b.items():
            sign = -1.0 if (za & xb).bit_count() & 1 else 1.0
            out[(xa ^ xb, za ^ zb)] += sign * ca * cb
    return out


def _excitations(n_qubits: int) -> dict[tuple[int, int], Monomials]:
    """E_ij = a†_i a_j for every spin-orbital pair."""
    create = [_ladder(j, dagger=True) for j in range(n_qubits)]
    annihilate = [_ladder(j, dagger=False) for j in range(n_qubits)]
    return {
        (i, j): _multiply(create[i], annihilate[j])
        for i in range(n_qubits)
        for j in range(n_qubits)
    }


def jordan_wigner(
    fh: FermionHamiltonian,
    drop_tolerance: float | None = None,
) -> QubitHamiltonian:
    """Encode a FermionHamiltonian on 2·n_spatial qubits.

    The two-body part uses a†_p a†_r a_s a_q = E_pq E_rs − δ_qr E_ps so only
    products of precomputed excitation operators are needed.

    Args:
        fh: Fermionic Hamiltonian in chemist notation.
        drop_tolerance: Terms with |c| below this are removed
            (default: settings.JW_DROP_TOLERANCE).

    Returns:
        QubitHamiltonian with terms sorted by (weight, x_mask, z_mask).
    """
    tol = settings.JW_DROP_TOLERANCE if drop_tolerance is None else drop_tolerance
    n = fh.n_spatial
    n_qubits = fh.n_qubits
    exc = _excitations(n_qubits)

    acc: Monomials = defaultdict(complex)
    acc[(0, 0)] += fh.constant

    def _add(monomials: Monomials, weight: float) -> None:
        for key, c in monomials.items():
            acc[key] += weight * c

    for p in range(n):
        for q in range(n):
            if fh.h[p, q] == 0.0:
                continue
            for spin in (0, 1):
                _add(exc[(spin_orbital(p, spin), spin_orbital(q, spin))], fh.h[p, q])

    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    value = 0.5 * fh.g[p, q, r, s]
                    if value == 0.0:
                        continue
                    for sigma in (0, 1):
                        ps, qs = spin_orbital(p, sigma), spin_orbital(q, sigma)
                        for tau in (0, 1):
                            rt, st = spin_orbital(r, tau), spin_orbital(s, tau)
                            _add(_multiply(exc[(ps, qs)], exc[(rt, st)]), value)
                        if q == r:
                            _add(exc[(ps, spin_orbital(s, sigma))], -value)

    terms = []
    for (x, z), c in acc.items():
        coeff = c * _MINUS_I_POWERS[(x & z).bit_count() % 4]
        if abs(coeff.imag) > _IMAG_TOLERANCE * max(1.0, abs(coeff)):
            raise HamiltonianValidationError(
                f"encoded term {PauliString(x, z)} has imaginary weight {coeff}"
            )
        if abs(coeff.real) < tol:
            continue
        terms.append((coeff.real, PauliString(x, z)))
    terms.sort(key=lambda t: (t[1].weight, t[1].x_mask, t[1].z_mask))

    logger.debug("jordan_wigner_done", n_qubits=n_qubits, n_terms=len(terms))
    return QubitHamiltonian(n_qubits, tuple(terms))
