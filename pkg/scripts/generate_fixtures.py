"""
Generate the molecular integral fixtures used by configs/*.json.

Requires the optional `fixtures` extra (pyscf):

    pip install -e ".[fixtures]"
    python scripts/generate_fixtures.py --output fixtures

Hydrogen systems are written in Löwdin-orthonormalized atomic orbitals, one
per atom in ring/chain order. BeH2 freezes the RHF core orbital and keeps two
Be sp hybrids and the two H 1s orbitals, orthonormalized against the core and
each other. Each fixture's FCI energy is recomputed with effbasis and merged
into reference.json.
"""

import argparse
from collections.abc import Callable
from pathlib import Path

import numpy as np
from pyscf import ao2mo, gto, lo, mcscf, scf
from structlog import get_logger

from effbasis.core.logging import configure_logging
from effbasis.graphs.enumeration import enumerate_graphs
from effbasis.hamiltonian.exact import exact_ground_state
from effbasis.hamiltonian.fermion import FermionHamiltonian
from effbasis.hamiltonian.io import ReferenceEnergy, store_reference_energy, write_fcidump
from effbasis.hamiltonian.jordan_wigner import jordan_wigner
from effbasis.optimize.preopt import rank_graphs

logger = get_logger()

BASIS = "sto-6g"
BEH2_DISTANCES = (1.5, 2.0, 2.6, 3.0, 3.5)


def _molecule(atoms: list[tuple[str, tuple[float, float, float]]]) -> gto.Mole:
    return gto.M(atom=atoms, basis=BASIS, unit="Angstrom", spin=0, verbose=0)


def hydrogen_square(side: float) -> gto.Mole:
    corners = [(0.0, 0.0), (side, 0.0), (side, side), (0.0, side)]
    return _molecule([("H", (x, y, 0.0)) for x, y in corners])


def hydrogen_chain(n_atoms: int, spacing: float) -> gto.Mole:
    return _molecule([("H", (0.0, 0.0, i * spacing)) for i in range(n_atoms)])


def beryllium_hydride(distance: float) -> gto.Mole:
    return _molecule(
        [("H", (0.0, 0.0, -distance)), ("Be", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, distance))]
    )


def lowdin_hamiltonian(mol: gto.Mole) -> FermionHamiltonian:
    """All-electron Hamiltonian in symmetrically orthonormalized AOs."""
    coeff = lo.orth.lowdin(mol.intor("int1e_ovlp"))
    hcore = scf.hf.get_hcore(mol)
    n = coeff.shape[1]
    h = coeff.T @ hcore @ coeff
    g = ao2mo.restore(1, ao2mo.kernel(mol, coeff), n)
    return FermionHamiltonian(
        n_spatial=n,
        constant=float(mol.energy_nuc()),
        h=0.5 * (h + h.T),
        g=np.asarray(g),
        n_electrons=mol.nelectron,
        ms2=0,
    )


def frozen_core_sigma_hamiltonian(mol: gto.Mole) -> FermionHamiltonian:
    """Freeze the RHF core MO; keep Be sp hybrids and H 1s as four active σ orbitals.

    Active order is [Be h(-), H(-R), Be h(+), H(+R)], so the bonding graph is
    0-1|2-3 and the atomic graph 0-2|1-3. The orbitals are projected out of
    the core and Löwdin-orthonormalized; they span the σ valence space, so the
    active FCI equals the σ CASCI energy.
    """
    mf = scf.RHF(mol).run()
    overlap = mol.intor("int1e_ovlp")
    core = mf.mo_coeff[:, :1]

    h_minus, be, h_plus = (range(*mol.aoslice_by_atom()[a][2:]) for a in range(3))
    labels = [nl + m for _, _, nl, m in mol.ao_labels(fmt=False)]
    s = next(i for i in be if labels[i] == "2s")
    pz = next(i for i in be if labels[i] == "2pz")
    functions = np.zeros((mol.nao, 4))
    functions[[s, pz], 0] = (1.0, -1.0)
    functions[h_minus[0], 1] = 1.0
    functions[[s, pz], 2] = (1.0, 1.0)
    functions[h_plus[0], 3] = 1.0
    functions /= np.sqrt(np.einsum("ik,ij,jk->k", functions, overlap, functions))

    functions -= core @ (core.T @ overlap @ functions)
    active = functions @ lo.orth.lowdin(functions.T @ overlap @ functions)
    mo = np.hstack([core, active])

    casci = mcscf.CASCI(mf, 4, mol.nelectron - 2)
    h1, energy_core = casci.get_h1eff(mo)
    g = ao2mo.restore(1, casci.get_h2eff(mo), 4)
    fh = FermionHamiltonian(
        n_spatial=4,
        constant=float(energy_core),
        h=0.5 * (h1 + h1.T),
        g=np.asarray(g),
        n_electrons=mol.nelectron - 2,
        ms2=0,
    )

    qh = jordan_wigner(fh)
    _, best = rank_graphs(enumerate_graphs(4, fh.n_electrons), qh)[0]
    if best.energy > mf.e_tot:
        raise RuntimeError(
            f"best single graph {best.energy:.8f} lies above RHF {mf.e_tot:.8f}; "
            "active orbitals are not pair-localized"
        )
    logger.info("beh2_orbitals_checked", rhf=float(mf.e_tot), best_single_graph=best.energy)
    return fh


def systems() -> dict[str, Callable[[], FermionHamiltonian]]:
    catalogue = {
        "h4_square_d1.5.fcidump": lambda: lowdin_hamiltonian(hydrogen_square(1.5)),
        "h4_linear_r1.5.fcidump": lambda: lowdin_hamiltonian(hydrogen_chain(4, 1.5)),
        "h6_linear_r1.5.fcidump": lambda: lowdin_hamiltonian(hydrogen_chain(6, 1.5)),
    }
    for r in BEH2_DISTANCES:
        catalogue[f"beh2_r{r}.fcidump"] = lambda r=r: frozen_core_sigma_hamiltonian(
            beryllium_hydride(r)
        )
    return catalogue


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    parser.add_argument("--output", type=Path, default=Path("fixtures"))
    parser.add_argument("--only", nargs="*", default=None, help="Subset of fixture file names")
    args = parser.parse_args()
    configure_logging("INFO")

    args.output.mkdir(parents=True, exist_ok=True)
    for name, build in systems().items():
        if args.only and name not in args.only:
            continue
        fh = build()
        path = args.output / name
        write_fcidump(fh, path)
        energy, _ = exact_ground_state(jordan_wigner(fh), fh.n_electrons, fh.ms2)
        store_reference_energy(
            args.output,
            name,
            ReferenceEnergy(fci_energy=energy, n_electrons=fh.n_electrons, ms2=fh.ms2),
        )
        logger.info("fixture_written", fixture=name, n_spatial=fh.n_spatial, fci_energy=energy)


if __name__ == "__main__":
    main()
