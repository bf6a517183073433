#!/usr/bin/env python3
# Copyright 2026 The fermiproc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes second-quantized Hamiltonian fixtures in the fermiproc text format.

Spin orbitals are interleaved: mode 2*p + s for spatial orbital p, spin s
(0 = alpha, 1 = beta). Two-body lines store the coefficient of the literal
operator string c+_i c+_j c_k c_l, i.e. 0.5 * (pq|rs) for
c+_{p s} c+_{r t} c_{s' t} c_{q s}. The constant (nuclear repulsion plus frozen
core) is not part of the file; it goes to the JSON sidecar together with the
reference energies computed by pyscf's FCI solver.

Usage: gen_molecular_fixture.py lih|h2 OUTDIR
"""
import json
import sys

import numpy as np
from pyscf import ao2mo, fci, gto, mcscf, scf

SYSTEMS = {
    # name: (geometry, basis, active electrons, active orbitals)
    "lih": ("Li 0 0 0; H 0 0 1.45", "sto-3g", 2, 4),
    "h2": ("H 0 0 0; H 0 0 0.7414", "sto-3g", 2, 2),
}


def active_integrals(name):
    geom, basis, nelec, norb = SYSTEMS[name]
    mol = gto.M(atom=geom, basis=basis, unit="Angstrom", verbose=0)
    mf = scf.RHF(mol).run()
    cas = mcscf.CASCI(mf, norb, nelec)
    h1, ecore = cas.get_h1eff()
    h2 = ao2mo.restore(1, cas.get_h2eff(), norb)
    e_cas = cas.kernel()[0]
    # Independent check of the active-space FCI energy.
    e_fci, _ = fci.direct_spin1.FCI().kernel(h1, h2, norb, nelec)
    assert abs(e_fci + ecore - e_cas) < 1e-9
    return mol, mf, h1, h2, ecore, e_fci, nelec, norb


def spin_terms(h1, h2, norb, cutoff=1e-12):
    one, two = [], []
    for p in range(norb):
        for q in range(norb):
            for s in range(2):
                v = h1[p, q]
                if abs(v) > cutoff:
                    one.append((2 * p + s, 2 * q + s, v))
    for p, q, r, t in np.ndindex(norb, norb, norb, norb):
        v = 0.5 * h2[p, q, r, t]
        if abs(v) <= cutoff:
            continue
        for s1 in range(2):
            for s2 in range(2):
                i, l = 2 * p + s1, 2 * q + s1
                j, k = 2 * r + s2, 2 * t + s2
                if i == j or k == l:
                    continue
                two.append((i, j, k, l, v))
    return one, two


def main():
    name, outdir = sys.argv[1], sys.argv[2]
    mol, mf, h1, h2, ecore, e_fci, nelec, norb = active_integrals(name)
    modes = 2 * norb
    one, two = spin_terms(h1, h2, norb)
    reference = "1" * nelec + "0" * (modes - nelec)
    occ = list(range(nelec))
    e_ref = sum(h1[i // 2, i // 2] for i in occ)
    for a in occ:
        for b in occ:
            if a == b:
                continue
            pa, pb = a // 2, b // 2
            e_ref += 0.5 * h2[pa, pa, pb, pb]
            if a % 2 == b % 2:
                e_ref -= 0.5 * h2[pa, pb, pb, pa]

    path = f"{outdir}/{name}.ham"
    with open(path, "w") as f:
        f.write(f"# {name}: {SYSTEMS[name][0]} / {SYSTEMS[name][1]}, "
                f"{nelec} electrons in {norb} active orbitals\n")
        f.write("# generated by tools/gen_molecular_fixture.py\n")
        f.write(f"L {modes}\n")
        for i, j, v in one:
            f.write(f"1 {i} {j} {v:.17g} 0\n")
        for i, j, k, l, v in two:
            f.write(f"2 {i} {j} {k} {l} {v:.17g} 0\n")
    meta = {
        "modes": modes,
        "electrons": nelec,
        "reference": reference,
        "constant_energy": ecore,
        "ground_energy": e_fci,
        "reference_energy": e_ref,
        "scf_total_energy": mf.e_tot,
    }
    with open(f"{outdir}/{name}.json", "w") as f:
        json.dump(meta, f, indent=2)
        f.write("\n")
    print(json.dumps(meta, indent=2))


if __name__ == "__main__":
    main()
